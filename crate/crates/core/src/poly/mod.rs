//! Dense univariate polynomials, binary forms, and rational maps over a [`Field`].
//!
//! Plain arithmetic methods panic when operands live over different fields;
//! the `try_*` variants report [`PolyError::DescriptorMismatch`] instead.

mod form;
mod ratmap;
mod text;

use crate::field::{Elem, Field, FieldError};

pub use form::BinaryForm;
pub use ratmap::RationalMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("form is not a {0}-th power up to a scalar")]
    NotAPower(u32),
    #[error("degree {got} does not fit in a form of degree {degree}")]
    DegreeTooLarge { got: usize, degree: usize },
    #[error("numerator and denominator share a common factor")]
    NotReduced,
    #[error("the zero form has no such data")]
    ZeroForm,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        debug_assert!(coeffs.iter().all(|c| field.contains(c)));
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    fn assert_same(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over {} and {}", self.field, other.field);
    }

    pub fn compatible(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::DescriptorMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same(other);
        Poly::new(&self.field, convolve(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.compatible(d)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = &self.field;
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(&d.lc())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dn + 1];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + dn - 1];
            if f.is_zero(top) {
                continue;
            }
            let c = f.mul(top, &lc_inv);
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !f.is_zero(dj) {
                    r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, dj));
                }
            }
            q[shift] = c;
        }
        r.truncate(dn - 1);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divrem(d)?.1)
    }

    pub fn exact_div(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same(other);
        let (mut a, mut b) = (self.monic(), other.monic());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().enumerate().skip(1).map(|(k, c)| f.mul(c, &f.from_i64(k as i64))).collect())
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.assert_same(inner);
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(&self.field, c.clone()));
        }
        acc
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        Ok(self.mul(other))
    }

    pub fn try_gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        Ok(self.gcd(other))
    }

    pub fn try_compose(&self, inner: &Poly) -> Result<Poly, PolyError> {
        self.compatible(inner)?;
        Ok(self.compose(inner))
    }

    /// Coefficient-wise p-th root of a polynomial in `x^p` (characteristic p).
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        Poly::new(f, self.coeffs.iter().step_by(p).map(|c| f.pth_root(c)).collect())
    }

    /// Squarefree decomposition: monic, pairwise coprime, squarefree `P_i` with
    /// `self = lc · Π P_i^{m_i}`, sorted by multiplicity. Constant input gives an empty list.
    pub fn squarefree(&self) -> Vec<(Poly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let mut out = squarefree_monic(&self.monic());
        out.sort_by_key(|(_, m)| *m);
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree().iter().all(|(_, m)| *m == 1)
    }
}

fn squarefree_monic(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field.characteristic() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, j) in squarefree_monic(&f.pth_root()) {
            out.push((g, j * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        c = c.exact_div(&y).unwrap();
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, j) in squarefree_monic(&c.pth_root()) {
            out.push((g, j * p));
        }
    }
    out
}

pub(crate) fn convolve(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if f.is_zero(bj) {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(ai, bj));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn core_examples() {
        let f = q();
        let a = Poly::from_i64s(&f, &[1, 0, 1]);
        let b = Poly::from_i64s(&f, &[-1, 0, 1]);
        let x4m1 = Poly::from_i64s(&f, &[-1, 0, 0, 0, 1]);
        assert_eq!(a.mul(&b), x4m1);
        assert_eq!(x4m1.gcd(&b), b);
        let x3 = Poly::monomial(&f, f.one(), 3);
        assert_eq!(x3.compose(&Poly::from_i64s(&f, &[1, 1])), Poly::from_i64s(&f, &[1, 3, 3, 1]));
        assert_eq!(x4m1.exact_div(&a).unwrap(), b);
        assert_eq!(x4m1.exact_div(&Poly::from_i64s(&f, &[2, 1])), Err(PolyError::NotDivisible));
        assert_eq!(x4m1.eval(&f.from_i64(2)), f.from_i64(15));
        assert_eq!(x4m1.derivative(), Poly::monomial(&f, f.from_i64(4), 3));
    }

    #[test]
    fn mismatch_reported() {
        let a = Poly::from_i64s(&q(), &[1, 1]);
        let b = Poly::from_i64s(&Field::prime(5).unwrap(), &[1, 1]);
        assert_eq!(a.try_add(&b), Err(PolyError::DescriptorMismatch));
        assert_eq!(a.try_gcd(&b), Err(PolyError::DescriptorMismatch));
        assert_eq!(a.divrem(&b).unwrap_err(), PolyError::DescriptorMismatch);
    }

    #[test]
    fn squarefree_char_zero() {
        let f = q();
        let g = Poly::from_i64s(&f, &[-1, 1]).pow(2).mul(&Poly::from_i64s(&f, &[1, 1]));
        let sf = g.squarefree();
        assert_eq!(sf, vec![(Poly::from_i64s(&f, &[1, 1]), 1), (Poly::from_i64s(&f, &[-1, 1]), 2)]);
    }

    #[test]
    fn squarefree_char_p() {
        let f = Field::prime(3).unwrap();
        let g = Poly::from_i64s(&f, &[-1, 0, 0, 1]);
        assert_eq!(g.squarefree(), vec![(Poly::from_i64s(&f, &[-1, 1]), 3)]);
        let h = Poly::from_i64s(&f, &[-1, 1]).pow(4).mul(&Poly::from_i64s(&f, &[1, 0, 1]).pow(3));
        let sf = h.squarefree();
        assert_eq!(sf.len(), 2);
        let back = sf.iter().fold(Poly::one(&f), |acc, (p, m)| acc.mul(&p.pow(*m)));
        assert_eq!(back, h);
    }
}
