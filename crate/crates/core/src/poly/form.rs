use crate::field::{Elem, Field};

use super::{Poly, PolyError};

/// Homogeneous form `Σ c_i X^i Z^(d-i)` of a declared degree `d`.
///
/// Roots at infinity show up as powers of `Z`, so fibers never lose degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Elem>,
}

fn times_linear(f: &Field, a: &[Elem], alpha: &Elem, beta: &Elem) -> Vec<Elem> {
    let k = a.len();
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut v = f.zero();
        if j > 0 && !f.is_zero(alpha) {
            v = f.mul(alpha, &a[j - 1]);
        }
        if j < k && !f.is_zero(beta) {
            v = f.add(&v, &f.mul(beta, &a[j]));
        }
        out.push(v);
    }
    out
}

impl BinaryForm {
    /// Coefficients `c_0..c_d`; the degree is `coeffs.len() - 1`.
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        debug_assert!(coeffs.iter().all(|c| field.contains(c)));
        BinaryForm { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Homogenization of `p` to degree `degree`.
    pub fn from_poly(p: &Poly, degree: usize) -> Result<BinaryForm, PolyError> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(PolyError::DegreeTooLarge { got: p.degree().unwrap(), degree });
        }
        let f = p.field();
        Ok(BinaryForm::new(f, (0..=degree).map(|k| p.coeff(k)).collect()))
    }

    pub fn zero(field: &Field, degree: usize) -> BinaryForm {
        BinaryForm::new(field, vec![field.zero(); degree + 1])
    }

    pub fn constant(field: &Field, c: Elem) -> BinaryForm {
        BinaryForm::new(field, vec![c])
    }

    /// The linear form `X`.
    pub fn x(field: &Field) -> BinaryForm {
        BinaryForm::new(field, vec![field.zero(), field.one()])
    }

    /// The linear form `Z`.
    pub fn z(field: &Field) -> BinaryForm {
        BinaryForm::new(field, vec![field.one(), field.zero()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i Z^(d-i)`.
    pub fn coeff(&self, i: usize) -> &Elem {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// `F(x, 1)`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.clone())
    }

    /// Multiplicity of the root at infinity (power of `Z` dividing the form).
    pub fn z_multiplicity(&self) -> usize {
        match self.dehomogenize().degree() {
            Some(k) => self.degree() - k,
            None => self.degree(),
        }
    }

    fn assert_same(&self, other: &BinaryForm) {
        assert!(self.field == other.field, "forms over {} and {}", self.field, other.field);
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        self.assert_same(other);
        assert_eq!(self.degree(), other.degree(), "adding forms of different degrees");
        let f = &self.field;
        BinaryForm::new(f, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect())
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        self.assert_same(other);
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degrees");
        let f = &self.field;
        BinaryForm::new(f, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect())
    }

    pub fn scale(&self, c: &Elem) -> BinaryForm {
        let f = &self.field;
        BinaryForm::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        self.assert_same(other);
        BinaryForm::new(&self.field, super::convolve(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn pow(&self, mut e: u32) -> BinaryForm {
        let mut base = self.clone();
        let mut acc = BinaryForm::constant(&self.field, self.field.one());
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

    /// `F(aX + bZ, cX + dZ)` for the matrix `[[a, b], [c, d]]` given as `[a, b, c, d]`.
    pub fn pullback(&self, m: &[Elem; 4]) -> BinaryForm {
        let f = &self.field;
        let d = self.degree();
        let [a, b, c, dd] = m;
        let mut l2_pows: Vec<Vec<Elem>> = Vec::with_capacity(d + 1);
        l2_pows.push(vec![f.one()]);
        for k in 1..=d {
            let next = times_linear(f, &l2_pows[k - 1], c, dd);
            l2_pows.push(next);
        }
        let mut acc = vec![self.coeffs[d].clone()];
        for i in (0..d).rev() {
            acc = times_linear(f, &acc, a, b);
            let ci = &self.coeffs[i];
            if !f.is_zero(ci) {
                for (slot, v) in acc.iter_mut().zip(&l2_pows[d - i]) {
                    *slot = f.add(slot, &f.mul(ci, v));
                }
            }
        }
        BinaryForm::new(f, acc)
    }

    /// Scalar `c` with `other = c · self`, if one exists and is nonzero.
    pub fn proportion(&self, other: &BinaryForm) -> Option<Elem> {
        if self.field != other.field || self.degree() != other.degree() || self.is_zero() || other.is_zero() {
            return None;
        }
        let f = &self.field;
        let i = self.coeffs.iter().position(|c| !f.is_zero(c))?;
        let ratio = f.div(&other.coeffs[i], &self.coeffs[i]).ok()?;
        let ok = self.coeffs.iter().zip(&other.coeffs).all(|(s, o)| f.mul(s, &ratio) == *o);
        ok.then_some(ratio)
    }

    /// Scalar and normalized form with monic dehomogenization, so that `self = c · form`.
    pub fn normalized(&self) -> Result<(Elem, BinaryForm), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroForm);
        }
        let lc = self.dehomogenize().lc();
        let inv = self.field.inv(&lc)?;
        Ok((lc, self.scale(&inv)))
    }

    /// Squarefree parts as forms: each monic dehomogenized part with its
    /// multiplicity, plus `Z` with the multiplicity of the root at infinity.
    pub fn squarefree_parts(&self) -> Result<Vec<(BinaryForm, u32)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroForm);
        }
        let mut out: Vec<(BinaryForm, u32)> = self
            .dehomogenize()
            .squarefree()
            .into_iter()
            .map(|(p, m)| {
                let deg = p.degree().unwrap();
                (BinaryForm::from_poly(&p, deg).unwrap(), m)
            })
            .collect();
        let k = self.z_multiplicity();
        if k > 0 {
            out.push((BinaryForm::z(&self.field), k as u32));
        }
        Ok(out)
    }

    /// Multiset of (factor degree, multiplicity) pairs from the squarefree decomposition,
    /// counting the root at infinity as a degree-1 factor; sorted.
    pub fn multiplicity_profile(&self) -> Result<Vec<(usize, u32)>, PolyError> {
        let mut out: Vec<(usize, u32)> = self.squarefree_parts()?.iter().map(|(h, m)| (h.degree(), *m)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Writes `self = c · H^e` with `H` normalized (monic dehomogenization), verified by re-expansion.
    pub fn power_decompose(&self, e: u32) -> Result<(Elem, BinaryForm), PolyError> {
        if e == 0 || self.degree() % e as usize != 0 || self.is_zero() {
            return Err(PolyError::NotAPower(e));
        }
        let f = &self.field;
        let mut h = BinaryForm::constant(f, f.one());
        for (part, m) in self.squarefree_parts()? {
            if m % e != 0 {
                return Err(PolyError::NotAPower(e));
            }
            h = h.mul(&part.pow(m / e));
        }
        let c = self.dehomogenize().lc();
        if h.pow(e).scale(&c) != *self {
            return Err(PolyError::NotAPower(e));
        }
        Ok((c, h))
    }

    pub fn try_pullback(&self, m: &[Elem; 4]) -> Result<BinaryForm, PolyError> {
        if !m.iter().all(|c| self.field.contains(c)) {
            return Err(PolyError::DescriptorMismatch);
        }
        Ok(self.pullback(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn mat(f: &Field, m: [i64; 4]) -> [Elem; 4] {
        m.map(|c| f.from_i64(c))
    }

    #[test]
    fn pullback_examples() {
        let f = q();
        let xz = BinaryForm::from_i64s(&f, &[0, 1, 0]);
        assert_eq!(xz.pullback(&mat(&f, [0, 1, 1, 0])), xz);
        let even = BinaryForm::from_i64s(&f, &[1, 0, 1]);
        assert_eq!(even.pullback(&mat(&f, [-1, 0, 0, 1])), even);
        let x = BinaryForm::x(&f);
        assert_eq!(x.pullback(&mat(&f, [1, 1, 0, 1])), BinaryForm::from_i64s(&f, &[1, 1]));
    }

    #[test]
    fn power_decompose_examples() {
        let f = q();
        let g = BinaryForm::from_i64s(&f, &[1, -2, 1]);
        let (c, h) = g.power_decompose(2).unwrap();
        assert_eq!(c, f.one());
        assert_eq!(h, BinaryForm::from_i64s(&f, &[-1, 1]));
        let g = BinaryForm::from_i64s(&f, &[1, 0, 1]);
        assert_eq!(g.power_decompose(2), Err(PolyError::NotAPower(2)));
        let g = BinaryForm::from_i64s(&f, &[1, 0, 0, -2, 0, 0, 1]);
        let (c, h) = g.power_decompose(2).unwrap();
        assert_eq!(c, f.one());
        assert_eq!(h, BinaryForm::from_i64s(&f, &[-1, 0, 0, 1]));
    }

    #[test]
    fn power_decompose_with_infinity() {
        let f = q();
        let g = BinaryForm::from_i64s(&f, &[0, 0, -3, 0, 0]);
        let (c, h) = g.power_decompose(2).unwrap();
        assert_eq!(c, f.from_i64(-3));
        assert_eq!(h, BinaryForm::from_i64s(&f, &[0, 1, 0]));
    }

    #[test]
    fn profiles() {
        let f = q();
        let g = BinaryForm::from_i64s(&f, &[1, -1, -1, 1]);
        assert_eq!(g.multiplicity_profile().unwrap(), vec![(1, 1), (1, 2)]);
        let g = BinaryForm::from_i64s(&f, &[-1, 0, 0, 0, 1]);
        assert_eq!(g.multiplicity_profile().unwrap(), vec![(4, 1)]);
        let f3 = Field::prime(3).unwrap();
        let g = BinaryForm::from_i64s(&f3, &[-1, 0, 0, 1]);
        assert_eq!(g.multiplicity_profile().unwrap(), vec![(1, 3)]);
        let g = BinaryForm::from_i64s(&f, &[0, 1, 0, 0]);
        assert_eq!(g.multiplicity_profile().unwrap(), vec![(1, 1), (1, 2)]);
    }
}
