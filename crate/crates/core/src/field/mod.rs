//! Exact coefficient fields: Q, GF(p), and simple extensions Q[u]/(μ), GF(p)[u]/(μ).
//!
//! A [`Field`] is a cheap shared handle. Raw [`Elem`] values carry no field
//! reference; hot loops pass them through the owning field. [`FieldElement`]
//! pairs the two and checks that operands agree.

mod ext;
mod text;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use text::parse_field_spec;

pub(crate) use ext::{inv_mod, mul_mod, pow_mod};

/// Above this order the canonical minimum is not searched; the first root found is returned.
const CANONICAL_ROOT_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime below 2^62")]
    BadCharacteristic(u64),
    #[error("modulus {0} must be monic of degree at least 2")]
    BadModulus(String),
    #[error("modulus {0} is not irreducible over the base field")]
    NotIrreducible(String),
    #[error("nested extensions are not supported")]
    NestedExtension,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("{field} has no element of multiplicative order {m}")]
    NoSuchRoot { field: String, m: u64 },
    #[error("field {0} is too large to enumerate")]
    TooLarge(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Raw element representation, meaningful only relative to its [`Field`].
///
/// `Rat` lives in Q, `Res` in GF(p), `RatVec`/`ResVec` are coordinate vectors
/// of length `deg μ` in an extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Res(u64),
    RatVec(Vec<BigRational>),
    ResVec(Vec<u64>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rationals,
    Prime(u64),
    RatExt(Vec<BigRational>),
    PrimeExt(u64, Vec<u64>),
}

#[derive(Clone)]
pub struct Field(Arc<Kind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "GF({p})"),
            Kind::RatExt(_) => write!(f, "Q[u]/({})", self.modulus_text().unwrap()),
            Kind::PrimeExt(p, _) => write!(f, "GF({p})[u]/({})", self.modulus_text().unwrap()),
        }
    }
}

#[derive(Serialize)]
struct FieldJson {
    char: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<String>,
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FieldJson { char: self.characteristic(), modulus: self.modulus_text() }.serialize(s)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn check_char(p: u64) -> Result<(), FieldError> {
    if p == 2 || p >= 1 << 62 || !is_prime(p) {
        return Err(FieldError::BadCharacteristic(p));
    }
    Ok(())
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn rat_whitelist() -> Vec<Vec<BigRational>> {
    let int = |v: &[i64]| v.iter().map(|&c| BigRational::from_integer(c.into())).collect::<Vec<_>>();
    let mut list = vec![int(&[1, 0, 1]), int(&[3, 0, 1])];
    for m in 3..=12u64 {
        list.push(ext::cyclotomic(m).into_iter().map(BigRational::from_integer).collect());
    }
    list
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Kind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        check_char(p)?;
        Ok(Field(Arc::new(Kind::Prime(p))))
    }

    /// Adjoins a root `u` of the monic `modulus` (low-to-high, base-field entries).
    pub fn extension(base: &Field, modulus: &[Elem]) -> Result<Field, FieldError> {
        if base.is_extension() {
            return Err(FieldError::NestedExtension);
        }
        if !modulus.iter().all(|c| base.contains(c)) {
            return Err(FieldError::DescriptorMismatch);
        }
        let text = text::format_base_poly(base, modulus);
        match &*base.0 {
            Kind::Rationals => {
                let coeffs: Vec<BigRational> = modulus
                    .iter()
                    .map(|c| match c {
                        Elem::Rat(r) => Ok(r.clone()),
                        _ => Err(FieldError::DescriptorMismatch),
                    })
                    .collect::<Result<_, _>>()?;
                if coeffs.len() < 3 || !coeffs.last().unwrap().is_one() {
                    return Err(FieldError::BadModulus(text));
                }
                if !rat_whitelist().contains(&coeffs) {
                    return Err(FieldError::NotIrreducible(text));
                }
                Ok(Field(Arc::new(Kind::RatExt(coeffs))))
            }
            Kind::Prime(p) => {
                let coeffs: Vec<u64> = modulus
                    .iter()
                    .map(|c| match c {
                        Elem::Res(r) if r < p => Ok(*r),
                        _ => Err(FieldError::DescriptorMismatch),
                    })
                    .collect::<Result<_, _>>()?;
                if coeffs.len() < 3 || *coeffs.last().unwrap() != 1 {
                    return Err(FieldError::BadModulus(text));
                }
                if !ext::irreducible_mod_p(*p, &coeffs) {
                    return Err(FieldError::NotIrreducible(text));
                }
                Ok(Field(Arc::new(Kind::PrimeExt(*p, coeffs))))
            }
            _ => Err(FieldError::NestedExtension),
        }
    }

    /// GF(p^f), presented by the first irreducible monic of degree `f` in
    /// increasing order of the code Σ c_k p^k of its lower coefficients.
    pub fn gf(p: u64, f: u32) -> Result<Field, FieldError> {
        check_char(p)?;
        if f == 0 {
            return Err(FieldError::BadModulus(format!("degree {f}")));
        }
        if f == 1 {
            return Field::prime(p);
        }
        let q = (p as u128).checked_pow(f).filter(|q| *q < 1 << 62);
        if q.is_none() {
            return Err(FieldError::TooLarge(format!("GF({p}^{f})")));
        }
        let f = f as usize;
        for code in 0..(p as u128).pow(f as u32) {
            let mut coeffs = Vec::with_capacity(f + 1);
            let mut c = code;
            for _ in 0..f {
                coeffs.push((c % p as u128) as u64);
                c /= p as u128;
            }
            coeffs.push(1);
            if coeffs[0] != 0 && ext::irreducible_mod_p(p, &coeffs) {
                return Ok(Field(Arc::new(Kind::PrimeExt(p, coeffs))));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Q(ζ_m) as Q[u]/(Φ_m); Q itself for m ≤ 2.
    pub fn cyclotomic(m: u64) -> Result<Field, FieldError> {
        if m == 0 {
            return Err(FieldError::BadModulus("Phi_0".into()));
        }
        if m <= 2 {
            return Ok(Field::rationals());
        }
        let q = Field::rationals();
        let modulus: Vec<Elem> = ext::cyclotomic(m).into_iter().map(|c| Elem::Rat(BigRational::from_integer(c))).collect();
        Field::extension(&q, &modulus)
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Rationals | Kind::RatExt(_) => 0,
            Kind::Prime(p) | Kind::PrimeExt(p, _) => *p,
        }
    }

    /// Degree over the prime field (or over Q).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Kind::Rationals | Kind::Prime(_) => 1,
            Kind::RatExt(m) => m.len() - 1,
            Kind::PrimeExt(_, m) => m.len() - 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() > 0
    }

    pub fn is_extension(&self) -> bool {
        self.degree() > 1
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        let p = self.characteristic();
        (p > 0).then(|| p.pow(self.degree() as u32))
    }

    /// The prime field (or Q) underneath.
    pub fn base(&self) -> Field {
        match &*self.0 {
            Kind::Rationals | Kind::RatExt(_) => Field::rationals(),
            Kind::Prime(p) | Kind::PrimeExt(p, _) => Field(Arc::new(Kind::Prime(*p))),
        }
    }

    /// Defining polynomial in canonical text, e.g. `u^2+1`.
    pub fn modulus_text(&self) -> Option<String> {
        let base = self.base();
        match &*self.0 {
            Kind::RatExt(m) => {
                let v: Vec<Elem> = m.iter().cloned().map(Elem::Rat).collect();
                Some(text::format_base_poly(&base, &v))
            }
            Kind::PrimeExt(_, m) => {
                let v: Vec<Elem> = m.iter().copied().map(Elem::Res).collect();
                Some(text::format_base_poly(&base, &v))
            }
            _ => None,
        }
    }

    /// Whether `a` has the canonical shape of an element of this field.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (Kind::Rationals, Elem::Rat(_)) => true,
            (Kind::Prime(p), Elem::Res(r)) => r < p,
            (Kind::RatExt(m), Elem::RatVec(v)) => v.len() == m.len() - 1,
            (Kind::PrimeExt(p, m), Elem::ResVec(v)) => v.len() == m.len() - 1 && v.iter().all(|r| r < p),
            _ => false,
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Rat(BigRational::zero()),
            Kind::Prime(_) => Elem::Res(0),
            Kind::RatExt(m) => Elem::RatVec(vec![BigRational::zero(); m.len() - 1]),
            Kind::PrimeExt(_, m) => Elem::ResVec(vec![0; m.len() - 1]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        self.from_base_rat(&BigRational::from_integer(n.clone())).expect("integers embed")
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem, FieldError> {
        self.from_base_rat(r)
    }

    fn from_base_rat(&self, r: &BigRational) -> Result<Elem, FieldError> {
        let res = |p: u64| -> Result<u64, FieldError> {
            let n = ext::reduce_bigint(r.numer(), p);
            let d = ext::reduce_bigint(r.denom(), p);
            let di = inv_mod(d, p).ok_or(FieldError::DivisionByZero)?;
            Ok(mul_mod(n, di, p))
        };
        Ok(match &*self.0 {
            Kind::Rationals => Elem::Rat(r.clone()),
            Kind::Prime(p) => Elem::Res(res(*p)?),
            Kind::RatExt(m) => {
                let mut v = vec![BigRational::zero(); m.len() - 1];
                v[0] = r.clone();
                Elem::RatVec(v)
            }
            Kind::PrimeExt(p, m) => {
                let mut v = vec![0; m.len() - 1];
                v[0] = res(*p)?;
                Elem::ResVec(v)
            }
        })
    }

    /// Embeds an element of [`Field::base`].
    pub fn from_base(&self, c: &Elem) -> Elem {
        match (&*self.0, c) {
            (Kind::Rationals, Elem::Rat(_)) | (Kind::Prime(_), Elem::Res(_)) => c.clone(),
            (Kind::RatExt(m), Elem::Rat(r)) => {
                let mut v = vec![BigRational::zero(); m.len() - 1];
                v[0] = r.clone();
                Elem::RatVec(v)
            }
            (Kind::PrimeExt(_, m), Elem::Res(r)) => {
                let mut v = vec![0; m.len() - 1];
                v[0] = *r;
                Elem::ResVec(v)
            }
            _ => panic!("{c:?} is not a base element of {self}"),
        }
    }

    /// Coordinates of `a` over the base field (a single entry for prime fields and Q).
    pub fn coords(&self, a: &Elem) -> Vec<Elem> {
        match a {
            Elem::Rat(_) | Elem::Res(_) => vec![a.clone()],
            Elem::RatVec(v) => v.iter().cloned().map(Elem::Rat).collect(),
            Elem::ResVec(v) => v.iter().copied().map(Elem::Res).collect(),
        }
    }

    /// Rebuilds an element from base coordinates; missing high coordinates are zero.
    pub fn from_coords(&self, coords: &[Elem]) -> Elem {
        let mut acc = self.zero();
        let u = self.generator();
        let mut power = self.one();
        for c in coords {
            acc = self.add(&acc, &self.mul(&self.from_base(c), &power));
            if let Some(u) = &u {
                power = self.mul(&power, u);
            }
        }
        acc
    }

    /// The class of `u` in an extension.
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            Kind::RatExt(m) => {
                let mut v = vec![BigRational::zero(); m.len() - 1];
                v[1] = BigRational::one();
                Some(Elem::RatVec(v))
            }
            Kind::PrimeExt(_, m) => {
                let mut v = vec![0; m.len() - 1];
                v[1] = 1;
                Some(Elem::ResVec(v))
            }
            _ => None,
        }
    }

    /// The defining polynomial, low-to-high over [`Field::base`].
    pub fn modulus(&self) -> Option<Vec<Elem>> {
        match &*self.0 {
            Kind::RatExt(m) => Some(m.iter().cloned().map(Elem::Rat).collect()),
            Kind::PrimeExt(_, m) => Some(m.iter().copied().map(Elem::Res).collect()),
            _ => None,
        }
    }

    fn mismatch(&self, a: &Elem) -> ! {
        panic!("element {a:?} does not belong to {self}")
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::Prime(p), Elem::Res(x), Elem::Res(y)) => Elem::Res(ext::add_mod(*x, *y, *p)),
            (Kind::RatExt(_), Elem::RatVec(x), Elem::RatVec(y)) => {
                Elem::RatVec(x.iter().zip(y).map(|(s, t)| s + t).collect())
            }
            (Kind::PrimeExt(p, _), Elem::ResVec(x), Elem::ResVec(y)) => {
                Elem::ResVec(x.iter().zip(y).map(|(s, t)| ext::add_mod(*s, *t, *p)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Kind::Prime(p), Elem::Res(x), Elem::Res(y)) => Elem::Res(ext::sub_mod(*x, *y, *p)),
            (Kind::RatExt(_), Elem::RatVec(x), Elem::RatVec(y)) => {
                Elem::RatVec(x.iter().zip(y).map(|(s, t)| s - t).collect())
            }
            (Kind::PrimeExt(p, _), Elem::ResVec(x), Elem::ResVec(y)) => {
                Elem::ResVec(x.iter().zip(y).map(|(s, t)| ext::sub_mod(*s, *t, *p)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Kind::Prime(p), Elem::Res(x), Elem::Res(y)) => Elem::Res(mul_mod(*x, *y, *p)),
            (Kind::RatExt(m), Elem::RatVec(x), Elem::RatVec(y)) => Elem::RatVec(ext::ext_mul(&ext::RatBase, m, x, y)),
            (Kind::PrimeExt(p, m), Elem::ResVec(x), Elem::ResVec(y)) => {
                Elem::ResVec(ext::ext_mul(&ext::ModBase(*p), m, x, y))
            }
            _ => self.mismatch(a),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        let out = match (&*self.0, a) {
            (Kind::Rationals, Elem::Rat(x)) => (!x.is_zero()).then(|| Elem::Rat(x.recip())),
            (Kind::Prime(p), Elem::Res(x)) => inv_mod(*x, *p).map(Elem::Res),
            (Kind::RatExt(m), Elem::RatVec(x)) => ext::ext_inv(&ext::RatBase, m, x).map(Elem::RatVec),
            (Kind::PrimeExt(p, m), Elem::ResVec(x)) => ext::ext_inv(&ext::ModBase(*p), m, x).map(Elem::ResVec),
            _ => self.mismatch(a),
        };
        out.ok_or(FieldError::DivisionByZero)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow_signed(&self, a: &Elem, e: i64) -> Result<Elem, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(x) => x.is_zero(),
            Elem::Res(x) => *x == 0,
            Elem::RatVec(v) => v.iter().all(Zero::is_zero),
            Elem::ResVec(v) => v.iter().all(|x| *x == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// The unique p-th root in characteristic p (inverse Frobenius).
    pub fn pth_root(&self, a: &Elem) -> Elem {
        let p = self.characteristic();
        assert!(p > 0, "p-th roots need positive characteristic");
        let f = self.degree() as u32;
        if f == 1 {
            return a.clone();
        }
        self.pow(a, p.pow(f - 1))
    }

    /// Integer code Σ c_k p^k of a finite-field element.
    pub fn encode(&self, a: &Elem) -> Option<u64> {
        let p = self.characteristic();
        match a {
            Elem::Res(r) => Some(*r),
            Elem::ResVec(v) => Some(v.iter().rev().fold(0u64, |acc, c| acc * p + c)),
            _ => None,
        }
    }

    /// Inverse of [`Field::encode`].
    pub fn decode(&self, mut code: u64) -> Elem {
        match &*self.0 {
            Kind::Prime(p) => Elem::Res(code % p),
            Kind::PrimeExt(p, m) => {
                let mut v = Vec::with_capacity(m.len() - 1);
                for _ in 0..m.len() - 1 {
                    v.push(code % p);
                    code /= p;
                }
                Elem::ResVec(v)
            }
            _ => panic!("{self} is not finite"),
        }
    }

    /// All elements of a finite field in increasing code order.
    pub fn elements(&self) -> Result<Vec<Elem>, FieldError> {
        let q = self.order().ok_or_else(|| FieldError::TooLarge(self.to_string()))?;
        if q > 1 << 20 {
            return Err(FieldError::TooLarge(self.to_string()));
        }
        Ok((0..q).map(|c| self.decode(c)).collect())
    }

    /// Whether `a` has multiplicative order exactly `m`.
    pub fn has_order(&self, a: &Elem, m: u64) -> bool {
        if m == 0 || self.is_zero(a) || !self.is_one(&self.pow(a, m)) {
            return false;
        }
        prime_factors(m).into_iter().all(|r| !self.is_one(&self.pow(a, m / r)))
    }

    /// A primitive m-th root of unity, chosen canonically.
    ///
    /// Finite fields: the primitive root with the smallest code. Q: ±1.
    /// Q[u]/Φ_k: the first of 1, −1, u, −u, u², −u², … of exact order m.
    /// Q[u]/(u²+3): the first power of (1+u)/2 of exact order m.
    pub fn root_of_unity(&self, m: u64) -> Result<Elem, FieldError> {
        let none = || FieldError::NoSuchRoot { field: self.to_string(), m };
        if m == 0 {
            return Err(none());
        }
        match &*self.0 {
            Kind::Rationals => match m {
                1 => Ok(self.one()),
                2 => Ok(self.from_i64(-1)),
                _ => Err(none()),
            },
            Kind::Prime(_) | Kind::PrimeExt(_, _) => {
                let q = self.order().unwrap();
                if (q - 1) % m != 0 {
                    return Err(none());
                }
                let mut h = None;
                for code in 1..q {
                    let cand = self.pow(&self.decode(code), (q - 1) / m);
                    if self.has_order(&cand, m) {
                        h = Some(cand);
                        break;
                    }
                }
                let h = h.ok_or_else(none)?;
                if m > CANONICAL_ROOT_LIMIT {
                    return Ok(h);
                }
                let mut best: Option<(u64, Elem)> = None;
                let mut power = self.one();
                for k in 1..=m {
                    power = self.mul(&power, &h);
                    if k.gcd(&m) == 1 {
                        let code = self.encode(&power).unwrap();
                        if best.as_ref().is_none_or(|(c, _)| code < *c) {
                            best = Some((code, power.clone()));
                        }
                    }
                }
                Ok(best.unwrap().1)
            }
            Kind::RatExt(modulus) => {
                let u = self.generator().unwrap();
                let sqrt_minus3: Vec<BigRational> =
                    [3, 0, 1].iter().map(|&c: &i64| BigRational::from_integer(c.into())).collect();
                let candidates: Vec<Elem> = if *modulus == sqrt_minus3 {
                    let half = BigRational::new(1.into(), 2.into());
                    let g = Elem::RatVec(vec![half.clone(), half]);
                    (0..6).map(|j| self.pow(&g, j)).collect()
                } else {
                    let k = (1..=12u64)
                        .find(|&k| {
                            ext::cyclotomic(k).into_iter().map(BigRational::from_integer).collect::<Vec<_>>() == *modulus
                        })
                        .expect("whitelisted modulus");
                    (0..k)
                        .flat_map(|j| {
                            let pw = self.pow(&u, j);
                            [pw.clone(), self.neg(&pw)]
                        })
                        .collect()
                };
                candidates.into_iter().find(|c| self.has_order(c, m)).ok_or_else(none)
            }
        }
    }

    /// Wraps a raw element after checking its shape.
    pub fn element(&self, value: Elem) -> Result<FieldElement, FieldError> {
        if !self.contains(&value) {
            return Err(FieldError::DescriptorMismatch);
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    pub fn format(&self, a: &Elem) -> String {
        text::format_elem(self, a)
    }

    pub fn parse(&self, s: &str) -> Result<Elem, FieldError> {
        text::parse_elem(self, s)
    }

    /// The element as an integer, when it is the image of one in a characteristic-0 field.
    pub fn as_integer(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Rat(r) => r.is_integer().then(|| r.to_integer()),
            Elem::RatVec(v) => (v[1..].iter().all(Zero::is_zero) && v[0].is_integer()).then(|| v[0].to_integer()),
            _ => None,
        }
    }

    /// Largest absolute numerator or denominator among the base coordinates (1 for finite fields).
    pub fn height(&self, a: &Elem) -> BigInt {
        let of = |r: &BigRational| r.numer().abs().max(r.denom().abs());
        match a {
            Elem::Rat(r) => of(r),
            Elem::RatVec(v) => v.iter().map(of).max().unwrap_or_else(BigInt::zero),
            _ => BigInt::one(),
        }
    }

    /// Rough size estimate used to skip hopeless brute-force searches.
    pub fn order_f64(&self) -> f64 {
        self.order().map(|q| q.to_f64().unwrap_or(f64::INFINITY)).unwrap_or(f64::INFINITY)
    }
}

/// A field element bundled with its field; arithmetic checks that operands agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(&self.value, &other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.div(&self.value, &other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.field.inv(&self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.field.pow_signed(&self.value, e)?))
    }

    pub fn equals(&self, other: &FieldElement) -> Result<bool, FieldError> {
        self.check(other)?;
        Ok(self.value == other.value)
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> Field {
        Field::extension(&Field::prime(3).unwrap(), &[Elem::Res(1), Elem::Res(0), Elem::Res(1)]).unwrap()
    }

    #[test]
    fn gf9_has_i() {
        let f = gf9();
        let i = f.generator().unwrap();
        assert_eq!(f.mul(&i, &i), f.from_i64(-1));
        assert_eq!(f.order(), Some(9));
    }

    #[test]
    fn reducible_modulus_mod_5() {
        let err = Field::extension(&Field::prime(5).unwrap(), &[Elem::Res(1), Elem::Res(0), Elem::Res(1)]).unwrap_err();
        assert!(matches!(err, FieldError::NotIrreducible(_)));
    }

    #[test]
    fn sqrt_minus_three_squares() {
        let q = Field::rationals();
        let m: Vec<Elem> = [3, 0, 1].iter().map(|&c| q.from_i64(c)).collect();
        let f = Field::extension(&q, &m).unwrap();
        let u = f.generator().unwrap();
        assert_eq!(f.mul(&u, &u), f.from_i64(-3));
    }

    #[test]
    fn rational_modulus_outside_whitelist() {
        let q = Field::rationals();
        let m: Vec<Elem> = [-2, 0, 1].iter().map(|&c| q.from_i64(c)).collect();
        assert!(matches!(Field::extension(&q, &m), Err(FieldError::NotIrreducible(_))));
        let m: Vec<Elem> = [2, 1].iter().map(|&c| q.from_i64(c)).collect();
        assert!(matches!(Field::extension(&q, &m), Err(FieldError::BadModulus(_))));
    }

    #[test]
    fn nested_and_char_two_rejected() {
        let f = gf9();
        let m = vec![f.one(), f.zero(), f.one()];
        assert_eq!(Field::extension(&f, &m), Err(FieldError::NestedExtension));
        assert_eq!(Field::prime(2), Err(FieldError::BadCharacteristic(2)));
        assert_eq!(Field::prime(9), Err(FieldError::BadCharacteristic(9)));
    }

    #[test]
    fn roots_of_unity() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.root_of_unity(3).unwrap(), Elem::Res(2));
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(f5.root_of_unity(3), Err(FieldError::NoSuchRoot { .. })));
        let z5 = Field::cyclotomic(5).unwrap();
        assert_eq!(z5.root_of_unity(5).unwrap(), z5.generator().unwrap());
        let qi = Field::cyclotomic(4).unwrap();
        assert_eq!(qi.root_of_unity(4).unwrap(), qi.generator().unwrap());
        assert_eq!(Field::rationals().root_of_unity(2).unwrap(), Field::rationals().from_i64(-1));
        assert!(Field::rationals().root_of_unity(3).is_err());
        let z5 = Field::cyclotomic(5).unwrap();
        assert!(z5.has_order(&z5.root_of_unity(10).unwrap(), 10));
    }

    #[test]
    fn checked_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        let one = f7.element(f7.one()).unwrap();
        let three = f7.element(f7.from_i64(3)).unwrap();
        assert_eq!(one.div(&three).unwrap().value(), &Elem::Res(5));

        let qi = Field::cyclotomic(4).unwrap();
        let a = qi.element(qi.parse("1+u").unwrap()).unwrap();
        let b = qi.element(qi.parse("1-u").unwrap()).unwrap();
        assert_eq!(a.mul(&b).unwrap().value(), &qi.from_i64(2));

        let q = Field::rationals();
        let zero = q.element(q.zero()).unwrap();
        let qone = q.element(q.one()).unwrap();
        assert_eq!(qone.div(&zero), Err(FieldError::DivisionByZero));
        assert_eq!(qone.add(&one), Err(FieldError::DescriptorMismatch));
    }

    #[test]
    fn gf_presentations() {
        let f = Field::gf(3, 2).unwrap();
        assert_eq!(f.modulus_text().unwrap(), "u^2+1");
        let f81 = Field::gf(3, 4).unwrap();
        assert_eq!(f81.order(), Some(81));
        assert!(f81.root_of_unity(5).is_ok());
        assert!(Field::gf(3, 2).unwrap().root_of_unity(5).is_err());
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = Field::gf(5, 2).unwrap();
        for a in f.elements().unwrap() {
            assert_eq!(f.pow(&f.pth_root(&a), 5), a);
        }
    }
}
