//! Arithmetic over a prime base (Q or GF(p)) and in simple extensions of it.
//!
//! Extension elements are coordinate vectors of length `deg μ`; base polynomials
//! are dense low-to-high vectors with trailing zeros trimmed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait Base {
    type E: Clone + PartialEq;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
}

pub(crate) struct RatBase;

impl Base for RatBase {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

pub(crate) struct ModBase(pub u64);

impl Base for ModBase {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.0)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.0)
    }
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

/// Reduces a big integer into `[0, p)`.
pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    u64::try_from(r).expect("residue fits in u64")
}

pub(crate) fn trim<B: Base>(b: &B, v: &mut Vec<B::E>) {
    while v.last().is_some_and(|c| b.is_zero(c)) {
        v.pop();
    }
}

pub(crate) fn poly_mul<B: Base>(b: &B, x: &[B::E], y: &[B::E]) -> Vec<B::E> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![b.zero(); x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        if b.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if b.is_zero(yj) {
                continue;
            }
            out[i + j] = b.add(&out[i + j], &b.mul(xi, yj));
        }
    }
    trim(b, &mut out);
    out
}

pub(crate) fn poly_sub<B: Base>(b: &B, x: &[B::E], y: &[B::E]) -> Vec<B::E> {
    let n = x.len().max(y.len());
    let zero = b.zero();
    let mut out: Vec<B::E> = (0..n)
        .map(|i| b.sub(x.get(i).unwrap_or(&zero), y.get(i).unwrap_or(&zero)))
        .collect();
    trim(b, &mut out);
    out
}

/// Quotient and remainder of trimmed base polynomials; `d` must be nonzero.
pub(crate) fn poly_divrem<B: Base>(b: &B, a: &[B::E], d: &[B::E]) -> (Vec<B::E>, Vec<B::E>) {
    let lc_inv = b.inv(d.last().expect("nonzero divisor")).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(b, &mut r);
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![b.zero(); r.len() - d.len() + 1];
    while r.len() >= d.len() {
        let shift = r.len() - d.len();
        let c = b.mul(r.last().unwrap(), &lc_inv);
        for (j, dj) in d.iter().enumerate() {
            r[shift + j] = b.sub(&r[shift + j], &b.mul(&c, dj));
        }
        q[shift] = c;
        r.pop();
        trim(b, &mut r);
    }
    (q, r)
}

/// Product of two reduced coordinate vectors modulo the monic `modulus`.
pub(crate) fn ext_mul<B: Base>(b: &B, modulus: &[B::E], x: &[B::E], y: &[B::E]) -> Vec<B::E> {
    let d = modulus.len() - 1;
    let mut prod = vec![b.zero(); 2 * d - 1];
    for (i, xi) in x.iter().enumerate() {
        if b.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if b.is_zero(yj) {
                continue;
            }
            prod[i + j] = b.add(&prod[i + j], &b.mul(xi, yj));
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k].clone();
        if b.is_zero(&c) {
            continue;
        }
        for j in 0..d {
            prod[k - d + j] = b.sub(&prod[k - d + j], &b.mul(&c, &modulus[j]));
        }
    }
    prod.truncate(d);
    prod
}

/// Inverse modulo `modulus` by the extended Euclidean algorithm.
pub(crate) fn ext_inv<B: Base>(b: &B, modulus: &[B::E], x: &[B::E]) -> Option<Vec<B::E>> {
    let d = modulus.len() - 1;
    let mut r1 = x.to_vec();
    trim(b, &mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut r0 = modulus.to_vec();
    let mut s0: Vec<B::E> = Vec::new();
    let mut s1: Vec<B::E> = vec![b.one()];
    while r1.len() > 1 {
        let (q, r) = poly_divrem(b, &r0, &r1);
        let s = poly_sub(b, &s0, &poly_mul(b, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        if r1.is_empty() {
            return None;
        }
    }
    let c = b.inv(&r1[0])?;
    let mut out: Vec<B::E> = s1.iter().map(|s| b.mul(s, &c)).collect();
    out.resize(d, b.zero());
    Some(out)
}

/// Exhaustive irreducibility test for a monic polynomial over GF(p).
pub(crate) fn irreducible_mod_p(p: u64, modulus: &[u64]) -> bool {
    let b = ModBase(p);
    let deg = modulus.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as u128).pow(k as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                cand.push((c % p as u128) as u64);
                c /= p as u128;
            }
            cand.push(1);
            let (_, r) = poly_divrem(&b, modulus, &cand);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

/// The m-th cyclotomic polynomial over Z, low-to-high.
pub(crate) fn cyclotomic(m: u64) -> Vec<BigInt> {
    let b = RatBase;
    let mut num: Vec<BigRational> = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d: Vec<BigRational> = cyclotomic(d).into_iter().map(BigRational::from_integer).collect();
            let (q, r) = poly_divrem(&b, &num, &phi_d);
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num.into_iter().map(|c| c.to_integer()).collect()
}
