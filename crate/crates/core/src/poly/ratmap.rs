use crate::field::Elem;

use super::{BinaryForm, Poly, PolyError};

/// A reduced quotient `Ψ/Υ` of polynomials, viewed as a map of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    num: Poly,
    den: Poly,
}

impl RationalMap {
    /// Fails unless `gcd(num, den) = 1` and `den ≠ 0`. Scalars are kept as given.
    pub fn new(num: Poly, den: Poly) -> Result<RationalMap, PolyError> {
        num.compatible(&den)?;
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.gcd(&den).degree() != Some(0) {
            return Err(PolyError::NotReduced);
        }
        Ok(RationalMap { num, den })
    }

    pub fn polynomial(num: Poly) -> RationalMap {
        let den = Poly::one(num.field());
        RationalMap { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn num_form(&self) -> BinaryForm {
        BinaryForm::from_poly(&self.num, self.degree()).unwrap()
    }

    pub fn den_form(&self) -> BinaryForm {
        BinaryForm::from_poly(&self.den, self.degree()).unwrap()
    }

    /// Fiber form `Ψ^h − q·Υ^h` of degree `deg φ`; `None` stands for `q = ∞` and gives `Υ^h`.
    pub fn map_sub(&self, q: Option<&Elem>) -> BinaryForm {
        match q {
            None => self.den_form(),
            Some(q) => self.num_form().sub(&self.den_form().scale(q)),
        }
    }
}
