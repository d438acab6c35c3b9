//! Reduction of the characteristic-0 exceptional invariants modulo primes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::field::{is_prime, Field};
use crate::moebius::{group_preset, Family, GroupParams};
use crate::poly::Poly;
use crate::report::VerifyReport;

use super::{build_invariant, verify, InvariantError, InvariantFunction};

/// Number of primes used by [`modular_recheck`].
pub const MODULAR_PRIMES: usize = 2;

fn congruence(family: Family) -> Option<u64> {
    match family {
        Family::A4 => Some(12),
        Family::S4 => Some(4),
        Family::A5 => Some(5),
        _ => None,
    }
}

fn height(inv: &InvariantFunction) -> BigInt {
    let f = &inv.group.field;
    let polys = [inv.phi.num(), inv.phi.den()];
    let from_polys = polys.iter().flat_map(|p| p.coeffs()).map(|c| f.height(c));
    let from_factors = inv.branches.iter().flat_map(|b| b.factor.coeffs()).map(|c| f.height(c));
    let from_values = inv.branches.iter().filter_map(|b| b.value.as_ref()).map(|c| f.height(c));
    from_polys.chain(from_factors).chain(from_values).max().unwrap_or_default()
}

/// The first primes `p > 2·height` with `p ≡ 1 (mod L)`, where `L` makes the
/// required roots of unity rational over GF(p).
pub fn modular_primes(inv: &InvariantFunction) -> Vec<u64> {
    let Some(l) = congruence(inv.group.family) else {
        return Vec::new();
    };
    let bound = (height(inv) * 2u32).to_u64().expect("height fits in u64");
    let mut p = bound + 1;
    p += (l + 1 - p % l) % l;
    let mut out = Vec::new();
    while out.len() < MODULAR_PRIMES {
        if is_prime(p) {
            out.push(p);
        }
        p += l;
    }
    out
}

fn reduces_to(src: &Poly, dst: &Poly) -> bool {
    let (sf, df) = (src.field(), dst.field());
    let lifted: Option<Vec<_>> = src.coeffs().iter().map(|c| sf.as_integer(c).map(|n| df.from_bigint(&n))).collect();
    lifted.is_some_and(|v| Poly::new(df, v) == *dst)
}

/// Rebuilds a characteristic-0 A4, S4 or A5 preset over GF(p) for each prime from
/// [`modular_primes`] and verifies it there. Other presets give an empty report.
pub fn modular_recheck(inv: &InvariantFunction) -> Result<VerifyReport, InvariantError> {
    let mut r = VerifyReport::new();
    if inv.group.field.characteristic() != 0 {
        return Ok(r);
    }
    for p in modular_primes(inv) {
        let field = Field::prime(p)?;
        let params = GroupParams { p, ..inv.group.params.clone() };
        let g = group_preset(inv.group.family, &params, &field)?;
        let red = build_invariant(&g)?;
        let same = reduces_to(inv.phi.num(), red.phi.num()) && reduces_to(inv.phi.den(), red.phi.den());
        r.push(format!("mod {p}: reduction"), same, "phi mod p equals the GF(p) invariant");
        r.absorb(&format!("mod {p}: "), verify(&red));
    }
    Ok(r)
}
