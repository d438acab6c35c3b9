use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::poly::{BinaryForm, Poly};

use super::search::{fiber_points, search_involutions};
use super::{MoebiusError, MoebiusMap};

/// The finite subgroups of PGL2 in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    C,
    D,
    A4,
    S4,
    A5,
    U,
    K,
    #[serde(rename = "PSL")]
    Psl,
    #[serde(rename = "PGL")]
    Pgl,
}

impl Family {
    pub const ALL: [Family; 9] =
        [Family::C, Family::D, Family::A4, Family::S4, Family::A5, Family::U, Family::K, Family::Psl, Family::Pgl];

    pub fn name(self) -> &'static str {
        match self {
            Family::C => "C",
            Family::D => "D",
            Family::A4 => "A4",
            Family::S4 => "S4",
            Family::A5 => "A5",
            Family::U => "U",
            Family::K => "K",
            Family::Psl => "PSL",
            Family::Pgl => "PGL",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = MoebiusError;

    fn from_str(s: &str) -> Result<Family, MoebiusError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| MoebiusError::BadParams(format!("unknown family {s:?}")))
    }
}

/// Numeric parameters; which ones are required depends on the family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    pub params: GroupParams,
    pub field: Field,
    pub generators: Vec<MoebiusMap>,
    pub expected_order: u64,
}

fn bad(msg: impl Into<String>) -> MoebiusError {
    MoebiusError::BadParams(msg.into())
}

fn need_m(params: &GroupParams) -> Result<u64, MoebiusError> {
    params.m.filter(|m| *m >= 2).ok_or_else(|| bad("family needs m >= 2"))
}

fn need_t(params: &GroupParams) -> Result<u32, MoebiusError> {
    params.t.filter(|t| *t >= 1).ok_or_else(|| bad("family needs t >= 1"))
}

/// Writes q = p^f; fails unless q is a power of the characteristic.
pub(crate) fn prime_power_exponent(q: u64, p: u64) -> Option<u32> {
    if p < 2 || q < p {
        return None;
    }
    let mut f = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some(f)
}

fn need_q(params: &GroupParams) -> Result<(u64, u32), MoebiusError> {
    let q = params.q.ok_or_else(|| bad("family needs q"))?;
    let f = prime_power_exponent(q, params.p).ok_or_else(|| bad(format!("q = {q} is not a power of p = {}", params.p)))?;
    Ok((q, f))
}

fn root(field: &Field, m: u64, what: &str) -> Result<Elem, MoebiusError> {
    field
        .root_of_unity(m)
        .map_err(|_| MoebiusError::MissingConstant { field: field.to_string(), what: what.to_string() })
}

/// Elements of the subfield GF(p^t) of a finite field, in code order.
pub fn subfield_elements(field: &Field, t: u32) -> Result<Vec<Elem>, MoebiusError> {
    let missing = || MoebiusError::MissingConstant { field: field.to_string(), what: format!("GF(p^{t})") };
    if !field.is_finite() || field.degree() % t as usize != 0 {
        return Err(missing());
    }
    let q = field.characteristic().pow(t);
    let all = field.elements()?;
    Ok(all.into_iter().filter(|x| field.pow(x, q) == *x).collect())
}

/// A basis over GF(p) of the subfield GF(p^t), chosen greedily in code order.
pub fn subfield_basis(field: &Field, t: u32) -> Result<Vec<Elem>, MoebiusError> {
    let p = field.characteristic();
    let elems = subfield_elements(field, t)?;
    let mut span: HashSet<Elem> = HashSet::from([field.zero()]);
    let mut basis = Vec::new();
    for x in elems {
        if span.contains(&x) {
            continue;
        }
        let mut next = HashSet::with_capacity(span.len() * p as usize);
        for s in &span {
            let mut v = s.clone();
            for _ in 0..p {
                next.insert(v.clone());
                v = field.add(&v, &x);
            }
        }
        span = next;
        basis.push(x);
    }
    Ok(basis)
}

/// Smallest field hosting the constants a family needs, for characteristic `p`.
pub fn default_field(family: Family, params: &GroupParams) -> Result<Field, MoebiusError> {
    let p = params.p;
    if p == 0 {
        return Ok(match family {
            Family::C | Family::D => {
                let m = need_m(params)?;
                if m > 12 {
                    return Err(MoebiusError::MissingConstant {
                        field: "Q".into(),
                        what: format!("a primitive {m}-th root of unity in a supported extension"),
                    });
                }
                Field::cyclotomic(m)?
            }
            Family::A4 => Field::cyclotomic(12)?,
            Family::S4 => Field::cyclotomic(4)?,
            Family::A5 => Field::cyclotomic(5)?,
            _ => return Err(bad(format!("{family} needs positive characteristic"))),
        });
    }
    let smallest_with = |order: u64, step: u32| -> Result<Field, MoebiusError> {
        let mut f = step;
        loop {
            let size = (p as u128).pow(f);
            if size >= 1 << 20 {
                return Err(bad(format!("no GF({p}^f) of manageable size contains the needed constants")));
            }
            if (size - 1) % order as u128 == 0 {
                return Ok(Field::gf(p, f)?);
            }
            f += step;
        }
    };
    match family {
        Family::C | Family::D => smallest_with(need_m(params)?, 1),
        Family::A4 => smallest_with(12, 1),
        Family::S4 => smallest_with(4, 1),
        Family::A5 if p == 3 => Ok(Field::gf(3, 4)?),
        Family::A5 => smallest_with(5, 1),
        Family::U => Ok(Field::gf(p, need_t(params)?)?),
        Family::K => smallest_with(2 * need_m(params)?, need_t(params)?),
        Family::Psl | Family::Pgl => {
            let (_, f) = need_q(params)?;
            Ok(Field::gf(p, f)?)
        }
    }
}

/// Generators and order for a family over `field`.
pub fn group_preset(family: Family, params: &GroupParams, field: &Field) -> Result<GroupSpec, MoebiusError> {
    let mut params = params.clone();
    params.p = field.characteristic();
    let p = params.p;
    let f = field;
    let scale = |a: &Elem| MoebiusMap::scaling(f, a);
    let inversion = MoebiusMap::from_i64s(f, [0, 1, 1, 0])?;
    let (generators, order) = match family {
        Family::C | Family::D => {
            let m = need_m(&params)?;
            if p > 0 && m % p == 0 {
                return Err(bad(format!("(m, p) = ({m}, {p}) is not coprime")));
            }
            let zeta = root(f, m, &format!("a primitive {m}-th root of unity"))?;
            let mut gens = vec![scale(&zeta)?];
            if family == Family::D {
                gens.push(inversion);
                (gens, 2 * m)
            } else {
                (gens, m)
            }
        }
        Family::A4 | Family::S4 => {
            if p == 3 {
                return Err(bad(format!("{family} is not tame in characteristic 3")));
            }
            let i = root(f, 4, "i")?;
            let mut gens = vec![
                MoebiusMap::from_i64s(f, [-1, 0, 0, 1])?,
                MoebiusMap::new(f, [f.one(), i.clone(), f.one(), f.neg(&i)])?,
            ];
            if family == Family::S4 {
                gens.push(scale(&i)?);
                (gens, 24)
            } else {
                (gens, 12)
            }
        }
        Family::A5 if p == 3 => {
            let zeta = root(f, 5, "a primitive 5th root of unity")?;
            let s = scale(&zeta)?;
            let vertices = fiber_points(&a5_char3_vertex_form(f)?)?;
            let involutions = search_involutions(f, &vertices, std::slice::from_ref(&s), 60)?;
            let u = involutions.into_iter().next().ok_or_else(|| MoebiusError::SearchFailed("A5 involution".into()))?;
            (vec![s, u], 60)
        }
        Family::A5 => {
            if p == 5 {
                return Err(bad("A5 in characteristic 5 is not covered"));
            }
            let zeta = root(f, 5, "a primitive 5th root of unity")?;
            (vec![scale(&zeta)?, a5_involution(f, &zeta)?], 60)
        }
        Family::U | Family::K => {
            if p == 0 {
                return Err(bad(format!("{family} needs positive characteristic")));
            }
            let t = need_t(&params)?;
            let mut gens: Vec<MoebiusMap> =
                subfield_basis(f, t)?.iter().map(|a| MoebiusMap::translation(f, a)).collect();
            let pt = p.pow(t);
            if family == Family::K {
                let m = need_m(&params)?;
                if m % p == 0 || (pt - 1) % m != 0 {
                    return Err(bad(format!("K needs (m, p) = 1 and m | p^t - 1, got m = {m}, p^t = {pt}")));
                }
                let xi = root(f, 2 * m, &format!("a primitive {}-th root of unity", 2 * m))?;
                gens.push(scale(&f.mul(&xi, &xi))?);
                (gens, m * pt)
            } else {
                (gens, pt)
            }
        }
        Family::Psl | Family::Pgl => {
            if p == 0 {
                return Err(bad(format!("{family} needs positive characteristic")));
            }
            let (q, qf) = need_q(&params)?;
            if f.degree() % qf as usize != 0 {
                return Err(MoebiusError::MissingConstant { field: f.to_string(), what: format!("GF({q})") });
            }
            let g = root(f, q - 1, &format!("a generator of GF({q})*"))?;
            let one = f.one();
            let t = MoebiusMap::translation(f, &one);
            if family == Family::Pgl {
                (vec![t, scale(&g)?, inversion], q * (q * q - 1))
            } else {
                let minus_inv = MoebiusMap::from_i64s(f, [0, -1, 1, 0])?;
                (vec![t, scale(&f.mul(&g, &g))?, minus_inv], q * (q * q - 1) / 2)
            }
        }
    };
    Ok(GroupSpec { family, params, field: f.clone(), generators, expected_order: order })
}

/// The involution `[[ζ²−ζ³, ζ−ζ⁴], [ζ−ζ⁴, ζ³−ζ²]]` normalizing the icosahedral vertex set.
fn a5_involution(f: &Field, zeta: &Elem) -> Result<MoebiusMap, MoebiusError> {
    let z = |k| f.pow(zeta, k);
    let a = f.sub(&z(2), &z(3));
    let b = f.sub(&z(1), &z(4));
    MoebiusMap::new(f, [a.clone(), b.clone(), b, f.neg(&a)])
}

/// `X·(X^10 + 2i·X^5·Z^5 + Z^10)·Z`: the degree-12 vertex form for A5 in characteristic 3.
pub(crate) fn a5_char3_vertex_form(f: &Field) -> Result<BinaryForm, MoebiusError> {
    let i = root(f, 4, "i")?;
    let mut c = vec![f.zero(); 11];
    c[0] = f.one();
    c[5] = f.add(&i, &i);
    c[10] = f.one();
    let inner = Poly::new(f, c);
    let form = BinaryForm::from_poly(&inner.shift(1), 12).expect("degree fits");
    Ok(form)
}
