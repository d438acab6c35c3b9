//! Invariant rational functions φ = Ψ/Υ of the reduced groups, their branch
//! data, and exact verification of invariance and ramification.

mod modular;

use serde_json::{json, Value};

use crate::field::{Elem, Field, FieldError};
use crate::moebius::{group_closure, subfield_elements, Family, GroupSpec, MoebiusError, MoebiusMap};
use crate::poly::{BinaryForm, Poly, PolyError, RationalMap};
use crate::report::VerifyReport;

pub use modular::{modular_primes, modular_recheck};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A branch value `q` (`None` is ∞) with index `e` and special factor `h`,
/// so that the fiber form over `q` is `c·h^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub value: Option<Elem>,
    pub e: u32,
    pub factor: BinaryForm,
}

#[derive(Clone, Debug)]
pub struct InvariantFunction {
    pub group: GroupSpec,
    pub phi: RationalMap,
    pub branches: Vec<Branch>,
}

fn int_poly(f: &Field, coeffs: &[(usize, i64)]) -> Poly {
    let deg = coeffs.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut v = vec![f.zero(); deg + 1];
    for &(k, c) in coeffs {
        v[k] = f.from_i64(c);
    }
    Poly::new(f, v)
}

fn form(p: &Poly, degree: usize) -> BinaryForm {
    BinaryForm::from_poly(p, degree).expect("factor fits its declared degree")
}

/// `Z·h(X, Z)` written as a form of degree `deg h + 1`.
fn with_infinity(p: &Poly) -> BinaryForm {
    form(p, p.degree().unwrap() + 1)
}

/// A square root of −3, namely 2ω + 1 for the canonical primitive cube root ω.
pub fn sqrt_minus_three(f: &Field) -> Result<Elem, MoebiusError> {
    let omega = f
        .root_of_unity(3)
        .map_err(|_| MoebiusError::MissingConstant { field: f.to_string(), what: "sqrt(-3)".into() })?;
    let s = f.add(&f.add(&omega, &omega), &f.one());
    debug_assert_eq!(f.mul(&s, &s), f.from_i64(-3));
    Ok(s)
}

/// The icosahedral face polynomial `x^20 − 228x^15 + 494x^10 + 228x^5 + 1`.
pub fn icosahedral_faces(f: &Field) -> Poly {
    int_poly(f, &[(20, 1), (15, -228), (10, 494), (5, 228), (0, 1)])
}

/// `x^10 + 11x^5 − 1`, the finite icosahedral vertices other than 0.
pub fn icosahedral_vertices(f: &Field) -> Poly {
    int_poly(f, &[(10, 1), (5, 11), (0, -1)])
}

/// The icosahedral edge polynomial `x^30 + 522x^25 − 10005x^20 − 10005x^10 − 522x^5 + 1`.
pub fn icosahedral_edges(f: &Field) -> Poly {
    int_poly(f, &[(30, 1), (25, 522), (20, -10005), (10, -10005), (5, -522), (0, 1)])
}

/// `x^12 − 33x^8 − 33x^4 + 1`.
pub fn octahedral_edges(f: &Field) -> Poly {
    int_poly(f, &[(12, 1), (8, -33), (4, -33), (0, 1)])
}

/// `x^8 + 14x^4 + 1`.
pub fn octahedral_faces(f: &Field) -> Poly {
    int_poly(f, &[(8, 1), (4, 14), (0, 1)])
}

/// `x^5 − x = x(x^4 − 1)`.
pub fn octahedral_vertices(f: &Field) -> Poly {
    int_poly(f, &[(5, 1), (1, -1)])
}

fn param(v: Option<u64>, what: &str) -> Result<u64, MoebiusError> {
    v.ok_or_else(|| MoebiusError::BadParams(format!("missing {what}")))
}

/// Builds φ and the branch list for a preset.
pub fn build_invariant(g: &GroupSpec) -> Result<InvariantFunction, InvariantError> {
    let f = &g.field;
    let x = Poly::x(f);
    let one = Poly::one(f);
    let p = f.characteristic();
    let mono = |k: usize| Poly::monomial(f, f.one(), k);
    let (num, den, branches): (Poly, Poly, Vec<Branch>) = match g.family {
        Family::C => {
            let m = param(g.params.m, "m")? as usize;
            let branches = vec![
                Branch { value: None, e: m as u32, factor: BinaryForm::z(f) },
                Branch { value: Some(f.zero()), e: m as u32, factor: BinaryForm::x(f) },
            ];
            (mono(m), one, branches)
        }
        Family::D => {
            let m = param(g.params.m, "m")? as usize;
            let xm = mono(m);
            let branches = vec![
                Branch { value: None, e: m as u32, factor: with_infinity(&x) },
                Branch { value: Some(f.from_i64(2)), e: 2, factor: form(&xm.sub(&one), m) },
                Branch { value: Some(f.from_i64(-2)), e: 2, factor: form(&xm.add(&one), m) },
            ];
            (mono(2 * m).add(&one), xm, branches)
        }
        Family::A4 => {
            let s = sqrt_minus_three(f)?;
            let two_s = f.add(&s, &s);
            let six_s = f.mul(&f.from_i64(3), &two_s);
            let quartic = |c: &Elem| Poly::new(f, vec![f.one(), f.zero(), c.clone(), f.zero(), f.one()]);
            let v = octahedral_vertices(f);
            let branches = vec![
                Branch { value: None, e: 2, factor: with_infinity(&v) },
                Branch { value: Some(six_s.clone()), e: 3, factor: form(&quartic(&f.neg(&two_s)), 4) },
                Branch { value: Some(f.neg(&six_s)), e: 3, factor: form(&quartic(&two_s), 4) },
            ];
            (octahedral_edges(f), v.pow(2), branches)
        }
        Family::S4 => {
            let v = octahedral_vertices(f);
            let branches = vec![
                Branch { value: Some(f.one()), e: 2, factor: form(&octahedral_edges(f), 12) },
                Branch { value: Some(f.zero()), e: 3, factor: form(&octahedral_faces(f), 8) },
                Branch { value: None, e: 4, factor: with_infinity(&v) },
            ];
            (octahedral_faces(f).pow(3), v.pow(4).scale(&f.from_i64(108)), branches)
        }
        Family::A5 if p == 3 => {
            let i = f
                .root_of_unity(4)
                .map_err(|_| MoebiusError::MissingConstant { field: f.to_string(), what: "i".into() })?;
            let mut c = vec![f.zero(); 11];
            c[0] = f.one();
            c[5] = f.add(&i, &i);
            c[10] = f.one();
            let vert = Poly::new(f, c).shift(1);
            let faces = mono(10).sub(&one);
            let branches = vec![
                Branch { value: None, e: 5, factor: with_infinity(&vert) },
                Branch { value: Some(f.zero()), e: 6, factor: form(&faces, 10) },
            ];
            (faces.pow(6), vert.pow(5), branches)
        }
        Family::A5 => {
            let vert = icosahedral_vertices(f).shift(1);
            let branches = vec![
                Branch { value: Some(f.zero()), e: 3, factor: form(&icosahedral_faces(f), 20) },
                Branch { value: None, e: 5, factor: with_infinity(&vert) },
                Branch { value: Some(f.from_i64(1728)), e: 2, factor: form(&icosahedral_edges(f), 30) },
            ];
            (icosahedral_faces(f).pow(3).neg(), vert.pow(5), branches)
        }
        Family::U => {
            let t = g.params.t.ok_or_else(|| MoebiusError::BadParams("missing t".into()))?;
            let h = subfield_elements(f, t)?;
            let psi = h.iter().fold(one.clone(), |acc, a| acc.mul(&Poly::new(f, vec![a.clone(), f.one()])));
            let pt = h.len() as u32;
            (psi, one, vec![Branch { value: None, e: pt, factor: BinaryForm::z(f) }])
        }
        Family::K => {
            let t = g.params.t.ok_or_else(|| MoebiusError::BadParams("missing t".into()))?;
            let m = param(g.params.m, "m")?;
            let h = subfield_elements(f, t)?;
            let mut powers: Vec<Elem> = h.iter().filter(|a| !f.is_zero(a)).map(|a| f.pow(a, m)).collect();
            powers.sort_by_key(|a| f.encode(a));
            powers.dedup();
            let base = powers.iter().fold(x.clone(), |acc, b| {
                acc.mul(&mono(m as usize).sub(&Poly::constant(f, b.clone())))
            });
            let pt = h.len() as u32;
            let branches = vec![
                Branch { value: Some(f.zero()), e: m as u32, factor: form(&base, pt as usize) },
                Branch { value: None, e: m as u32 * pt, factor: BinaryForm::z(f) },
            ];
            (base.pow(m as u32), one, branches)
        }
        Family::Psl | Family::Pgl => {
            let q = param(g.params.q, "q")?;
            let d = mono(q as usize).sub(&x);
            let n = d.pow(q as u32 - 1).add(&one);
            let (beta, alpha) = if g.family == Family::Psl {
                ((q + 1) / 2, q * (q - 1) / 2)
            } else {
                (q + 1, q * (q - 1))
            };
            let branches = vec![
                Branch { value: Some(f.zero()), e: beta as u32, factor: form(&n, (q * (q - 1)) as usize) },
                Branch { value: None, e: alpha as u32, factor: with_infinity(&d) },
            ];
            (n.pow(beta as u32), d.pow(alpha as u32), branches)
        }
    };
    let phi = RationalMap::new(num, den)?;
    Ok(InvariantFunction { group: g.clone(), phi, branches })
}

/// Ramification indices listed for each family, as a multiset in table order.
pub fn table_ramification(g: &GroupSpec) -> Vec<u64> {
    let pr = &g.params;
    let m = pr.m.unwrap_or(0);
    let pt = pr.t.map(|t| pr.p.pow(t)).unwrap_or(0);
    let q = pr.q.unwrap_or(0);
    match g.family {
        Family::C => vec![m, m],
        Family::D => vec![2, 2, m],
        Family::A4 => vec![2, 3, 3],
        Family::S4 => vec![2, 3, 4],
        Family::A5 if pr.p == 3 => vec![6, 5],
        Family::A5 => vec![2, 3, 5],
        Family::U => vec![pt],
        Family::K => vec![m * pt, m],
        Family::Psl => vec![q * (q - 1) / 2, (q + 1) / 2],
        Family::Pgl => vec![q * (q - 1), q + 1],
    }
}

/// Generators followed by `samples` closure elements taken at an even stride,
/// skipping the identity.
pub fn sample_elements(g: &GroupSpec, samples: usize) -> Result<Vec<MoebiusMap>, MoebiusError> {
    let all = group_closure(g, g.expected_order as usize + 1)?;
    let mut out = g.generators.clone();
    let rest = all.len().saturating_sub(1);
    if rest <= samples {
        out.extend(all.into_iter().skip(1));
    } else {
        out.extend((0..samples).map(|k| all[1 + k * rest / samples].clone()));
    }
    Ok(out)
}

/// Number of closure elements checked beyond the generators.
pub const INVARIANCE_SAMPLES: usize = 5;

/// Exact invariance `Ψ^h∘σ · Υ^h = Ψ^h · Υ^h∘σ` for generators and sampled elements,
/// plus the closure order and `deg φ = |Ḡ|`.
pub fn verify_invariance(inv: &InvariantFunction) -> VerifyReport {
    let mut r = VerifyReport::new();
    let g = &inv.group;
    match group_closure(g, g.expected_order as usize + 1) {
        Ok(all) => r.push(
            "closure_order",
            all.len() as u64 == g.expected_order,
            format!("|G| = {}, expected {}", all.len(), g.expected_order),
        ),
        Err(e) => r.push("closure_order", false, e.to_string()),
    }
    let deg = inv.phi.degree() as u64;
    r.push("degree", deg == g.expected_order, format!("deg phi = {deg}, |G| = {}", g.expected_order));
    let elems = match sample_elements(g, INVARIANCE_SAMPLES) {
        Ok(v) => v,
        Err(e) => {
            r.push("invariance", false, e.to_string());
            return r;
        }
    };
    let num = inv.phi.num_form();
    let den = inv.phi.den_form();
    let bad: Vec<String> = elems
        .iter()
        .filter(|s| s.pull(&num).mul(&den) != num.mul(&s.pull(&den)))
        .map(|s| s.to_string())
        .collect();
    let details = if bad.is_empty() {
        format!("{} elements", elems.len())
    } else {
        format!("not invariant under {}", bad.join(", "))
    };
    r.push("invariance", bad.is_empty(), details);
    r
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Branch text: `inf` or the formatted field element.
pub fn branch_value_text(f: &Field, q: Option<&Elem>) -> String {
    q.map(|q| f.format(q)).unwrap_or_else(|| "inf".into())
}

/// Checks every branch fiber is `c·h^e` with `h` proportional to the recorded factor,
/// that `e` is the gcd of the fiber multiplicities, that the indices match the table,
/// and that one non-branch fiber is squarefree.
pub fn verify_ramification(inv: &InvariantFunction) -> VerifyReport {
    let mut r = VerifyReport::new();
    let f = &inv.group.field;
    let deg = inv.phi.degree();
    for b in &inv.branches {
        let name = format!("branch[{}]", branch_value_text(f, b.value.as_ref()));
        let fiber = inv.phi.map_sub(b.value.as_ref());
        match fiber.power_decompose(b.e) {
            Ok((_, h)) => {
                let same = b.factor.proportion(&h).is_some();
                r.push(format!("{name}.power"), same, format!("fiber = c*h^{}", b.e));
            }
            Err(e) => r.push(format!("{name}.power"), false, e.to_string()),
        }
        r.push(
            format!("{name}.degree"),
            b.e as usize * b.factor.degree() == deg,
            format!("{} * {} vs {deg}", b.e, b.factor.degree()),
        );
        match fiber.multiplicity_profile() {
            Ok(prof) => {
                let g = prof.iter().fold(0, |acc, (_, m)| gcd(acc, *m as u64));
                r.push(format!("{name}.certified_e"), g == b.e as u64, format!("gcd of multiplicities = {g}"));
            }
            Err(e) => r.push(format!("{name}.certified_e"), false, e.to_string()),
        }
    }
    let mut got: Vec<u64> = inv.branches.iter().map(|b| b.e as u64).collect();
    let mut want = table_ramification(&inv.group);
    got.sort_unstable();
    want.sort_unstable();
    r.push("table", got == want, format!("{got:?} vs {want:?}"));
    let limit = f.characteristic().clamp(1, 1000) as i64;
    let limit = if f.characteristic() == 0 { 1000 } else { limit };
    let probe = (0..limit).map(|k| f.from_i64(k)).find(|l| !inv.branches.iter().any(|b| b.value.as_ref() == Some(l)));
    match probe {
        Some(l) => {
            let sf = inv.phi.map_sub(Some(&l)).multiplicity_profile().map(|p| p.iter().all(|(_, m)| *m == 1));
            r.push("unbranched_probe", sf == Ok(true), format!("fiber over {} squarefree", f.format(&l)));
        }
        None => r.push("unbranched_probe", false, "no integer probe value"),
    }
    r
}

/// Invariance and ramification together.
pub fn verify(inv: &InvariantFunction) -> VerifyReport {
    let mut r = verify_invariance(inv);
    r.absorb("", verify_ramification(inv));
    r
}

fn is_bare_monomial(p: &Poly) -> bool {
    let f = p.field();
    p.coeffs().iter().filter(|c| !f.is_zero(c)).count() == 1 && f.is_one(&p.lc())
}

impl InvariantFunction {
    pub fn phi_text(&self) -> String {
        let (num, den) = (self.phi.num(), self.phi.den());
        if den.is_one() {
            return num.to_string();
        }
        let n = if is_bare_monomial(num) { num.to_string() } else { format!("({num})") };
        let d = if is_bare_monomial(den) { den.to_string() } else { format!("({den})") };
        format!("{n}/{d}")
    }

    pub fn to_json(&self, report: Option<&VerifyReport>) -> Value {
        let f = &self.group.field;
        let branches: Vec<Value> = self
            .branches
            .iter()
            .map(|b| json!({"q": branch_value_text(f, b.value.as_ref()), "e": b.e, "factor": b.factor.to_string()}))
            .collect();
        let mut v = json!({
            "family": self.group.family,
            "params": self.group.params,
            "field": f.to_string(),
            "phi": {"num": self.phi.num().to_string(), "den": self.phi.den().to_string(), "text": self.phi_text()},
            "branches": branches,
        });
        if let Some(r) = report {
            v["checks"] = serde_json::to_value(&r.checks).unwrap();
        }
        v
    }

    pub fn to_text(&self, report: Option<&VerifyReport>) -> String {
        let f = &self.group.field;
        let mut out = format!("family: {}\nfield: {}\nphi = {}\n", self.group.family, f, self.phi_text());
        for b in &self.branches {
            out.push_str(&format!(
                "branch {}: e = {}, factor = {}\n",
                branch_value_text(f, b.value.as_ref()),
                b.e,
                b.factor
            ));
        }
        if let Some(r) = report {
            out.push_str(&r.to_text());
        }
        out
    }
}
