//! Equations `y^n = f(x)` of the cyclic covers attached to a case instance,
//! with exact genus, divisor invariance and cross-checks against printed fibers.

mod printed;

use serde::Serialize;
use serde_json::{json, Value};

use crate::field::{Elem, Field, FieldError};
use crate::invariants::{branch_value_text, build_invariant, InvariantError, InvariantFunction};
use crate::loci::{CaseInstance, CountPolicy};
use crate::moebius::{default_field, group_closure, group_preset, Family, GroupParams, GroupSpec, MoebiusError, MoebiusMap};
use crate::poly::{BinaryForm, Poly, PolyError};
use crate::report::VerifyReport;

pub use printed::{
    fiber_cross_check, printed_fiber_poly, CrossCheck, Erratum, PrintedFamily, Reparametrization,
    CROSS_CHECK_LAMBDAS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquationError {
    #[error("expected {expected} branch parameters, got {got}")]
    CountMismatch { expected: u64, got: usize },
    #[error("branch parameter {0} given twice")]
    DuplicateLambda(String),
    #[error("{0} is a branch value of the invariant")]
    BranchValueCollision(String),
    #[error("y^{n} = f(x) is reducible: all multiplicities share the factor {common} with n")]
    ReducibleCurve { n: u64, common: u64 },
    #[error("cover degree {n} is divisible by the characteristic {p}")]
    WildCover { n: u64, p: u64 },
    #[error("no printed fiber polynomial for {0}")]
    UnknownFamily(String),
    #[error("no {count} small integers give a squarefree product")]
    NoGenericLambdas { count: u64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Clone, Debug)]
pub struct CurveEquation {
    pub n: u64,
    pub field: Field,
    /// Special and fiber factors with their multiplicities, as forms.
    pub factors: Vec<(BinaryForm, u32)>,
    /// Product of the factors.
    pub form: BinaryForm,
    /// `form(x, 1)`.
    pub f: Poly,
    pub case: Option<String>,
    pub lambdas: Vec<Elem>,
    pub recipe: Vec<usize>,
    pub expected_genus: Option<u64>,
    pub notes: Vec<String>,
}

impl CurveEquation {
    /// `y^n = f(x)` with no construction history.
    pub fn from_poly(n: u64, f: Poly) -> Result<CurveEquation, EquationError> {
        let d = f.degree().ok_or(EquationError::ReducibleCurve { n, common: n })?;
        let form = BinaryForm::from_poly(&f, d)?;
        CurveEquation::from_factors(n, vec![(form, 1)])
    }

    pub fn from_factors(n: u64, factors: Vec<(BinaryForm, u32)>) -> Result<CurveEquation, EquationError> {
        if n < 2 {
            return Err(EquationError::BadParams(format!("cover degree {n} < 2")));
        }
        let field = factors
            .first()
            .map(|(h, _)| h.field().clone())
            .ok_or_else(|| EquationError::BadParams("no factors".into()))?;
        let form = factors
            .iter()
            .fold(BinaryForm::constant(&field, field.one()), |acc, (h, m)| acc.mul(&h.pow(*m)));
        let f = form.dehomogenize();
        let curve = CurveEquation {
            n,
            field,
            factors,
            form,
            f,
            case: None,
            lambdas: Vec::new(),
            recipe: Vec::new(),
            expected_genus: None,
            notes: Vec::new(),
        };
        curve.check_irreducible()?;
        Ok(curve)
    }

    /// Multiplicities of the finite roots of `f`, with the degree of each squarefree part.
    fn root_profile(&self) -> Vec<(usize, u32)> {
        self.f.squarefree().into_iter().map(|(h, m)| (h.degree().unwrap_or(0), m)).collect()
    }

    fn check_irreducible(&self) -> Result<(), EquationError> {
        if self.f.is_zero() {
            return Err(EquationError::ReducibleCurve { n: self.n, common: self.n });
        }
        let common = self.root_profile().iter().fold(self.n, |acc, (_, m)| gcd(acc, *m as u64));
        if common != 1 {
            return Err(EquationError::ReducibleCurve { n: self.n, common });
        }
        Ok(())
    }

    /// Form of `f` whose degree is the next multiple of `n`, so that its roots are
    /// exactly the branch points of the cover, ∞ included.
    pub fn branch_form(&self) -> BinaryForm {
        let d = self.f.degree().unwrap_or(0) as u64;
        let full = d.div_ceil(self.n) * self.n;
        BinaryForm::from_poly(&self.f, full as usize).expect("degree fits")
    }

    /// Whether the product form is itself the branch form, i.e. `n` divides its degree.
    pub fn realizable(&self) -> bool {
        self.form.degree() as u64 % self.n == 0
    }

    pub fn lambda_texts(&self) -> Vec<String> {
        self.lambdas.iter().map(|l| self.field.format(l)).collect()
    }

    pub fn to_text(&self) -> String {
        format!("y^{} = {}", self.n, self.f)
    }

    pub fn to_latex(&self) -> String {
        format!("y^{{{}}} = {}", self.n, self.f.to_latex("x"))
    }

    pub fn to_json(&self) -> Value {
        let case = match &self.case {
            Some(c) => c.parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(c.as_str())),
            None => Value::Null,
        };
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|(h, m)| json!({"form": h.to_string(), "multiplicity": m}))
            .collect();
        json!({
            "n": self.n,
            "f": self.f.coeffs().iter().map(|c| self.field.format(c)).collect::<Vec<_>>(),
            "case": case,
            "lambdas": self.lambda_texts(),
            "field": self.field.to_string(),
            "text": self.to_text(),
            "recipe": self.recipe,
            "factors": factors,
            "realizable": self.realizable(),
            "notes": self.notes,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// Deterministic rendering of a curve.
pub fn emit(c: &CurveEquation, format: Format) -> String {
    match format {
        Format::Text => c.to_text(),
        Format::Json => c.to_json().to_string(),
        Format::Latex => c.to_latex(),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn branch_collision(inv: &InvariantFunction, lambda: &Elem) -> Option<String> {
    let f = &inv.group.field;
    inv.branches
        .iter()
        .any(|b| b.value.as_ref() == Some(lambda))
        .then(|| branch_value_text(f, Some(lambda)))
}

/// The generic fiber `Ψ − λΥ` over a non-branch value `λ`.
pub fn fiber_poly(inv: &InvariantFunction, lambda: &Elem) -> Result<BinaryForm, EquationError> {
    if let Some(t) = branch_collision(inv, lambda) {
        return Err(EquationError::BranchValueCollision(t));
    }
    Ok(inv.phi.map_sub(Some(lambda)))
}

/// Genus of `y^n = f(x)` from the root multiplicities of `f` and its degree.
pub fn genus(c: &CurveEquation) -> Result<u64, EquationError> {
    let p = c.field.characteristic();
    if p > 0 && c.n % p == 0 {
        return Err(EquationError::WildCover { n: c.n, p });
    }
    c.check_irreducible()?;
    let n = c.n as i128;
    let mut twice = -2 * n;
    for (deg, m) in c.root_profile() {
        twice += deg as i128 * (n - gcd(c.n, m as u64) as i128);
    }
    let d = c.f.degree().unwrap_or(0) as u64;
    twice += n - gcd(c.n, d) as i128;
    Ok(((twice + 2) / 2) as u64)
}

fn family_notes(inv: &InvariantFunction) -> Vec<String> {
    match inv.group.family {
        Family::D => vec!["printed dihedral equations write the fiber as x^(2m) + lambda*x^m + 1; \
             built as x^(2m) - lambda*x^m + 1, the same family under lambda -> -lambda"
            .to_string()],
        _ => Vec::new(),
    }
}

/// `f = (recipe factors) · ∏ (Ψ − λ_i Υ)` for the given instance.
pub fn build_curve(
    inst: &CaseInstance,
    inv: &InvariantFunction,
    lambdas: &[Elem],
    policy: CountPolicy,
) -> Result<CurveEquation, EquationError> {
    let f = &inv.group.field;
    let expected = inst.fiber_count(policy);
    if lambdas.len() as u64 != expected {
        return Err(EquationError::CountMismatch { expected, got: lambdas.len() });
    }
    for (i, l) in lambdas.iter().enumerate() {
        if lambdas[..i].contains(l) {
            return Err(EquationError::DuplicateLambda(f.format(l)));
        }
    }
    let mut factors = Vec::new();
    for &b in &inst.recipe {
        let branch = inv
            .branches
            .get(b - 1)
            .ok_or_else(|| EquationError::BadParams(format!("recipe names branch {b} of {}", inv.branches.len())))?;
        factors.push((branch.factor.clone(), 1));
    }
    for l in lambdas {
        factors.push((fiber_poly(inv, l)?, 1));
    }
    if factors.is_empty() {
        factors.push((BinaryForm::constant(f, f.one()), 1));
    }
    let mut c = CurveEquation::from_factors(inst.params.n, factors)?;
    c.case = Some(inst.case.clone());
    c.lambdas = lambdas.to_vec();
    c.recipe = inst.recipe.clone();
    c.expected_genus = Some(inst.params.g);
    c.notes = family_notes(inv);
    if !inst.notes.is_empty() {
        c.notes.push(inst.notes.clone());
    }
    if !c.realizable() {
        c.notes.push(format!(
            "form degree {} is not divisible by n = {}; the branch divisor gains or loses infinity",
            c.form.degree(),
            c.n
        ));
    }
    if policy == CountPolicy::Table && inst.fiber_count_offset != 0 {
        c.notes.push(format!(
            "built from the printed count {}; the genus-{} count is {}",
            inst.delta, inst.params.g, inst.trailing
        ));
    }
    Ok(c)
}

/// The invariant of the instance's reduced group over `field`, or over the family's default field.
pub fn instance_invariant(inst: &CaseInstance, field: Option<&Field>) -> Result<InvariantFunction, EquationError> {
    let pr = &inst.params;
    let params = GroupParams { m: pr.m, p: pr.p, t: pr.t, q: pr.q };
    let field = match field {
        Some(f) => f.clone(),
        None => default_field(inst.family, &params)?,
    };
    if field.characteristic() != pr.p {
        return Err(EquationError::BadParams(format!(
            "field {field} has characteristic {}, the instance needs {}",
            field.characteristic(),
            pr.p
        )));
    }
    Ok(build_invariant(&group_preset(inst.family, &params, &field)?)?)
}

/// Largest integer tried by [`generic_lambdas`].
pub const GENERIC_SEARCH_LIMIT: i64 = 1000;

/// The first `count` integers `1, 2, 3, …` whose fibers keep the product squarefree,
/// skipping branch values.
pub fn generic_lambdas(inst: &CaseInstance, inv: &InvariantFunction, count: u64) -> Result<Vec<Elem>, EquationError> {
    let f = &inv.group.field;
    let mut acc = inst.recipe.iter().fold(Poly::one(f), |acc, &b| match inv.branches.get(b - 1) {
        Some(br) => acc.mul(&br.factor.dehomogenize()),
        None => acc,
    });
    let mut out: Vec<Elem> = Vec::new();
    let limit = match f.order() {
        Some(q) => (q as i64).min(GENERIC_SEARCH_LIMIT),
        None => GENERIC_SEARCH_LIMIT,
    };
    for k in 1..limit {
        if out.len() as u64 == count {
            break;
        }
        let l = f.from_i64(k);
        if out.contains(&l) || branch_collision(inv, &l).is_some() {
            continue;
        }
        let next = acc.mul(&inv.phi.map_sub(Some(&l)).dehomogenize());
        if next.is_squarefree() {
            acc = next;
            out.push(l);
        }
    }
    if (out.len() as u64) < count {
        return Err(EquationError::NoGenericLambdas { count });
    }
    Ok(out)
}

/// Which group elements the divisor invariance is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Generators,
    Closure,
}

/// `σ^*F = c_σ·F` for the branch form `F` of the curve.
pub fn verify_divisor_invariance(c: &CurveEquation, maps: &[MoebiusMap]) -> VerifyReport {
    let mut r = VerifyReport::new();
    let form = c.branch_form();
    for (i, s) in maps.iter().enumerate() {
        let pulled = s.pull(&form);
        let ok = pulled.proportion(&form).is_some_and(|k| !c.field.is_zero(&k));
        r.push(format!("invariance[{i}]"), ok, s.to_string());
    }
    r
}

/// Genus, divisor invariance, squarefreeness and the printed-fiber cross-check.
pub fn verify_curve(c: &CurveEquation, inv: &InvariantFunction, expected_g: u64, scope: Scope) -> VerifyReport {
    let mut r = VerifyReport::new();
    match genus(c) {
        Ok(g) => r.push("genus", g == expected_g, format!("genus {g}, expected {expected_g}")),
        Err(e) => r.push("genus", false, e.to_string()),
    }
    let group: &GroupSpec = &inv.group;
    let maps = match scope {
        Scope::Generators => Ok(group.generators.clone()),
        Scope::Closure => group_closure(group, group.expected_order as usize + 1),
    };
    match maps {
        Ok(maps) => r.absorb("", verify_divisor_invariance(c, &maps)),
        Err(e) => r.push("invariance", false, e.to_string()),
    }
    let sf = c.root_profile().iter().all(|(_, m)| *m == 1);
    r.push("squarefree", sf, format!("deg f = {}", c.f.degree().unwrap_or(0)));
    if let Ok(x) = fiber_cross_check(inv) {
        let details = match x.errata.first() {
            None => format!("{} matches at lambda in {{{}}}", x.family, x.lambdas.join(", ")),
            Some(e) => format!(
                "{} coefficients differ, first x^{} at lambda = {}: printed {} computed {}",
                x.errata.len(),
                e.power,
                e.lambda,
                e.printed,
                e.computed
            ),
        };
        r.push("fiber_cross_check", x.passed(), details);
    }
    r
}
