//! Reference fiber polynomials for the polyhedral families, kept verbatim so
//! the computed fibers can be checked against them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::invariants::InvariantFunction;
use crate::moebius::Family;
use crate::poly::BinaryForm;

use super::EquationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrintedFamily {
    A4,
    S4,
    A5,
    /// The icosahedral family in characteristic 3.
    A5p3,
}

impl PrintedFamily {
    pub fn of(inv: &InvariantFunction) -> Result<PrintedFamily, EquationError> {
        let g = &inv.group;
        match g.family {
            Family::A4 => Ok(PrintedFamily::A4),
            Family::S4 => Ok(PrintedFamily::S4),
            Family::A5 if g.field.characteristic() == 3 => Ok(PrintedFamily::A5p3),
            Family::A5 => Ok(PrintedFamily::A5),
            other => Err(EquationError::UnknownFamily(other.to_string())),
        }
    }

    pub fn degree(self) -> usize {
        match self {
            PrintedFamily::A4 => 12,
            PrintedFamily::S4 => 24,
            PrintedFamily::A5 | PrintedFamily::A5p3 => 60,
        }
    }
}

impl fmt::Display for PrintedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrintedFamily::A4 => "A4",
            PrintedFamily::S4 => "S4",
            PrintedFamily::A5 => "A5",
            PrintedFamily::A5p3 => "A5p3",
        })
    }
}

impl FromStr for PrintedFamily {
    type Err = EquationError;

    fn from_str(s: &str) -> Result<PrintedFamily, EquationError> {
        match s {
            "A4" => Ok(PrintedFamily::A4),
            "S4" => Ok(PrintedFamily::S4),
            "A5" => Ok(PrintedFamily::A5),
            "A5p3" => Ok(PrintedFamily::A5p3),
            _ => Err(EquationError::UnknownFamily(s.to_string())),
        }
    }
}

/// `(power of x, constant, coefficient of λ)`.
const A4: &[(usize, i64, i64)] = &[(12, 1, 0), (10, 0, -1), (8, -33, 0), (6, 0, 2), (4, -33, 0), (2, 0, -1), (0, 1, 0)];

const S4: &[(usize, i64, i64)] = &[
    (24, 1, 0),
    (20, 0, 1),
    (16, 759, -4),
    (12, 2456, 6),
    (8, 759, -4),
    (4, 0, 1),
    (0, 1, 0),
];

const A5: &[(usize, i64, i64)] = &[
    (60, -1, 0),
    (55, 684, -1),
    (50, -157434, -55),
    (45, 12527460, -1205),
    (40, -77460495, -13090),
    (35, 130689144, -69585),
    (30, 33211924, -134761),
    (25, -130689144, 69585),
    (20, -77460495, -13090),
    (15, -12527460, 1205),
    (10, -157434, -55),
    (5, -684, 1),
    (0, -1, 0),
];

/// `(power of x, constant, constant·i, λ, λ·i)` with `i² = −1`.
const A5P3: &[(usize, i64, i64, i64, i64)] = &[
    (60, 1, 0, 0, 0),
    (55, 0, 0, 1, 0),
    (50, -6, 0, 0, -10),
    (45, 0, 0, 35, 0),
    (40, 15, 0, 0, 40),
    (35, 0, 0, 30, 0),
    (30, -20, 0, 0, 68),
    (25, 0, 0, 30, 0),
    (20, 15, 0, 0, 40),
    (15, 0, 0, 35, 0),
    (10, -6, 0, 0, -10),
    (5, 0, 0, -1, 0),
    (0, 1, 0, 0, 0),
];

/// Printed coefficients as `(constant, λ-coefficient)` pairs indexed by power of x.
fn printed_pencil(family: PrintedFamily, field: &Field) -> Result<Vec<(Elem, Elem)>, EquationError> {
    let d = family.degree();
    let mut out = vec![(field.zero(), field.zero()); d + 1];
    match family {
        PrintedFamily::A5p3 => {
            let i = field.root_of_unity(4)?;
            let c = |re: i64, im: i64| field.add(&field.from_i64(re), &field.mul(&field.from_i64(im), &i));
            for &(k, cr, ci, lr, li) in A5P3 {
                out[k] = (c(cr, ci), c(lr, li));
            }
        }
        _ => {
            let data = match family {
                PrintedFamily::A4 => A4,
                PrintedFamily::S4 => S4,
                _ => A5,
            };
            for &(k, c, l) in data {
                out[k] = (field.from_i64(c), field.from_i64(l));
            }
        }
    }
    Ok(out)
}

/// The printed fiber polynomial at `λ`, as a form of the family's degree.
pub fn printed_fiber_poly(family: PrintedFamily, field: &Field, lambda: &Elem) -> Result<BinaryForm, EquationError> {
    let coeffs = printed_pencil(family, field)?
        .into_iter()
        .map(|(c, l)| field.add(&c, &field.mul(&l, lambda)))
        .collect();
    Ok(BinaryForm::new(field, coeffs))
}

/// One coefficient where the computed and printed fibers differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub family: PrintedFamily,
    pub lambda: String,
    pub power: usize,
    pub printed: String,
    pub computed: String,
}

/// An affine change `μ = a + bλ` of the printed parameter that best explains
/// the printed family, with the coefficients it still leaves unexplained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reparametrization {
    pub a: String,
    pub b: String,
    pub residual: Vec<Erratum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub family: PrintedFamily,
    pub lambdas: Vec<String>,
    pub errata: Vec<Erratum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reparametrization: Option<Reparametrization>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.errata.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "fiber cross-check {} at lambda in {{{}}}: {} mismatching coefficients\n",
            self.family,
            self.lambdas.join(", "),
            self.errata.len()
        );
        for e in &self.errata {
            out.push_str(&format!(
                "ERRATUM {} lambda = {}: x^{} printed {} computed {}\n",
                e.family, e.lambda, e.power, e.printed, e.computed
            ));
        }
        if let Some(r) = &self.reparametrization {
            out.push_str(&format!("printed parameter = {} + ({})*lambda", r.a, r.b));
            if r.residual.is_empty() {
                out.push_str("; no residual mismatch\n");
            } else {
                out.push_str(":\n");
                for e in &r.residual {
                    out.push_str(&format!(
                        "ERRATUM {} after reparametrization, lambda = {}: x^{} printed {} expected {}\n",
                        e.family, e.lambda, e.power, e.printed, e.computed
                    ));
                }
            }
        }
        out
    }
}

/// Points at which both pencils are compared; two points certify a degree-one identity.
pub const CROSS_CHECK_LAMBDAS: [i64; 2] = [0, 1];

/// Compares the pencil `Ψ − λΥ` with the printed fiber coefficient by coefficient.
pub fn fiber_cross_check(inv: &InvariantFunction) -> Result<CrossCheck, EquationError> {
    let family = PrintedFamily::of(inv)?;
    let f = &inv.group.field;
    let printed = printed_pencil(family, f)?;
    let num = inv.phi.num_form();
    let den = inv.phi.den_form();
    if num.degree() != family.degree() {
        return Err(EquationError::UnknownFamily(format!("{family} of degree {}", num.degree())));
    }
    let computed: Vec<(Elem, Elem)> =
        (0..=family.degree()).map(|k| (num.coeff(k).clone(), f.neg(den.coeff(k)))).collect();
    let compare = |pr: &dyn Fn(usize, &Elem) -> Elem| -> Vec<Erratum> {
        let mut out = Vec::new();
        for l in CROSS_CHECK_LAMBDAS {
            let lam = f.from_i64(l);
            for k in (0..=family.degree()).rev() {
                let want = f.add(&computed[k].0, &f.mul(&computed[k].1, &lam));
                let got = pr(k, &lam);
                if want != got {
                    out.push(Erratum {
                        family,
                        lambda: l.to_string(),
                        power: k,
                        printed: f.format(&got),
                        computed: f.format(&want),
                    });
                }
            }
        }
        out
    };
    let errata = compare(&|k, lam| f.add(&printed[k].0, &f.mul(&printed[k].1, lam)));
    let reparametrization = if errata.is_empty() { None } else { best_reparametrization(f, &printed, &computed, &compare) };
    Ok(CrossCheck {
        family,
        lambdas: CROSS_CHECK_LAMBDAS.iter().map(|l| l.to_string()).collect(),
        errata,
        reparametrization,
    })
}

/// Tries each coefficient with a nonzero printed λ-part as the anchor for `μ = a + bλ`
/// and keeps the change leaving the fewest residual mismatches; ties go to the highest power.
fn best_reparametrization(
    f: &Field,
    printed: &[(Elem, Elem)],
    computed: &[(Elem, Elem)],
    compare: &dyn Fn(&dyn Fn(usize, &Elem) -> Elem) -> Vec<Erratum>,
) -> Option<Reparametrization> {
    let mut best: Option<Reparametrization> = None;
    for k in (0..printed.len()).rev() {
        let (u, v) = &printed[k];
        if f.is_zero(v) {
            continue;
        }
        let (s, t) = &computed[k];
        let a = f.div(&f.sub(s, u), v).ok()?;
        let b = f.div(t, v).ok()?;
        if f.is_zero(&b) {
            continue;
        }
        let residual = compare(&|j, lam| {
            let mu = f.add(&a, &f.mul(&b, lam));
            f.add(&printed[j].0, &f.mul(&printed[j].1, &mu))
        });
        if best.as_ref().is_none_or(|r| residual.len() < r.residual.len()) {
            best = Some(Reparametrization { a: f.format(&a), b: f.format(&b), residual });
        }
    }
    best
}
