//! Signatures and dimensions of the loci of cyclic curves, read from a
//! declarative case table and checked against a tame Riemann–Hurwitz oracle.

pub mod expr;
pub mod table;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::moebius::Family;

pub use expr::{Env, Expr, ExprError};
pub use table::{CaseRow, CaseTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LociError {
    #[error("dimension {num}/{den} is not an integer")]
    NonIntegral { num: i128, den: i128 },
    #[error("negative dimension {0}")]
    NegativeDimension(i128),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("ramification index {e} is divisible by the characteristic {p}")]
    WildRamification { e: u64, p: u64 },
    #[error("Riemann-Hurwitz fails: 2g - 2 = {lhs} but the signature gives {rhs}")]
    RhInconsistent { lhs: String, rhs: String },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error(transparent)]
    Expr(ExprError),
    #[error(transparent)]
    Table(#[from] TableError),
}

impl From<ExprError> for LociError {
    fn from(e: ExprError) -> LociError {
        match e {
            ExprError::NonIntegral { num, den } => LociError::NonIntegral { num, den },
            other => LociError::Expr(other),
        }
    }
}

/// Parameters of a case instance. `p = 0` is characteristic zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CaseParams {
    pub g: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

/// How many generic fibers a curve uses: the printed dimension, or the count
/// that makes the tame Riemann–Hurwitz count come out right.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountPolicy {
    Table,
    #[default]
    Oracle,
}

impl std::str::FromStr for CountPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<CountPolicy, String> {
        match s {
            "table" => Ok(CountPolicy::Table),
            "oracle" => Ok(CountPolicy::Oracle),
            _ => Err(format!("unknown count policy {s:?}")),
        }
    }
}

/// Position in the family's branch list of each printed signature entry.
pub fn sig_branch(family: Family, table: u8) -> &'static [usize] {
    match (family, table) {
        (Family::C, _) => &[2, 1],
        (Family::D, _) => &[2, 3, 1],
        (Family::A4 | Family::S4, _) => &[1, 2, 3],
        (Family::A5, 3) => &[2, 1],
        (Family::A5, _) => &[3, 1, 2],
        (Family::U, _) => &[1],
        (Family::K | Family::Psl | Family::Pgl, _) => &[2, 1],
    }
}

fn prime_power_exponent(q: u64, p: u64) -> Option<u32> {
    if p < 2 {
        return None;
    }
    let (mut x, mut f) = (q, 0);
    while x > 1 && x % p == 0 {
        x /= p;
        f += 1;
    }
    (x == 1 && f > 0).then_some(f)
}

fn needs(row: &CaseRow, var: &str) -> bool {
    row.uses(var) || (var == "q" && (row.uses("alpha") || row.uses("beta")))
}

/// Variable bindings for a row, before `delta` is known.
pub fn row_env(row: &CaseRow, params: &CaseParams) -> Result<Env, LociError> {
    let mut env = Env::new();
    env.insert("g", params.g as i128);
    env.insert("n", params.n as i128);
    env.insert("p", params.p as i128);
    let want = |var: &str, v: Option<i128>| -> Result<Option<i128>, LociError> {
        match v {
            _ if !needs(row, var) => Ok(None),
            Some(v) => Ok(Some(v)),
            None => Err(LociError::BadParams(format!("case {} needs {var}", row.id))),
        }
    };
    if let Some(m) = want("m", params.m.map(|v| v as i128))? {
        env.insert("m", m);
    }
    if let Some(t) = want("t", params.t.map(|v| v as i128))? {
        env.insert("t", t);
    }
    if let Some(q) = want("q", params.q.map(|v| v as i128))? {
        let f = prime_power_exponent(q as u64, params.p)
            .ok_or_else(|| LociError::BadParams(format!("q = {q} is not a power of p = {}", params.p)))?;
        env.insert("q", q);
        env.insert("f", f as i128);
        env.insert("alpha", q * (q - 1) / 2);
        env.insert("beta", (q + 1) / 2);
    }
    for (var, e) in &row.bind {
        let v = e.eval_int(&env)?;
        env.insert(var, v);
    }
    Ok(env)
}

fn check_applicable(row: &CaseRow, params: &CaseParams, env: &Env) -> Result<(), LociError> {
    if params.g < 2 || params.n < 2 {
        return Err(LociError::BadParams("need g >= 2 and n >= 2".into()));
    }
    if let Some(c) = &row.chars {
        if !c.eval_bool(env)? {
            return Err(LociError::ConstraintViolated(c.to_string()));
        }
    }
    if params.p > 0 && params.n % params.p == 0 {
        return Err(LociError::ConstraintViolated("tame(n)".into()));
    }
    Ok(())
}

fn check_constraints(row: &CaseRow, env: &Env, with_delta: bool) -> Result<(), LociError> {
    for c in row.constraints.iter().filter(|c| c.uses("delta") == with_delta) {
        if !c.eval_bool(env)? {
            return Err(LociError::ConstraintViolated(c.to_string()));
        }
    }
    Ok(())
}

/// The printed dimension of a row at the given parameters.
pub fn delta_formula(row: &CaseRow, params: &CaseParams) -> Result<i128, LociError> {
    let mut env = row_env(row, params)?;
    check_applicable(row, params, &env)?;
    check_constraints(row, &env, false)?;
    let d = row.delta.eval_int(&env)?;
    if d < 0 {
        return Err(LociError::NegativeDimension(d));
    }
    env.insert("delta", d);
    check_constraints(row, &env, true)?;
    Ok(d)
}

fn rh_rhs(entries: &[u64], order: u64) -> Ratio<i128> {
    let sum: Ratio<i128> = entries.iter().map(|&e| Ratio::new(e as i128 - 1, e as i128)).sum();
    Ratio::from_integer(order as i128) * (sum - Ratio::from_integer(2))
}

/// Tame Riemann–Hurwitz dimension `r − 3` of the Hurwitz space with signature `entries`.
pub fn rh_dimension(entries: &[u64], order: u64, g: u64, p: u64) -> Result<i64, LociError> {
    if let Some(e) = entries.iter().find(|&&e| e < 2) {
        return Err(LociError::BadParams(format!("ramification index {e} < 2")));
    }
    if p > 0 {
        if let Some(&e) = entries.iter().find(|&&e| e % p == 0) {
            return Err(LociError::WildRamification { e, p });
        }
    }
    let lhs = Ratio::from_integer(2 * g as i128 - 2);
    let rhs = rh_rhs(entries, order);
    if lhs != rhs {
        return Err(LociError::RhInconsistent { lhs: lhs.to_string(), rhs: rhs.to_string() });
    }
    Ok(entries.len() as i64 - 3)
}

/// Ramification indices of the family's branch list and the order of the reduced group.
pub fn family_branches(row: &CaseRow, env: &Env) -> (Vec<u64>, u64) {
    let v = |k: &str| env.get(k).copied().unwrap_or(0) as u64;
    let (m, p, q) = (v("m"), v("p"), v("q"));
    let pt = if env.contains_key("t") { p.pow(v("t") as u32) } else { 0 };
    match (row.family, row.table) {
        (Family::C, _) => (vec![m, m], m),
        (Family::D, _) => (vec![m, 2, 2], 2 * m),
        (Family::A4, _) => (vec![2, 3, 3], 12),
        (Family::S4, _) => (vec![2, 3, 4], 24),
        (Family::A5, 3) => (vec![5, 6], 60),
        (Family::A5, _) => (vec![3, 5, 2], 60),
        (Family::U, _) => (vec![pt], pt),
        (Family::K, _) => (vec![m, m * pt], m * pt),
        (Family::Psl, _) => (vec![(q + 1) / 2, q * (q - 1) / 2], q * (q * q - 1) / 2),
        (Family::Pgl, _) => (vec![q + 1, q * (q - 1)], q * (q * q - 1)),
    }
}

/// Whether the recipe marks exactly the branches whose signature entry is `n·e`.
pub fn recipe_consistent(row: &CaseRow, params: &CaseParams) -> Result<bool, LociError> {
    let env = row_env(row, params)?;
    let (e, _) = family_branches(row, &env);
    let order = sig_branch(row.family, row.table);
    let n = params.n as i128;
    for (i, s) in row.sig.iter().enumerate() {
        let b = order[i];
        let want = e[b - 1] as i128 * if row.recipe.contains(&b) { n } else { 1 };
        if s.eval_int(&env)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A row evaluated at concrete parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseInstance {
    pub case: String,
    pub family: Family,
    pub table: u8,
    pub params: CaseParams,
    pub delta: i128,
    pub fixed: Vec<u64>,
    /// Number of trailing `n` entries.
    pub trailing: u64,
    /// Trailing count solving the tame Riemann–Hurwitz equation, when tame.
    pub oracle_trailing: Option<u64>,
    pub order: u64,
    pub tame: bool,
    pub dimension_consistent: Option<bool>,
    pub fiber_count_offset: i128,
    pub recipe: Vec<usize>,
    pub label: String,
    pub layout_ambiguous: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl CaseInstance {
    pub fn signature(&self) -> Vec<u64> {
        let mut s = self.fixed.clone();
        s.extend(std::iter::repeat_n(self.params.n, self.trailing as usize));
        s
    }

    /// Generic fiber count used to build a curve under `policy`.
    pub fn fiber_count(&self, policy: CountPolicy) -> u64 {
        match policy {
            CountPolicy::Table => self.delta as u64,
            CountPolicy::Oracle => self.trailing,
        }
    }

    pub fn signature_text(&self) -> String {
        let parts: Vec<String> = self.signature().iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "case {} ({}): g = {}, n = {}",
            self.case, self.family, self.params.g, self.params.n
        );
        if let Some(m) = self.params.m {
            out.push_str(&format!(", m = {m}"));
        }
        if let Some(t) = self.params.t {
            out.push_str(&format!(", t = {t}"));
        }
        if let Some(q) = self.params.q {
            out.push_str(&format!(", q = {q}"));
        }
        out.push_str(&format!(
            ", p = {}; delta = {}; signature {}; |G| = {}",
            self.params.p,
            self.delta,
            self.signature_text(),
            self.order
        ));
        match self.oracle_trailing {
            Some(k) => out.push_str(&format!("; oracle count {k}")),
            None if self.tame => out.push_str("; oracle count not integral"),
            None => out.push_str("; wild, oracle unavailable"),
        }
        if self.fiber_count_offset != 0 {
            out.push_str(&format!("; count offset {:+}", self.fiber_count_offset));
        }
        if self.layout_ambiguous {
            out.push_str("; layout-ambiguous row");
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let parts: Vec<String> = self.signature().iter().map(|e| e.to_string()).collect();
        format!(
            "{} & {} & {} & {} & {} & $({})$ \\\\",
            self.case,
            self.family,
            self.params.g,
            self.params.n,
            self.delta,
            parts.join(", ")
        )
    }
}

/// Solves the tame Riemann–Hurwitz equation for the number of trailing `n` entries.
fn oracle_trailing(fixed: &[u64], n: u64, order: u64, g: u64) -> Option<u64> {
    let base = rh_rhs(fixed, order);
    let per = Ratio::new(order as i128 * (n as i128 - 1), n as i128);
    let k = (Ratio::from_integer(2 * g as i128 - 2) - base) / per;
    (k.is_integer() && k >= Ratio::from_integer(0) && fixed.len() as i128 + k.to_integer() >= 3)
        .then(|| k.to_integer() as u64)
}

fn instantiate(row: &CaseRow, params: &CaseParams, env: &Env, delta: i128) -> Result<CaseInstance, LociError> {
    let fixed = row
        .sig
        .iter()
        .map(|e| {
            let v = e.eval_int(env)?;
            u64::try_from(v).ok().filter(|v| *v >= 2).ok_or_else(|| LociError::BadParams(format!("signature entry {v}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (_, gbar) = family_branches(row, env);
    let order = params.n * gbar;
    let tame = params.p == 0 || fixed.iter().all(|e| e % params.p != 0);
    let oracle = if tame { oracle_trailing(&fixed, params.n, order, params.g) } else { None };
    let documented = delta + 3 - fixed.len() as i128;
    let trailing = oracle.map(|k| k as i128).unwrap_or(documented).max(0) as u64;
    Ok(CaseInstance {
        case: row.id.clone(),
        family: row.family,
        table: row.table,
        params: params.clone(),
        delta,
        oracle_trailing: oracle,
        dimension_consistent: oracle.map(|k| fixed.len() as i128 + k as i128 - 3 == delta),
        fiber_count_offset: trailing as i128 - delta,
        fixed,
        trailing,
        order,
        tame,
        recipe: row.recipe.clone(),
        label: row.label.clone(),
        layout_ambiguous: row.layout_ambiguous,
        notes: row.notes.clone(),
    })
}

/// Full signature and bookkeeping for a row at the given parameters.
pub fn signature_of_case(row: &CaseRow, params: &CaseParams) -> Result<CaseInstance, LociError> {
    let delta = delta_formula(row, params)?;
    let env = row_env(row, params)?;
    instantiate(row, params, &env, delta)
}

/// Search box for [`enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_n: u64,
    pub max_m: u64,
    pub max_pt: u64,
    pub max_q: u64,
}

impl Bounds {
    /// A box large enough to contain every instance of genus `g`.
    pub fn for_genus(g: u64) -> Bounds {
        let b = 2 * g + 2;
        Bounds { max_n: b, max_m: b, max_pt: b, max_q: b }
    }
}

fn prime_powers(p: u64, max: u64) -> Vec<u32> {
    let mut out = Vec::new();
    if p < 2 {
        return out;
    }
    let (mut v, mut e) = (p, 1u32);
    while v <= max {
        out.push(e);
        v = match v.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
        e += 1;
    }
    out
}

/// Parameter grid for a row at genus `g`, in (n, m, t, q) order.
fn grid(row: &CaseRow, g: u64, p: u64, b: &Bounds) -> Vec<CaseParams> {
    let ms: Vec<Option<u64>> = if needs(row, "m") { (2..=b.max_m).map(Some).collect() } else { vec![None] };
    let ts: Vec<Option<u32>> = if needs(row, "t") { prime_powers(p, b.max_pt).into_iter().map(Some).collect() } else { vec![None] };
    let qs: Vec<Option<u64>> = if needs(row, "q") {
        prime_powers(p, b.max_q).into_iter().map(|f| Some(p.pow(f))).filter(|q| q.unwrap() >= 3).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for n in 2..=b.max_n {
        for &m in &ms {
            for &t in &ts {
                for &q in &qs {
                    out.push(CaseParams { g, n, m, p, t, q });
                }
            }
        }
    }
    out
}

/// Every admissible instance of genus `g` in characteristic `p` inside `bounds`,
/// ordered by table row, then n, then m.
pub fn enumerate(table: &CaseTable, g: u64, p: u64, bounds: &Bounds) -> Vec<CaseInstance> {
    table
        .rows
        .par_iter()
        .map(|row| {
            grid(row, g, p, bounds)
                .into_iter()
                .filter_map(|params| signature_of_case(row, &params).ok())
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FlagKind {
    /// The printed dimension and the oracle disagree.
    DimensionMismatch,
    /// Dimensions agree but the trailing count differs from the printed dimension.
    FiberCountOffset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub case: String,
    pub params: CaseParams,
    pub kind: FlagKind,
    /// Printed value, or the reason it does not evaluate.
    pub printed: String,
    pub oracle_dimension: Option<i64>,
    pub oracle_trailing: Option<u64>,
    /// Dimension formula consistent with the oracle at these parameters.
    pub consistent_formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlaggedRow {
    pub case: String,
    pub kinds: Vec<FlagKind>,
    pub count: usize,
    pub layout_ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub case: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconcileReport {
    pub p: u64,
    pub g_max: u64,
    pub bounds: Bounds,
    pub checked: usize,
    pub rows: Vec<FlaggedRow>,
    /// Rows the oracle cannot judge.
    pub skipped: Vec<Skipped>,
    pub flags: Vec<Flag>,
}

fn gcd_i(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i(b, a % b)
    }
}

/// `(2(g+n−1) − A(n−1))/(N(n−1)) + r₀ − 3` in lowest terms, where `A` sums
/// `N/e` over the branches whose entry is multiplied by `n`.
pub fn consistent_formula(row: &CaseRow, env: &Env) -> String {
    let (e, gbar) = family_branches(row, env);
    let a: i128 = row.recipe.iter().map(|&b| gbar as i128 / e[b - 1] as i128).sum();
    let big_n = gbar as i128;
    let c = a - 2;
    let d = [2, c, big_n].iter().fold(0, |acc, v| gcd_i(acc, *v));
    let (gc, cc, nn) = (2 / d, c / d, big_n / d);
    let coef = |c: i128, v: &str| if c == 1 { v.to_string() } else { format!("{c}*{v}") };
    let numer = match cc {
        0 => coef(gc, "g"),
        c if c > 0 => format!("({} - {} + {c})", coef(gc, "g"), coef(c, "n")),
        c => format!("({} + {} - {})", coef(gc, "g"), coef(-c, "n"), -c),
    };
    let denom = if nn == 1 { "(n-1)".to_string() } else { format!("({nn}*(n-1))") };
    let mut s = format!("{numer}/{denom}");
    let off = row.sig.len() as i128 - 3;
    if off != 0 {
        s.push_str(&format!(" {} {}", if off < 0 { "-" } else { "+" }, off.abs()));
    }
    s
}

/// Compares printed dimensions with the tame oracle for `2 ≤ g ≤ g_max` over the bound box.
pub fn reconcile(table: &CaseTable, g_max: u64, p: u64, bounds: &Bounds) -> ReconcileReport {
    let per_row: Vec<(Vec<Flag>, usize, Option<String>)> = table
        .rows
        .par_iter()
        .map(|row| {
            let mut flags = Vec::new();
            let mut checked = 0;
            let mut wild_seen = false;
            for g in 2..=g_max {
                for params in grid(row, g, p, bounds) {
                    let Ok(mut env) = row_env(row, &params) else { continue };
                    if check_applicable(row, &params, &env).is_err() || check_constraints(row, &env, false).is_err() {
                        continue;
                    }
                    let Ok(fixed) = row.sig.iter().map(|e| e.eval_int(&env)).collect::<Result<Vec<_>, _>>() else {
                        continue;
                    };
                    if p > 0 && fixed.iter().any(|e| e % p as i128 == 0) {
                        wild_seen = true;
                        continue;
                    }
                    let fixed: Vec<u64> = fixed.iter().map(|&e| e as u64).collect();
                    let (_, gbar) = family_branches(row, &env);
                    let oracle = oracle_trailing(&fixed, params.n, params.n * gbar, g);
                    let odim = oracle.map(|k| fixed.len() as i64 + k as i64 - 3);
                    let raw = row.delta.eval_int(&env);
                    let printed = match &raw {
                        Ok(d) if *d >= 0 => {
                            env.insert("delta", *d);
                            check_constraints(row, &env, true).is_ok().then_some(*d)
                        }
                        _ => None,
                    };
                    if printed.is_none() {
                        match odim {
                            Some(od) => {
                                env.insert("delta", od as i128);
                                if check_constraints(row, &env, true).is_err() {
                                    continue;
                                }
                            }
                            None => continue,
                        }
                    }
                    checked += 1;
                    let kind = match (printed, odim) {
                        (Some(d), Some(od)) if d != od as i128 => Some(FlagKind::DimensionMismatch),
                        (Some(d), Some(_)) if oracle.unwrap() as i128 != d => Some(FlagKind::FiberCountOffset),
                        (Some(_), Some(_)) => None,
                        _ => Some(FlagKind::DimensionMismatch),
                    };
                    if let Some(kind) = kind {
                        let printed = match raw {
                            Ok(d) => d.to_string(),
                            Err(e) => LociError::from(e).to_string(),
                        };
                        flags.push(Flag {
                            case: row.id.clone(),
                            params,
                            kind,
                            printed,
                            oracle_dimension: odim,
                            oracle_trailing: oracle,
                            consistent_formula: consistent_formula(row, &env),
                        });
                    }
                }
            }
            let skip = wild_seen.then(|| row.id.clone());
            (flags, checked, skip)
        })
        .collect();
    let mut flags = Vec::new();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut checked = 0;
    for ((f, c, skip), row) in per_row.into_iter().zip(&table.rows) {
        checked += c;
        if let Some(id) = skip {
            skipped.push(Skipped { case: id, reason: "wild ramification: oracle unavailable".to_string() });
        }
        if !f.is_empty() {
            let mut kinds: Vec<FlagKind> = f.iter().map(|x| x.kind).collect();
            kinds.sort();
            kinds.dedup();
            rows.push(FlaggedRow { case: row.id.clone(), kinds, count: f.len(), layout_ambiguous: row.layout_ambiguous });
        }
        flags.extend(f);
    }
    ReconcileReport { p, g_max, bounds: *bounds, checked, rows, skipped, flags }
}

impl ReconcileReport {
    pub fn flagged_cases(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.case.as_str()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "reconcile: p = {}, g <= {}, n <= {}, m <= {}; {} instances checked\n",
            self.p, self.g_max, self.bounds.max_n, self.bounds.max_m, self.checked
        );
        for r in &self.rows {
            let kinds: Vec<String> = r.kinds.iter().map(|k| format!("{k:?}")).collect();
            let first = self.flags.iter().find(|f| f.case == r.case).unwrap();
            out.push_str(&format!(
                "FLAG case {}: {} ({} instances); e.g. g = {}, n = {}: printed {}, oracle dimension {}, count {}; consistent formula {}\n",
                r.case,
                kinds.join(", "),
                r.count,
                first.params.g,
                first.params.n,
                first.printed,
                first.oracle_dimension.map(|d| d.to_string()).unwrap_or_else(|| "none".into()),
                first.oracle_trailing.map(|d| d.to_string()).unwrap_or_else(|| "none".into()),
                first.consistent_formula
            ));
        }
        for s in &self.skipped {
            out.push_str(&format!("SKIP case {}: {}\n", s.case, s.reason));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: u64, n: u64, m: Option<u64>) -> CaseParams {
        CaseParams { g, n, m, ..CaseParams::default() }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(rh_dimension(&[2, 3, 3, 2], 24, 5, 0), Ok(1));
        assert_eq!(rh_dimension(&[2, 2, 2, 2, 2], 4, 2, 0), Ok(2));
        assert_eq!(rh_dimension(&[3, 3, 3], 3, 1, 3), Err(LociError::WildRamification { e: 3, p: 3 }));
        assert!(matches!(rh_dimension(&[2, 2, 2, 2, 2], 4, 3, 0), Err(LociError::RhInconsistent { .. })));
    }

    #[test]
    fn consistent_formula_for_row_21() {
        let t = CaseTable::embedded();
        let row = t.get("21").unwrap();
        let env = row_env(row, &params(9, 2, None)).unwrap();
        assert_eq!(consistent_formula(row, &env), "(g - 9*n + 9)/(12*(n-1))");
        let row = t.get("1").unwrap();
        let env = row_env(row, &params(2, 2, Some(2))).unwrap();
        assert_eq!(consistent_formula(row, &env), "(g + n - 1)/(n-1) - 1");
    }
}
