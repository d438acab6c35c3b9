//! `ccforge`: invariants, case tables, curve equations and their verification.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ccforge_core::equations::{
    build_curve, generic_lambdas, genus, instance_invariant, verify_curve, CurveEquation, Scope,
};
use ccforge_core::field::{parse_field_spec, Field};
use ccforge_core::invariants::{build_invariant, verify, InvariantFunction};
use ccforge_core::loci::{
    delta_formula, enumerate, reconcile, signature_of_case, Bounds, CaseInstance, CaseParams, CaseTable,
    CountPolicy,
};
use ccforge_core::moebius::{default_field, group_preset, Family, GroupParams};
use ccforge_core::poly::Poly;
use ccforge_core::report::VerifyReport;

#[derive(Parser)]
#[command(name = "ccforge", version, about = "Cyclic curves with prescribed reduced automorphism group")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Invariant rational function of a reduced group and its branch data
    Invariant(InvariantArgs),
    /// All case instances of a given genus
    Cases(CasesArgs),
    /// Printed dimension of a case
    Delta(CaseArgs),
    /// Signature of a case instance
    Signature(CaseArgs),
    /// Equation of a curve in a case
    Curve(CurveArgs),
    /// Verify a curve against the full group
    Verify(VerifyArgs),
    /// Compare printed dimensions with the Riemann-Hurwitz count
    Reconcile(ReconcileArgs),
}

#[derive(Args, Clone, Default)]
struct Params {
    #[arg(long)]
    m: Option<u64>,
    /// Characteristic (0 by default)
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Clone, Copy, Default)]
struct Output {
    #[arg(long, conflicts_with = "latex")]
    json: bool,
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    out: Output,
    /// Write the output here instead of standard out
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArg {
    /// Case table replacing the embedded one
    #[arg(long, value_name = "PATH")]
    case_table: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantArgs {
    #[arg(long)]
    family: String,
    #[command(flatten)]
    params: Params,
    /// Field descriptor such as `Q(i)`, `Q(zeta5)` or `GF(3^2)`
    #[arg(long, value_name = "SPEC")]
    field: Option<String>,
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    max_n: Option<u64>,
    #[arg(long)]
    max_m: Option<u64>,
    #[arg(long)]
    max_pt: Option<u64>,
    #[arg(long)]
    max_q: Option<u64>,
}

#[derive(Args)]
struct CasesArgs {
    #[arg(long)]
    g: u64,
    #[arg(long, default_value_t = 0)]
    p: u64,
    #[command(flatten)]
    bounds: BoundArgs,
    #[command(flatten)]
    table: TableArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long = "case", value_name = "ID")]
    case: String,
    #[arg(long)]
    g: u64,
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    table: TableArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Table,
    Oracle,
}

#[derive(Args)]
struct CurveOpts {
    /// Branch parameters, comma separated
    #[arg(long, value_name = "CSV", conflicts_with = "generic", allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Pick small distinct integers as branch parameters
    #[arg(long)]
    generic: bool,
    #[arg(long, value_name = "SPEC")]
    field: Option<String>,
    #[arg(long, value_enum, default_value = "oracle")]
    count_policy: Policy,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[command(flatten)]
    curve: CurveOpts,
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "case", value_name = "ID", required_unless_present = "coeffs", conflicts_with = "coeffs")]
    case: Option<String>,
    /// Coefficients of f, lowest degree first
    #[arg(long, value_name = "CSV", requires = "family", allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    g: u64,
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    curve: CurveOpts,
    #[command(flatten)]
    table: TableArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReconcileArgs {
    #[arg(long, default_value_t = 30)]
    g_max: u64,
    #[arg(long, default_value_t = 0)]
    p: u64,
    #[command(flatten)]
    bounds: BoundArgs,
    #[command(flatten)]
    table: TableArg,
    #[command(flatten)]
    common: Common,
}

/// Bounds used by `reconcile` unless overridden.
const RECONCILE_BOUNDS: Bounds = Bounds { max_n: 5, max_m: 6, max_pt: 27, max_q: 27 };

struct Failure {
    code: String,
    message: String,
}

fn code_of<E: std::fmt::Debug + std::fmt::Display>(e: &E) -> Failure {
    let dbg = format!("{e:?}");
    let code: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
    Failure { code, message: e.to_string() }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: "InvalidInput".into(), message: msg.into() }
}

/// Rendered output and whether every verification passed.
struct Rendered {
    body: String,
    ok: bool,
}

fn done(body: String) -> Result<Rendered, Failure> {
    Ok(Rendered { body, ok: true })
}

fn json_doc(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn load_table(t: &TableArg) -> Result<CaseTable, Failure> {
    match &t.case_table {
        Some(p) => CaseTable::load(p).map_err(|e| code_of(&e)),
        None => Ok(CaseTable::embedded()),
    }
}

fn parse_field(spec: &str) -> Result<Field, Failure> {
    parse_field_spec(spec).map_err(|e| code_of(&e))
}

fn parse_elems(field: &Field, csv: &str) -> Result<Vec<ccforge_core::field::Elem>, Failure> {
    csv.split(',').map(|s| field.parse(s.trim()).map_err(|e| code_of(&e))).collect()
}

fn report_json(r: &VerifyReport) -> Value {
    json!({"passed": r.passed(), "checks": r.checks})
}

fn resolve_field(spec: Option<&str>, p: Option<u64>) -> Result<Option<Field>, Failure> {
    let Some(spec) = spec else { return Ok(None) };
    let f = parse_field(spec)?;
    if let Some(p) = p {
        if f.characteristic() != p {
            return Err(invalid(format!("field {f} has characteristic {}, not {p}", f.characteristic())));
        }
    }
    Ok(Some(f))
}

fn group_invariant(family: &str, params: &Params, field: Option<&str>) -> Result<InvariantFunction, Failure> {
    let family: Family = family.parse().map_err(|e| code_of(&e))?;
    let field = resolve_field(field, params.p)?;
    let p = field.as_ref().map(|f| f.characteristic()).or(params.p).unwrap_or(0);
    let gp = GroupParams { m: params.m, p, t: params.t, q: params.q };
    let field = match field {
        Some(f) => f,
        None => default_field(family, &gp).map_err(|e| code_of(&e))?,
    };
    let spec = group_preset(family, &gp, &field).map_err(|e| code_of(&e))?;
    build_invariant(&spec).map_err(|e| code_of(&e))
}

fn run_invariant(a: &InvariantArgs) -> Result<Rendered, Failure> {
    if a.common.out.latex {
        return Err(invalid("--latex is not available for invariant"));
    }
    let inv = group_invariant(&a.family, &a.params, a.field.as_deref())?;
    let report = a.verify.then(|| verify(&inv));
    let ok = report.as_ref().is_none_or(|r| r.passed());
    let body = if a.common.out.json { json_doc(&inv.to_json(report.as_ref())) } else { inv.to_text(report.as_ref()) };
    Ok(Rendered { body, ok })
}

fn bounds(b: &BoundArgs, default: Bounds) -> Bounds {
    Bounds {
        max_n: b.max_n.unwrap_or(default.max_n),
        max_m: b.max_m.unwrap_or(default.max_m),
        max_pt: b.max_pt.unwrap_or(default.max_pt),
        max_q: b.max_q.unwrap_or(default.max_q),
    }
}

fn run_cases(a: &CasesArgs) -> Result<Rendered, Failure> {
    if a.g < 2 {
        return Err(invalid("--g must be at least 2"));
    }
    let table = load_table(&a.table)?;
    let b = bounds(&a.bounds, Bounds::for_genus(a.g));
    let all = enumerate(&table, a.g, a.p, &b);
    let out = a.common.out;
    let body = if out.json {
        json_doc(&json!({"g": a.g, "p": a.p, "bounds": b, "instances": all.iter().map(instance_json).collect::<Vec<_>>()}))
    } else {
        let lines: Vec<String> = all.iter().map(|i| if out.latex { i.to_latex() } else { i.to_text() }).collect();
        lines.join("\n") + "\n"
    };
    done(body)
}

fn case_params(a: &CaseArgs) -> CaseParams {
    let p = &a.params;
    CaseParams { g: a.g, n: a.n, m: p.m, p: p.p.unwrap_or(0), t: p.t, q: p.q }
}

fn instance_json(i: &CaseInstance) -> Value {
    let mut v = serde_json::to_value(i).expect("instances serialize");
    v["signature"] = json!(i.signature());
    v
}

fn resolve_instance(a: &CaseArgs, p_override: Option<u64>) -> Result<CaseInstance, Failure> {
    let table = load_table(&a.table)?;
    let row = table.get(&a.case).ok_or_else(|| code_of(&ccforge_core::loci::LociError::UnknownCase(a.case.clone())))?;
    let mut params = case_params(a);
    if let Some(p) = p_override {
        params.p = p;
    }
    signature_of_case(row, &params).map_err(|e| code_of(&e))
}

fn run_delta(a: &CaseArgs) -> Result<Rendered, Failure> {
    if a.common.out.latex {
        return Err(invalid("--latex is not available for delta"));
    }
    let table = load_table(&a.table)?;
    let row = table.get(&a.case).ok_or_else(|| code_of(&ccforge_core::loci::LociError::UnknownCase(a.case.clone())))?;
    let params = case_params(a);
    let d = delta_formula(row, &params).map_err(|e| code_of(&e))?;
    let body = if a.common.out.json {
        json_doc(&json!({"case": row.id, "params": params, "formula": row.delta.to_string(), "delta": d}))
    } else {
        format!("{d}\n")
    };
    done(body)
}

fn run_signature(a: &CaseArgs) -> Result<Rendered, Failure> {
    let inst = resolve_instance(a, None)?;
    let out = a.common.out;
    let body = if out.json {
        json_doc(&instance_json(&inst))
    } else if out.latex {
        inst.to_latex() + "\n"
    } else {
        inst.to_text() + "\n"
    };
    done(body)
}

fn policy(p: Policy) -> CountPolicy {
    match p {
        Policy::Table => CountPolicy::Table,
        Policy::Oracle => CountPolicy::Oracle,
    }
}

fn curve_for(a: &CaseArgs, o: &CurveOpts) -> Result<(CaseInstance, InvariantFunction, CurveEquation), Failure> {
    let field = resolve_field(o.field.as_deref(), a.params.p)?;
    let inst = resolve_instance(a, field.as_ref().map(|f| f.characteristic()))?;
    let inv = instance_invariant(&inst, field.as_ref()).map_err(|e| code_of(&e))?;
    let pol = policy(o.count_policy);
    let count = inst.fiber_count(pol);
    let lambdas = match (&o.lambda, o.generic) {
        (Some(csv), _) => parse_elems(&inv.group.field, csv)?,
        (None, true) => generic_lambdas(&inst, &inv, count).map_err(|e| code_of(&e))?,
        (None, false) if count == 0 => Vec::new(),
        (None, false) => return Err(invalid(format!("case needs {count} branch parameters: pass --lambda or --generic"))),
    };
    let c = build_curve(&inst, &inv, &lambdas, pol).map_err(|e| code_of(&e))?;
    Ok((inst, inv, c))
}

fn render_curve(c: &CurveEquation, pol: Policy, report: Option<&VerifyReport>, out: Output) -> String {
    let g = genus(c).ok();
    if out.json {
        let mut v = c.to_json();
        v["genus"] = json!(g);
        v["expected_genus"] = json!(c.expected_genus);
        v["count_policy"] = json!(match pol {
            Policy::Table => "table",
            Policy::Oracle => "oracle",
        });
        if let Some(r) = report {
            v["report"] = report_json(r);
        }
        return json_doc(&v);
    }
    if out.latex {
        return c.to_latex() + "\n";
    }
    let mut s = c.to_text() + "\n";
    if let Some(g) = g {
        s.push_str(&format!("genus: {g}\n"));
    }
    for n in &c.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    if let Some(r) = report {
        s.push_str(&r.to_text());
    }
    s
}

fn run_curve(a: &CurveArgs) -> Result<Rendered, Failure> {
    let (inst, inv, c) = curve_for(&a.case, &a.curve)?;
    let report = a.verify.then(|| verify_curve(&c, &inv, inst.params.g, Scope::Generators));
    let ok = report.as_ref().is_none_or(|r| r.passed());
    Ok(Rendered { body: render_curve(&c, a.curve.count_policy, report.as_ref(), a.case.common.out), ok })
}

fn run_verify(a: &VerifyArgs) -> Result<Rendered, Failure> {
    let (inv, c) = match (&a.case, &a.coeffs) {
        (Some(case), None) => {
            let ca = CaseArgs {
                case: case.clone(),
                g: a.g,
                n: a.n,
                params: a.params.clone(),
                table: TableArg { case_table: a.table.case_table.clone() },
                common: Common { out: a.common.out, output: None },
            };
            let (_, inv, c) = curve_for(&ca, &a.curve)?;
            (inv, c)
        }
        (None, Some(csv)) => {
            let family = a.family.as_deref().ok_or_else(|| invalid("--coeffs needs --family"))?;
            let inv = group_invariant(family, &a.params, a.curve.field.as_deref())?;
            let f = &inv.group.field;
            let poly = Poly::new(f, parse_elems(f, csv)?);
            let c = CurveEquation::from_poly(a.n, poly).map_err(|e| code_of(&e))?;
            (inv, c)
        }
        _ => return Err(invalid("pass exactly one of --case and --coeffs")),
    };
    let report = verify_curve(&c, &inv, a.g, Scope::Closure);
    let ok = report.passed();
    Ok(Rendered { body: render_curve(&c, a.curve.count_policy, Some(&report), a.common.out), ok })
}

fn run_reconcile(a: &ReconcileArgs) -> Result<Rendered, Failure> {
    if a.common.out.latex {
        return Err(invalid("--latex is not available for reconcile"));
    }
    let table = load_table(&a.table)?;
    let r = reconcile(&table, a.g_max, a.p, &bounds(&a.bounds, RECONCILE_BOUNDS));
    let body = if a.common.out.json {
        json_doc(&serde_json::to_value(&r).expect("reports serialize"))
    } else {
        r.to_text()
    };
    done(body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.verb {
        Verb::Invariant(a) => (&a.common, run_invariant(a)),
        Verb::Cases(a) => (&a.common, run_cases(a)),
        Verb::Delta(a) => (&a.common, run_delta(a)),
        Verb::Signature(a) => (&a.common, run_signature(a)),
        Verb::Curve(a) => (&a.case.common, run_curve(a)),
        Verb::Verify(a) => (&a.common, run_verify(a)),
        Verb::Reconcile(a) => (&a.common, run_reconcile(a)),
    };
    let (body, code) = match result {
        Ok(r) => (r.body, if r.ok { 0 } else { 1 }),
        Err(f) => {
            eprintln!("error [{}]: {}", f.code, f.message);
            if !common.out.json {
                return ExitCode::from(2);
            }
            (json_doc(&json!({"error": {"code": f.code, "message": f.message}})), 2)
        }
    };
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error [Io]: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error [Io]: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    }
    ExitCode::from(code)
}
