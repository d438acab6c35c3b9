//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ccforge_core::equations::{
    build_curve, fiber_cross_check, fiber_poly, generic_lambdas, genus, instance_invariant, verify_curve,
    CurveEquation, EquationError, Scope,
};
use ccforge_core::field::Field;
use ccforge_core::invariants::{
    build_invariant, sqrt_minus_three, table_ramification, verify_invariance, verify_ramification,
    InvariantFunction, INVARIANCE_SAMPLES,
};
use ccforge_core::loci::{
    delta_formula, reconcile, signature_of_case, Bounds, CaseParams, CaseTable, CountPolicy, FlagKind, LociError,
};
use ccforge_core::moebius::{default_field, group_preset, Family, GroupParams, MoebiusMap};
use ccforge_core::poly::Poly;

/// Wall-clock budget for the invariant suite.
const INVARIANT_BUDGET: Duration = Duration::from_secs(120);
/// Closure elements checked beyond the generators.
const SAMPLES: usize = 5;
/// Minimum number of verified curve round trips.
const MIN_CURVES: usize = 20;
/// Curves sampled per table row and cover degree.
const CURVES_PER_ROW: usize = 1;
/// Genus search range for curve sampling.
const CURVE_G_MAX: u64 = 80;
/// Largest generic fiber count used when sampling curves.
const CURVE_MAX_FIBERS: u64 = 2;
/// Thread counts compared for determinism.
const THREADS: [usize; 2] = [1, 4];

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gp(p: u64, m: Option<u64>, t: Option<u32>, q: Option<u64>) -> GroupParams {
    GroupParams { m, p, t, q }
}

fn presets() -> Vec<(Family, GroupParams, Option<Field>)> {
    let mut v = Vec::new();
    for m in 2..=6 {
        v.push((Family::C, gp(0, Some(m), None, None), None));
    }
    for m in 2..=5 {
        v.push((Family::D, gp(0, Some(m), None, None), None));
    }
    v.push((Family::A4, gp(0, None, None, None), None));
    v.push((Family::S4, gp(0, None, None, None), None));
    v.push((Family::A5, gp(0, None, None, None), None));
    for p in [11, 31] {
        v.push((Family::A5, gp(p, None, None, None), Some(Field::prime(p).unwrap())));
    }
    v.push((Family::A5, gp(3, None, None, None), None));
    for (p, t) in [(3, 1), (5, 1), (3, 2)] {
        v.push((Family::U, gp(p, None, Some(t), None), None));
    }
    for (p, t, m) in [(3, 2, 4), (5, 1, 2)] {
        v.push((Family::K, gp(p, Some(m), Some(t), None), None));
    }
    for q in [3, 5, 7] {
        v.push((Family::Psl, gp(q, None, None, Some(q)), None));
        v.push((Family::Pgl, gp(q, None, None, Some(q)), None));
    }
    v
}

fn invariant(family: Family, p: &GroupParams, field: Option<&Field>) -> Result<InvariantFunction, String> {
    let field = match field {
        Some(f) => f.clone(),
        None => default_field(family, p).map_err(|e| e.to_string())?,
    };
    let g = group_preset(family, p, &field).map_err(|e| e.to_string())?;
    build_invariant(&g).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let all = presets();
    let mut largest = (String::new(), 0);
    for (fam, p, field) in &all {
        let inv = invariant(*fam, p, field.as_ref())?;
        let name = format!("{fam} over {}", inv.group.field);
        let r = verify_invariance(&inv);
        check(r.passed(), format!("{name}: {}", r.to_text().trim()))?;
        let checked = r.get("invariance").map(|c| c.details.clone()).unwrap_or_default();
        let want = inv.group.generators.len() + SAMPLES.min(inv.group.expected_order as usize - 1);
        check(checked == format!("{want} elements"), format!("{name}: checked {checked}, expected {want}"))?;
        check(inv.phi.degree() as u64 == inv.group.expected_order, format!("{name}: deg phi != |G|"))?;
        if inv.phi.degree() > largest.1 {
            largest = (name, inv.phi.degree());
        }
    }
    check(INVARIANCE_SAMPLES == SAMPLES, "sample count drifted")?;
    let elapsed = start.elapsed();
    check(elapsed < INVARIANT_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{} presets, largest deg phi {} ({}), {:.1?}", all.len(), largest.1, largest.0, elapsed))
}

fn criterion_2() -> Outcome {
    for (fam, p, field) in presets() {
        let inv = invariant(fam, &p, field.as_ref())?;
        let r = verify_ramification(&inv);
        check(r.passed(), format!("{fam} over {}: {}", inv.group.field, r.to_text().trim()))?;
        let mut got: Vec<u64> = inv.branches.iter().map(|b| b.e as u64).collect();
        let mut want = table_ramification(&inv.group);
        got.sort_unstable();
        want.sort_unstable();
        check(got == want, format!("{fam}: {got:?} vs {want:?}"))?;
    }
    for m in 2..=5 {
        let inv = invariant(Family::D, &gp(0, Some(m), None, None), None)?;
        let f = &inv.group.field;
        let (c, h) = inv.phi.map_sub(Some(&f.from_i64(2))).power_decompose(2).map_err(|e| e.to_string())?;
        let mut xm = vec![f.zero(); m as usize + 1];
        xm[0] = f.from_i64(-1);
        xm[m as usize] = f.one();
        check(c == f.one() && h.dehomogenize() == Poly::new(f, xm), format!("phi - 2 for m = {m}"))?;
    }
    let inv = invariant(Family::A5, &gp(0, None, None, None), None)?;
    let f = &inv.group.field;
    let (_, h) = inv.phi.map_sub(Some(&f.from_i64(1728))).power_decompose(2).map_err(|e| e.to_string())?;
    let h = h.dehomogenize();
    for (k, c) in [(30, 1), (25, 522), (20, -10005), (15, 0), (10, -10005), (5, -522), (0, 1)] {
        check(h.coeff(k) == f.from_i64(c), format!("1728 fiber: x^{k} coefficient {}", f.format(&h.coeff(k))))?;
    }
    Ok("all presets match their ramification tuples; phi - 2 = (x^m - 1)^2/x^m; 1728 fiber square of x^30 + 522x^25 - 10005x^20 - ...".into())
}

fn criterion_3() -> Outcome {
    let cases = [
        (Family::A4, gp(0, None, None, None)),
        (Family::S4, gp(0, None, None, None)),
        (Family::A5, gp(0, None, None, None)),
        (Family::A5, gp(3, None, None, None)),
    ];
    let mut summary = Vec::new();
    for (fam, p) in cases {
        let inv = invariant(fam, &p, None)?;
        let a = fiber_cross_check(&inv).map_err(|e| e.to_string())?;
        let b = fiber_cross_check(&invariant(fam, &p, None)?).map_err(|e| e.to_string())?;
        check(a == b, format!("{} cross-check not reproducible", a.family))?;
        for e in &a.errata {
            println!("    erratum {} lambda = {}: x^{} printed {} computed {}", e.family, e.lambda, e.power, e.printed, e.computed);
        }
        if let Some(r) = &a.reparametrization {
            println!("    {} printed parameter = {} + ({})*lambda leaves {} mismatches", a.family, r.a, r.b, r.residual.len());
            for e in &r.residual {
                println!("      x^{} at lambda = {}: printed {} expected {}", e.power, e.lambda, e.printed, e.computed);
            }
        }
        summary.push(if a.passed() {
            format!("{} exact", a.family)
        } else {
            format!("{} {} errata (reproduced)", a.family, a.errata.len())
        });
    }
    Ok(summary.join(", "))
}

fn criterion_4() -> Outcome {
    let t = CaseTable::embedded();
    let at = |id: &str, g, n, m, p| delta_formula(t.get(id).unwrap(), &CaseParams { g, n, m, p, t: None, q: None });
    check(at("10", 5, 2, None, 0) == Ok(1), "row 10")?;
    check(at("4", 3, 2, Some(2), 0) == Ok(2), "row 4")?;
    check(at("1", 2, 2, Some(2), 0) == Ok(2), "row 1")?;
    let a = at("a", 31, 2, None, 3);
    check(a == Err(LociError::NonIntegral { num: 1, den: 15 }), format!("row a at g = 31: {a:?}"))?;
    Ok("row 10 -> 1, row 4 -> 2, row 1 -> 2, row a at g = 31 -> 32/30 - 1 = 1/15 (NonIntegral)".into())
}

fn criterion_5() -> Outcome {
    let t = CaseTable::embedded();
    let r = reconcile(&t, 30, 0, &Bounds { max_n: 5, max_m: 6, max_pt: 0, max_q: 0 });
    let got: Vec<(String, Vec<FlagKind>)> = r.rows.iter().map(|x| (x.case.clone(), x.kinds.clone())).collect();
    let want: Vec<(String, Vec<FlagKind>)> = vec![
        ("1".into(), vec![FlagKind::FiberCountOffset]),
        ("2".into(), vec![FlagKind::FiberCountOffset]),
        ("3".into(), vec![FlagKind::FiberCountOffset]),
        ("21".into(), vec![FlagKind::DimensionMismatch]),
    ];
    check(got == want, format!("flag set {got:?}"))?;
    for f in r.flags.iter().filter(|f| f.kind == FlagKind::FiberCountOffset) {
        let d: i128 = f.printed.parse().map_err(|_| format!("case {} printed {}", f.case, f.printed))?;
        check(f.oracle_trailing.map(|k| k as i128) == Some(d + 1), format!("case {} offset is not +1", f.case))?;
    }
    Ok(format!("{} instances; flags: rows 1-3 count offset k = delta + 1, row 21 dimension mismatch", r.checked))
}

fn curve_rows() -> Vec<(&'static str, Family)> {
    let mut v = Vec::new();
    for id in ["4", "5", "6", "7", "8", "9"] {
        v.push((id, Family::D));
    }
    for id in ["10", "11", "12", "13", "14", "15"] {
        v.push((id, Family::A4));
    }
    for id in ["16", "17", "18", "19", "20", "22", "23"] {
        v.push((id, Family::S4));
    }
    for id in ["24", "25", "26", "27", "28", "29", "30", "31"] {
        v.push((id, Family::A5));
    }
    v
}

fn criterion_6() -> Outcome {
    let t = CaseTable::embedded();
    let gf31 = Field::prime(31).unwrap();
    let mut verified = Vec::new();
    let mut unrealizable = 0;

    let ten = signature_of_case(t.get("10").unwrap(), &CaseParams { g: 5, n: 2, ..CaseParams::default() })
        .map_err(|e| e.to_string())?;
    let inv = instance_invariant(&ten, None).map_err(|e| e.to_string())?;
    let c = build_curve(&ten, &inv, &[inv.group.field.one()], CountPolicy::Oracle).map_err(|e| e.to_string())?;
    check(c.f.degree() == Some(12) && genus(&c) == Ok(5), "case 10 worked example")?;
    let r = verify_curve(&c, &inv, 5, Scope::Closure);
    check(r.passed(), format!("case 10: {}", r.to_text()))?;
    verified.push("10/n=2/g=5".to_string());

    for (id, fam) in curve_rows() {
        let row = t.get(id).unwrap();
        for n in [2u64, 3] {
            let mut taken = 0;
            'search: for g in 2..=CURVE_G_MAX {
                for m in if fam == Family::D { 2..=4 } else { 0..=0 } {
                    let p = if fam == Family::A5 { 31 } else { 0 };
                    let params = CaseParams { g, n, m: (m > 0).then_some(m), p, t: None, q: None };
                    let Ok(inst) = signature_of_case(row, &params) else { continue };
                    let k = inst.fiber_count(CountPolicy::Oracle);
                    if inst.oracle_trailing.is_none() || k == 0 || k > CURVE_MAX_FIBERS || (id == "10" && g == 5 && n == 2) {
                        continue;
                    }
                    let field = (fam == Family::A5).then_some(&gf31);
                    let inv = instance_invariant(&inst, field).map_err(|e| format!("{id}: {e}"))?;
                    let ls = generic_lambdas(&inst, &inv, k).map_err(|e| format!("{id}: {e}"))?;
                    let c = build_curve(&inst, &inv, &ls, CountPolicy::Oracle).map_err(|e| format!("{id}: {e}"))?;
                    if !c.realizable() {
                        unrealizable += 1;
                        continue;
                    }
                    let r = verify_curve(&c, &inv, g, Scope::Closure);
                    let genus_ok = r.get("genus").is_some_and(|x| x.pass);
                    let inv_ok = r.checks.iter().filter(|x| x.name.starts_with("invariance")).all(|x| x.pass);
                    check(
                        genus_ok && inv_ok,
                        format!("case {id} n = {n} g = {g} m = {m}: {}", r.to_text()),
                    )?;
                    verified.push(format!("{id}/n={n}/g={g}"));
                    taken += 1;
                    if taken == CURVES_PER_ROW {
                        break 'search;
                    }
                }
            }
        }
    }
    check(verified.len() >= MIN_CURVES, format!("only {} curves", verified.len()))?;
    Ok(format!(
        "{} curves with genus = g and closure invariance ({} instances skipped: n does not divide the form degree)",
        verified.len(),
        unrealizable
    ))
}

fn criterion_7() -> Outcome {
    let d = invariant(Family::D, &gp(0, Some(2), None, None), None)?;
    let f = &d.group.field;
    let quintic = CurveEquation::from_poly(2, Poly::from_i64s(f, &[-1, 0, 0, 0, 0, 1])).map_err(|e| e.to_string())?;
    let r = verify_curve(&quintic, &d, 2, Scope::Generators);
    let inversion = MoebiusMap::from_i64s(f, [0, 1, 1, 0]).unwrap();
    let inv_idx = d.group.generators.iter().position(|g| *g == inversion);
    check(!r.passed(), "y^2 = x^5 - 1 passed dihedral verification")?;
    if let Some(i) = inv_idx {
        check(!r.get(&format!("invariance[{i}]")).unwrap().pass, "x -> 1/x accepted")?;
    }

    let p = gp(0, None, None, None);
    let field = default_field(Family::A4, &p).unwrap();
    let mut g = group_preset(Family::A4, &p, &field).unwrap();
    let m = g.generators[1].matrix().clone();
    g.generators[1] = MoebiusMap::new(&field, [m[0].clone(), field.add(&m[1], &field.one()), m[2].clone(), m[3].clone()])
        .map_err(|e| e.to_string())?;
    let corrupted = build_invariant(&g).map_err(|e| e.to_string())?;
    check(!verify_invariance(&corrupted).passed(), "corrupted A4 generator accepted")?;

    let a4 = invariant(Family::A4, &p, None)?;
    let f = &a4.group.field;
    let six_s = f.mul(&f.from_i64(6), &sqrt_minus_three(f).unwrap());
    check(
        matches!(fiber_poly(&a4, &six_s), Err(EquationError::BranchValueCollision(_))),
        "lambda = 6*sqrt(-3) accepted",
    )?;

    let f5 = Field::prime(5).unwrap();
    let wild = CurveEquation::from_poly(5, Poly::from_i64s(&f5, &[-1, 0, 1])).map_err(|e| e.to_string())?;
    check(genus(&wild) == Err(EquationError::WildCover { n: 5, p: 5 }), "n = char accepted")?;
    Ok("quintic not dihedral, corrupted generator rejected, BranchValueCollision, WildCover".into())
}

fn cli(args: &[&str], threads: usize) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ccforge"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_8() -> Outcome {
    let corpus: &[&[&str]] = &[
        &["invariant", "--family", "D", "--m", "3"],
        &["invariant", "--family", "A5", "--verify", "--json"],
        &["invariant", "--family", "PGL", "--q", "7", "--p", "7", "--json"],
        &["cases", "--g", "9"],
        &["cases", "--g", "6", "--p", "3", "--latex"],
        &["delta", "--case", "10", "--g", "5", "--n", "2"],
        &["delta", "--case", "a", "--g", "31", "--n", "2", "--p", "3", "--json"],
        &["signature", "--case", "1", "--g", "2", "--n", "2", "--m", "2", "--json"],
        &["curve", "--case", "10", "--g", "5", "--n", "2", "--lambda", "1", "--verify"],
        &["curve", "--case", "17", "--g", "13", "--n", "2", "--generic", "--json"],
        &["verify", "--family", "D", "--m", "2", "--n", "2", "--g", "2", "--coeffs", "-1,0,0,0,0,1"],
        &["reconcile", "--g-max", "30"],
        &["reconcile", "--g-max", "12", "--p", "5", "--json"],
    ];
    for args in corpus {
        let first = cli(args, THREADS[0]);
        check(cli(args, THREADS[0]) == first, format!("{args:?} differs between runs"))?;
        for &t in &THREADS[1..] {
            check(cli(args, t) == first, format!("{args:?} differs with {t} threads"))?;
        }
    }
    Ok(format!("{} invocations byte-identical across runs and {:?} threads", corpus.len(), THREADS))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "invariant suite", criterion_1),
        (2, "ramification suite", criterion_2),
        (3, "printed fiber cross-checks", criterion_3),
        (4, "delta spot values", criterion_4),
        (5, "oracle agreement", criterion_5),
        (6, "curve round trips", criterion_6),
        (7, "negative controls", criterion_7),
        (8, "CLI determinism", criterion_8),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {n} ({name}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
