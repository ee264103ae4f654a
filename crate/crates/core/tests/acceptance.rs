//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use agcodes::ag::{
    evaluation_code, goppa_report_for_curve_code, h0_dimensions, realize_on_curve, search_smooth_curves,
    EvaluationCodeSpec,
};
use agcodes::bounds::{crossing_region, gv_bound};
use agcodes::codes::{codes_equal, row_reduce, LinearCode};
use agcodes::curve::{is_smooth_plane_curve, Certificate, PlaneCurve};
use agcodes::field::{prime_power, Elem, Field};
use agcodes::forms::{monomial_count, HomogeneousForm};
use agcodes::projective::ProjectivePoint;
use agcodes::Settings;
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

const REFERENCE_QUARTIC_PRINTED: &str = "x^3z + x^2y^2 + x^2z^2 + xy^3 + y^3z + yz^3";

/// Results shared between criteria: the 24 smooth quartics and every
/// singular certificate seen on the way.
#[derive(Default)]
struct Shared {
    smooth: Vec<PlaneCurve>,
    singular: Vec<PlaneCurve>,
}

fn cli_json(args: &[&str]) -> (String, Value) {
    let mut full = vec!["agcodes"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = agcodes::cli::run(full, &mut out, &mut err);
    assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&err));
    let text = String::from_utf8(out).unwrap();
    let v = serde_json::from_str(&text).unwrap();
    (text, v)
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn ac1(shared: &mut Shared) -> Result<String, String> {
    let start = Instant::now();
    let (_, v) = cli_json(&["search-curves", "--q", "2", "--degree", "4", "--points", "all", "--workers", "1"]);
    let elapsed = within(Duration::from_secs(60), start)?;
    let count = v["count"].as_u64().unwrap();
    if count != 24 {
        return Err(format!("found {count} smooth quartics"));
    }
    let forms: Vec<&str> = v["curves"].as_array().unwrap().iter().map(|c| c["form"].as_str().unwrap()).collect();
    if !forms.contains(&REFERENCE_QUARTIC_PRINTED) {
        return Err("reference quartic missing".into());
    }
    let search = search_smooth_curves(&f2(), 4, &plane_points(&f2()), None, &Settings::default()).unwrap();
    assert_eq!(search.smooth_count, 24);
    shared.smooth = search.smooth;
    shared.singular.extend(search.singular);
    Ok(format!("24 of {} classes, {elapsed}", v["total_classes"]))
}

fn ac2(shared: &mut Shared) -> Result<String, String> {
    let start = Instant::now();
    let f = HomogeneousForm::parse(REFERENCE_QUARTIC, &f2(), 3, None).unwrap();
    let zeros = plane_points(&f2()).points().iter().filter(|p| f.evaluate(p).unwrap().is_zero()).count();
    let curve = is_smooth_plane_curve(&f, &Settings::default()).unwrap();
    let elapsed = within(Duration::from_secs(10), start)?;
    if zeros != 7 {
        return Err(format!("vanishes at {zeros} points"));
    }
    if !curve.is_smooth() || curve.m_max() != 9 {
        shared.singular.push(curve.clone());
        return Err(format!("certificate {:?} m_max {}", curve.certificate(), curve.m_max()));
    }
    Ok(format!("7 zeros, smooth with m_max 9, {elapsed}"))
}

fn ac3(shared: &mut Shared) -> Result<String, String> {
    let start = Instant::now();
    let s = Settings::default();
    let pts = plane_points(&f2());
    let mut checks = 0;
    for curve in &shared.smooth {
        for a in 0..=3 {
            let on_x = evaluation_code(&EvaluationCodeSpec::on_projective_space(2, a, pts.clone())).unwrap();
            let on_y = evaluation_code(&EvaluationCodeSpec::on_curve(curve.clone(), a, pts.clone())).unwrap();
            if !codes_equal(&on_x, &on_y).unwrap() {
                return Err(format!("codes differ for {} at a = {a}", curve.form()));
            }
            if !realize_on_curve(curve, a, &pts, &s).unwrap().equal {
                return Err(format!("realize disagrees for {} at a = {a}", curve.form()));
            }
            checks += 1;
        }
    }
    let elapsed = within(Duration::from_secs(30), start)?;
    if checks != 96 {
        return Err(format!("{checks} equality checks"));
    }
    Ok(format!("96 equalities, {elapsed}"))
}

/// Riemann-Roch on a smooth plane curve of degree d: l(aH) = ad - g + 1 + l((d - 3 - a)H),
/// with l(0) = 1 and l(bH) = 0 for b < 0. The recursion only closes when the
/// residual twist d - 3 - a is below a, which covers every case used here.
fn riemann_roch(a: i64, d: i64) -> i64 {
    let g = (d - 1) * (d - 2) / 2;
    match a {
        a if a < 0 => 0,
        0 => 1,
        a => {
            assert!(d - 3 - a < a, "Riemann-Roch oracle does not cover a = {a}, d = {d}");
            a * d - g + 1 + riemann_roch(d - 3 - a, d)
        }
    }
}

fn ac4(_: &mut Shared) -> Result<String, String> {
    let mut parts = Vec::new();
    for (a, d, want) in [(1u32, 4u32, 3u64), (4, 4, 14), (5, 4, 18)] {
        let h = h0_dimensions(a, d).h0_y;
        let rr = riemann_roch(a as i64, d as i64);
        if h != want || rr != want as i64 {
            return Err(format!("(a, d) = ({a}, {d}): h0 {h}, Riemann-Roch {rr}, expected {want}"));
        }
        parts.push(format!("({a},{d})->{h}"));
    }
    Ok(parts.join(" "))
}

fn ac5(shared: &mut Shared) -> Result<String, String> {
    let s = Settings::default();
    let pts = plane_points(&f2());
    for curve in &shared.smooth {
        let r = goppa_report_for_curve_code(curve, 1, &pts, &s).unwrap();
        let code = evaluation_code(&EvaluationCodeSpec::on_curve(curve.clone(), 1, pts.clone())).unwrap();
        let brute = full_enumeration_min_distance(&code);
        if brute != r.report.d {
            return Err(format!("{}: d {} vs brute force {brute}", curve.form(), r.report.d));
        }
        if !(r.hypothesis_holds && r.report.holds && r.report.k + r.report.d >= 5) {
            return Err(format!("{}: {}", curve.form(), r.to_json()));
        }
    }
    Ok(format!("k + d >= 5 for all {} curves", shared.smooth.len()))
}

fn ac6(_: &mut Shared) -> Result<String, String> {
    let s = Settings::default();
    let mut got = Vec::new();
    for (a, want) in [(1u32, (7, 3, 4)), (0, (7, 1, 7))] {
        let code = evaluation_code(&EvaluationCodeSpec::on_projective_space(2, a, plane_points(&f2()))).unwrap();
        let d = code.minimum_distance(&s).unwrap();
        let params = (code.n(), code.k(), d);
        if params != want || full_enumeration_min_distance(&code) != d {
            return Err(format!("a = {a}: {params:?}"));
        }
        got.push(code.summary(Some(d)));
    }
    Ok(got.join(" "))
}

fn ac7(_: &mut Shared) -> Result<String, String> {
    for q in [2u64, 49] {
        let at0 = gv_bound(q, 0.0).unwrap();
        let plotkin = gv_bound(q, (q - 1) as f64 / q as f64).unwrap();
        if (at0 - 1.0).abs() > 1e-12 || plotkin.abs() > 1e-12 {
            return Err(format!("q = {q}: gv(0) = {at0}, gv(plotkin) = {plotkin}"));
        }
    }
    let r49 = crossing_region(49, 1e-4).unwrap();
    if r49.len() != 1 || r49[0].0 >= r49[0].1 {
        return Err(format!("crossing(49) = {r49:?}"));
    }
    for q in [4u64, 9, 16, 25] {
        let r = crossing_region(q, 1e-4).unwrap();
        if !r.is_empty() {
            return Err(format!("crossing({q}) = {r:?}"));
        }
    }
    Ok(format!("crossing(49) = [{:.9}, {:.9}]", r49[0].0, r49[0].1))
}

fn ac8(shared: &mut Shared) -> Result<String, String> {
    let start = Instant::now();
    // Field axioms, exhaustively.
    for q in (2..=64).filter(|&q| prime_power(q).is_some()) {
        let f = Field::from_order(q).unwrap();
        let el: Vec<Elem> = f.elements().collect();
        for &a in &el {
            if !a.is_zero() && f.mul(a, f.inv(a).unwrap()) != Elem::ONE {
                return Err(format!("{f}: inverse"));
            }
            for &b in &el {
                for &c in &el {
                    let ok = f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                        && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                        && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                        && f.mul(a, b) == f.mul(b, a)
                        && f.add(a, b) == f.add(b, a);
                    if !ok {
                        return Err(format!("{f}: axioms fail at {a:?} {b:?} {c:?}"));
                    }
                }
            }
        }
    }
    // Normalization is constant on scalar orbits.
    for q in [2u64, 3, 4, 5, 7, 8] {
        let f = Field::from_order(q).unwrap();
        for code in 1..q.pow(3) {
            let raw: Vec<Elem> = (0..3).map(|i| f.element(((code / q.pow(i)) % q) as u32).unwrap()).collect();
            let base = ProjectivePoint::normalize(&f, &raw).unwrap();
            for l in f.elements().skip(1) {
                let scaled: Vec<Elem> = raw.iter().map(|&c| f.mul(c, l)).collect();
                if ProjectivePoint::normalize(&f, &scaled).unwrap() != base {
                    return Err(format!("normalization over {f}"));
                }
            }
        }
    }
    // Euler relation on random forms.
    let mut rng = StdRng::seed_from_u64(2024);
    let mut euler = 0;
    while euler < 600 {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let d = rng.gen_range(1..=5);
        let f = Field::new(p, 1).unwrap();
        let coeffs = (0..monomial_count(3, d)).map(|_| f.element(rng.gen_range(0..p as u32)).unwrap()).collect();
        let form = HomogeneousForm::from_coeffs(&f, 3, d, coeffs).unwrap();
        let mut lhs = HomogeneousForm::zero(&f, 3, d);
        for (i, v) in ["x", "y", "z"].iter().enumerate() {
            let var = HomogeneousForm::parse(v, &f, 3, None).unwrap();
            lhs = lhs.add(&var.multiply(&form.partial_derivative(i).unwrap()).unwrap()).unwrap();
        }
        if lhs != form.scale(f.from_int(d as i64)) {
            return Err(format!("Euler relation fails for {form}"));
        }
        euler += 1;
    }
    // Witness re-verification for every singular certificate from criteria 1-5.
    for curve in &shared.singular {
        let Certificate::Singular { point, .. } = curve.certificate() else { unreachable!() };
        let library = curve.verify_witness().unwrap().unwrap();
        let oracle = value_and_gradient(curve.form(), point.field(), point.coords()).iter().all(|v| v.is_zero());
        if !(library && oracle) {
            return Err(format!("witness for {} does not verify", curve.form()));
        }
    }
    // Reduced echelon form and minimum distance against full enumeration.
    let s = Settings::default();
    let mut codes = 0;
    for (q, max_k) in [(2u64, 12u32), (3, 7), (4, 6), (7, 4), (8, 4)] {
        let f = Field::from_order(q).unwrap();
        for _ in 0..10 {
            let k = rng.gen_range(1..=max_k) as usize;
            let n = rng.gen_range(k..=k + 6);
            let rows: Vec<Vec<Elem>> = (0..k)
                .map(|_| (0..n).map(|_| f.element(rng.gen_range(0..q as u32)).unwrap()).collect())
                .collect();
            let (rref, piv) = row_reduce(&f, &rows);
            if row_reduce(&f, &rref) != (rref.clone(), piv) {
                return Err(format!("rref not idempotent over {f}"));
            }
            let code = LinearCode::from_generator(&f, rows).unwrap();
            if code.k() == 0 || (q as u128).pow(k as u32) > 1 << 12 {
                continue;
            }
            if code.minimum_distance(&s).unwrap() != full_enumeration_min_distance(&code) {
                return Err(format!("minimum distance mismatch over {f}"));
            }
            codes += 1;
        }
    }
    let elapsed = within(Duration::from_secs(120), start)?;
    Ok(format!(
        "{euler} Euler cases, {} witnesses, {codes} distance oracles, {elapsed}",
        shared.singular.len()
    ))
}

fn ac9(_: &mut Shared) -> Result<String, String> {
    let mut runs = vec![vec!["search-curves", "--q", "2", "--degree", "4", "--points", "all"]];
    let twists = ["0", "1", "2", "3"];
    for a in &twists {
        runs.push(vec!["realize", "--q", "2", "--degree", "4", "--points", "all", "--all-curves", "--a", a]);
    }
    for args in &runs {
        let one = cli_json(&[&args[..], &["--workers", "1"]].concat()).0;
        let eight = cli_json(&[&args[..], &["--workers", "8"]].concat()).0;
        if one != eight {
            return Err(format!("{} output differs between 1 and 8 workers", args.join(" ")));
        }
    }
    Ok(format!("{} commands byte-identical", runs.len()))
}

type Criterion = fn(&mut Shared) -> Result<String, String>;

fn main() {
    let criteria: [(&str, &str, Criterion); 9] = [
        ("AC1", "24 smooth quartics through P^2(F_2)", ac1),
        ("AC2", "reference quartic certificate", ac2),
        ("AC3", "curve codes equal plane codes", ac3),
        ("AC4", "h0 dimensions", ac4),
        ("AC5", "Goppa inequality at a = 1", ac5),
        ("AC6", "known code parameters", ac6),
        ("AC7", "GV and AG bounds", ac7),
        ("AC8", "property suites", ac8),
        ("AC9", "determinism across worker counts", ac9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut shared = Shared::default();
    let mut failed = 0;
    for (id, name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut shared))).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
