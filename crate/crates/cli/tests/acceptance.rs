//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::{PI, SQRT_2};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use entbreak_cli::commands::fig2_rows;
use entbreak_core::channels::{apply_local, local_unitary, phase_damping};
use entbreak_core::linalg::hermitian_eigen;
use entbreak_core::measures::{
    bell_diagonal, concurrence, entanglement_of_formation, g_lower_bound, negativity, BellFrame, SeparabilityVerdict,
};
use entbreak_core::random::{haar_unitary, random_channel, random_density, random_hermitian, stream_rng};
use entbreak_core::scenarios::closed_form::{lambda_1, negativity_rho1_out, negativity_rho2_out, negativity_rho3_out};
use entbreak_core::scenarios::qutrit_example;
use entbreak_core::scenarios::states::{rho1_in, rho2_in, rho3_in, u_a};
use entbreak_core::Subsystem;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn entbreak(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_entbreak"))
        .args(args)
        .env_remove("ENTBREAK_SEED")
        .output()
        .expect("binary runs");
    (out, start.elapsed())
}

fn json_of(o: &Output) -> Result<Value, String> {
    serde_json::from_slice(&o.stdout).map_err(|e| format!("bad JSON: {e}"))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binary_entropy(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

fn lambda_reproduction() -> Check {
    let (o, elapsed) = entbreak(&["solve", "lambda-sep", "--state", "rho2_in"]);
    ensure(o.status.success(), format!("exit {:?}", o.status.code()))?;
    let value = json_of(&o)?["value"].as_f64().ok_or("no value")?;
    let err = (value - (-16.0 + 12.0 * SQRT_2)).abs();
    ensure(err <= 1e-9, format!("λ = {value}, error {err:e}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "λ₁ = {value:.12} (error {err:.1e}, {} ms)",
        elapsed.as_millis()
    ))
}

fn residual_negativity() -> Check {
    let expected = 2.0 * (3.0 - 2.0 * SQRT_2) / 3.0;
    let n = negativity(
        &apply_local(
            &phase_damping(lambda_1()).map_err(|e| e.to_string())?,
            &rho1_in(),
            Subsystem::A,
        )
        .map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?
    .0;
    let err = (n - expected).abs();
    ensure(err <= 1e-10, format!("N = {n}, error {err:e}"))?;
    Ok(format!("N(ρ1_out(λ₁)) = {n:.12} (error {err:.1e})"))
}

fn closed_form_equivalence() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for t in [1.0 / 3.0, 0.1, 0.6] {
        let rows = fig2_rows(t, 101).map_err(|e| e.to_string())?;
        ensure(rows.len() == 101, "grid size")?;
        for r in rows {
            worst = worst
                .max((r[1] - negativity_rho1_out(r[0])).abs())
                .max((r[2] - negativity_rho2_out(r[0])).abs())
                .max((r[3] - negativity_rho3_out(r[0], t)).abs());
        }
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-10, format!("max error {worst:e}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "max error {worst:.1e} over 3 x 101 points ({} ms)",
        elapsed.as_millis()
    ))
}

fn g_bound() -> Check {
    let frame = BellFrame::rotated(&u_a()).map_err(|e| e.to_string())?;
    let g = g_lower_bound(&rho2_in(), &frame).map_err(|e| e.to_string())?;
    let target = 1.0 - binary_entropy(1.0 / 6.0);
    ensure((g - target).abs() <= 1e-12, format!("g = {g}, want {target}"))?;
    let mut diag = bell_diagonal(&rho2_in(), &frame).map_err(|e| e.to_string())?;
    diag.sort_by(|a, b| b.total_cmp(a));
    let dev = diag
        .iter()
        .zip([5.0 / 6.0, 1.0 / 6.0, 0.0, 0.0])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    ensure(dev <= 1e-12, format!("Bell diagonal {diag:?}"))?;
    Ok(format!(
        "g = {g:.12}, Bell diagonal deviation {dev:.1e} (U_A-rotated frame)"
    ))
}

fn strict_window() -> Check {
    let (o, _) = entbreak(&["solve", "t-threshold"]);
    ensure(o.status.success(), format!("exit {:?}", o.status.code()))?;
    let v = json_of(&o)?;
    let t = v["value"].as_f64().ok_or("no value")?;
    let residual = v["residual"].as_f64().ok_or("no residual")?;
    ensure(
        (t * 1000.0).floor() == 495.0 && (t - 0.495).abs() < 1e-3,
        format!("t* = {t}"),
    )?;
    ensure(residual.abs() <= 1e-12, format!("residual {residual:e}"))?;
    let g = 1.0 - binary_entropy(1.0 / 6.0);
    let ef = |t: f64| entanglement_of_formation(&rho3_in(t).unwrap()).unwrap();
    for s in [0.1, 0.3, 0.49] {
        ensure(ef(s) < g, format!("E_f({s}) = {} not below {g}", ef(s)))?;
    }
    ensure(ef(0.6) >= g, format!("E_f(0.6) = {} below {g}", ef(0.6)))?;
    Ok(format!(
        "t* = {t:.12} (residual {residual:.1e}); window holds at 0.1, 0.3, 0.49, fails at 0.6"
    ))
}

fn certificates() -> Check {
    let all_pass = |v: &Value| {
        v["certificate"]["pieces"]
            .as_array()
            .is_some_and(|ps| !ps.is_empty() && ps.iter().all(|p| p["passed"] == true))
    };
    let (o, _) = entbreak(&["certify", "seb", "--t", "0.3333"]);
    ensure(
        o.status.code() == Some(0),
        format!("seb --t 0.3333 exit {:?}", o.status.code()),
    )?;
    ensure(all_pass(&json_of(&o)?), "seb --t 0.3333 has a failed piece")?;
    let (o, _) = entbreak(&["certify", "strong-seb"]);
    ensure(
        o.status.code() == Some(0),
        format!("strong-seb exit {:?}", o.status.code()),
    )?;
    let strong = json_of(&o)?;
    ensure(all_pass(&strong), "strong-seb has a failed piece")?;
    let (o, _) = entbreak(&["certify", "seb", "--t", "0.6667"]);
    ensure(
        o.status.code() == Some(1),
        format!("seb --t 0.6667 exit {:?}", o.status.code()),
    )?;
    let failed = json_of(&o)?["certificate"]["failedPiece"].clone();
    ensure(failed == "strict_input_inequality", format!("failed piece {failed}"))?;
    Ok(format!(
        "seb t=0.3333 valid, strong-seb valid (E_f tail {:.1e}), seb t=0.6667 fails on {failed}",
        strong["certificate"]["eofTail"].as_f64().unwrap_or(f64::NAN)
    ))
}

fn qutrit() -> Check {
    for q in [0.1, 0.25, 0.5] {
        let r = qutrit_example(q).map_err(|e| e.to_string())?;
        ensure(
            r.out1_verdict == SeparabilityVerdict::Separable && r.out1_decomposition_deviation <= 1e-12,
            format!("q = {q}: out1 not certified separable"),
        )?;
        ensure(
            r.out2_deviation <= 1e-14,
            format!("q = {q}: out2 deviates by {:e}", r.out2_deviation),
        )?;
        ensure(
            r.filter_completeness_error <= 1e-15,
            format!("q = {q}: completeness {:e}", r.filter_completeness_error),
        )?;
        ensure(r.branches.len() == 2, format!("q = {q}: {} branches", r.branches.len()))?;
        for b in &r.branches {
            ensure(
                b.schmidt_deviation <= 1e-12,
                format!(
                    "q = {q}: branch {} Schmidt deviation {:e}",
                    b.outcome, b.schmidt_deviation
                ),
            )?;
        }
    }
    Ok("q = 0.1, 0.25, 0.5: out1 separable by decomposition, out2 unchanged, branches match".into())
}

fn pure_state_nogo() -> Check {
    let (o, t1) = entbreak(&["scan-nogo", "--trials", "1000", "--seed", "42"]);
    ensure(
        o.status.code() == Some(0),
        format!("scan-nogo exit {:?}", o.status.code()),
    )?;
    let v = json_of(&o)?;
    let n = v["counterexamples"]
        .as_array()
        .map(Vec::len)
        .ok_or("no counterexamples field")?;
    ensure(n == 0, format!("{n} counterexamples"))?;
    let (o, t2) = entbreak(&[
        "search",
        "--state",
        "phi_plus",
        "--family",
        "phase-damping",
        "--grid",
        "16",
    ]);
    ensure(o.status.code() == Some(0), format!("search exit {:?}", o.status.code()))?;
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    let gaps: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap_or("").parse::<f64>().unwrap_or(f64::NAN))
        .collect();
    ensure(gaps.len() == 4096, format!("{} records", gaps.len()))?;
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    ensure(
        gaps.iter().all(|g| g.is_finite()) && max_gap <= 1e-9,
        format!("max gap {max_gap:e}"),
    )?;
    let total = t1 + t2;
    ensure(total < Duration::from_secs(60), format!("took {total:?}"))?;
    Ok(format!(
        "0 counterexamples in 1000 trials ({} separable outputs); max gap {max_gap:.1e} over 16³; {:.1} s",
        v["separableOutputs"],
        total.as_secs_f64()
    ))
}

fn search_recovers_construction() -> Check {
    let (o, _) = entbreak(&["search", "--state", "rho1_in", "--family", "phase-damping"]);
    ensure(o.status.code() == Some(0), format!("exit {:?}", o.status.code()))?;
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    let top = text.lines().nth(1).ok_or("no records")?;
    let f: Vec<f64> = top.split(',').map(|x| x.parse().unwrap_or(f64::NAN)).collect();
    let (theta, phi, psi, gap) = (f[0], f[1], f[2], f[4]);
    let want = 1.0 - lambda_1();
    ensure((gap - want).abs() <= 1e-6, format!("top gap {gap}, want {want}"))?;
    let periodic = |x: f64| {
        let r = x.rem_euclid(2.0 * PI);
        r.min(2.0 * PI - r)
    };
    let within = (theta - PI / 2.0).abs() <= PI / 16.0 + 1e-12
        && periodic(phi) <= 2.0 * PI / 16.0 + 1e-12
        && periodic(psi) <= 2.0 * PI / 16.0 + 1e-12;
    ensure(within, format!("top record at ({theta}, {phi}, {psi})"))?;
    Ok(format!("top gap {gap:.9} at (θ, φ, ψ) = ({theta:.6}, {phi}, {psi})"))
}

/// Summary of a 1000-case run, compared across two runs for determinism.
fn property_run(seed: u64) -> Result<Vec<f64>, String> {
    const CASES: u64 = 1000;
    let mut worst = vec![0.0f64; 6];
    for i in 0..CASES {
        let mut rng = stream_rng(seed, i);
        let d = 2 + (i % 2) as usize;
        let rank = 1 + (i % 4) as usize;
        let e = |e: entbreak_core::Error| e.to_string();

        let ch = random_channel(&mut rng, d, rank).map_err(e)?;
        worst[0] = worst[0].max(ch.completeness_error());

        let rho = random_density(&mut rng, d, 5 - d);
        let side = if i % 3 == 0 { Subsystem::B } else { Subsystem::A };
        let ch = random_channel(&mut rng, rho.dim(side), rank).map_err(e)?;
        let out = apply_local(&ch, &rho, side).map_err(e)?;
        worst[1] = worst[1].max((out.matrix().trace().re - 1.0).abs());
        let min = hermitian_eigen(out.matrix()).map_err(e)?.min();
        worst[2] = worst[2].max(-min);

        let q = random_density(&mut rng, 2, 2);
        let rotated = local_unitary(
            &local_unitary(&q, &haar_unitary(&mut rng, 2), Subsystem::A).map_err(e)?,
            &haar_unitary(&mut rng, 2),
            Subsystem::B,
        )
        .map_err(e)?;
        let dn = (negativity(&q).map_err(e)?.0 - negativity(&rotated).map_err(e)?.0).abs();
        let dc = (concurrence(&q).map_err(e)? - concurrence(&rotated).map_err(e)?).abs();
        let de = (entanglement_of_formation(&q).map_err(e)? - entanglement_of_formation(&rotated).map_err(e)?).abs();
        worst[3] = worst[3].max(dn.max(dc));
        worst[4] = worst[4].max(de);

        let n = if i % 2 == 0 { 4 } else { 9 };
        let h = random_hermitian(&mut rng, n);
        let eig = hermitian_eigen(&h).map_err(e)?;
        worst[5] = worst[5].max(eig.reconstruct().max_abs_diff(&h));
    }
    Ok(worst)
}

fn property_suites() -> Check {
    let a = property_run(2024)?;
    let b = property_run(2024)?;
    ensure(a == b, "runs with the same seed differ")?;
    let limits = [1e-12, 1e-12, 1e-10, 1e-10, 1e-9, 1e-10];
    let names = [
        "completeness",
        "trace",
        "PSD",
        "LU N/C",
        "LU E_f",
        "eigen reconstruction",
    ];
    for ((w, l), name) in a.iter().zip(limits).zip(names) {
        ensure(*w <= l, format!("{name}: worst {w:e} > {l:e}"))?;
    }
    Ok(format!(
        "1000 seeded cases each, deterministic; worst: completeness {:.1e}, trace {:.1e}, PSD {:.1e}, N/C {:.1e}, E_f {:.1e}, eigen {:.1e}",
        a[0], a[1], a[2], a[3], a[4], a[5]
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("λ₁ reproduction", lambda_reproduction),
        ("residual negativity at λ₁", residual_negativity),
        ("closed-form equivalence", closed_form_equivalence),
        ("g-bound", g_bound),
        ("strict window", strict_window),
        ("certificates", certificates),
        ("qutrit example", qutrit),
        ("pure-state no-go", pure_state_nogo),
        ("search recovers the construction", search_recovers_construction),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
