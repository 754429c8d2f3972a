//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::f64::consts::{E, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use plankforge_core::bounds::{compare_bounds, verify_product_inequality, CheckStatus, VerifyOptions};
use plankforge_core::extremal::{build_family, verify_equality};
use plankforge_core::plank::{
    allocate_lemma4, allocate_lemma7, find_witness, k_limit, lemma4_budget, power_certificate, product_certificate,
    WitnessOptions, FEASIBILITY_TOL,
};
use plankforge_core::poly::random::{random_homogeneous, random_polynomial};
use plankforge_core::remez::{check_lemma8_integral, estimate_sublevel_measures, MonteCarloOptions};
use plankforge_core::space::{monomial_norm, normalize, start_rng};
use plankforge_core::{
    BoundKind, BoundSpec, Complex64, Exponent, Field, MultiIndex, NormOptions, PlankInstance, Polynomial, Regime,
    SpaceSpec,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    if rng.random::<bool>() {
        Field::Complex
    } else {
        Field::Real
    }
}

fn random_p(rng: &mut ChaCha8Rng) -> Exponent {
    [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinite][rng.random_range(0..3)]
}

/// Positive weights summing to one.
fn simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

fn ones(n: usize) -> MultiIndex {
    MultiIndex::new(vec![1; n])
}

fn bst_sharpness() -> Verdict {
    let worst = (2..=5)
        .map(|n| {
            let v = (n as f64).powi(n as i32) * monomial_norm(&ones(n), Exponent::Finite(1.0));
            (v - 1.0).abs()
        })
        .fold(0.0, f64::max);
    verdict(worst <= 1e-12, format!("max |n^n ||z_1...z_n|| - 1| = {worst:.1e} for n = 2..5"))
}

fn hilbert_equality() -> Verdict {
    let worst = (2..=3)
        .map(|n| {
            let v = (n as f64).powi(n as i32).sqrt() * monomial_norm(&ones(n), Exponent::Finite(2.0));
            (v - 1.0).abs()
        })
        .fold(0.0, f64::max);
    verdict(worst <= 1e-12, format!("max |sqrt(n^n) ||z_1...z_n||_2 - 1| = {worst:.1e} for n = 2, 3"))
}

fn extremal_family() -> Verdict {
    let mut cases = 0;
    let mut failures = Vec::new();
    for d in 1..=4 {
        for n in d + 1..=6 {
            for k in 1..=3 {
                cases += 1;
                let ok = build_family(d, n, k).and_then(|fam| verify_equality(&fam, None)).is_ok_and(|r| r.exact_pass);
                if !ok {
                    failures.push((d, n, k));
                }
            }
        }
    }
    verdict(failures.is_empty(), format!("{cases} (d, n, k) cases, failures {failures:?}"))
}

fn random_tuple(rng: &mut ChaCha8Rng, space: &SpaceSpec, n: usize, homogeneous: bool) -> Vec<Polynomial> {
    (0..n)
        .map(|_| {
            let k = rng.random_range(1..=4);
            if homogeneous {
                random_homogeneous(space.dim, space.field, k, 0.8, rng)
            } else {
                random_polynomial(space.dim, space.field, k, 0.6, rng)
            }
        })
        .collect()
}

/// Runs `count` product checks and tallies their statuses.
fn product_checks(
    count: usize,
    kind: BoundKind,
    seed: u64,
    mut space_for: impl FnMut(&mut ChaCha8Rng) -> SpaceSpec,
    homogeneous: bool,
) -> Result<(usize, usize, usize), String> {
    let (mut pass, mut retried, mut violations) = (0, 0, 0);
    for i in 0..count {
        let mut rng = start_rng(seed + i as u64);
        let space = space_for(&mut rng);
        let n = rng.random_range(1..=4);
        let polys = random_tuple(&mut rng, &space, n, homogeneous);
        let opts = VerifyOptions { norm: NormOptions::with_seed(i as u64).starts(64), rtol: 1e-6 };
        let check = verify_product_inequality(&polys, &space, kind, &opts).map_err(|e| format!("case {i}: {e}"))?;
        match check.status {
            CheckStatus::Pass => pass += 1,
            CheckStatus::OptimizerFailure => retried += 1,
            CheckStatus::Violation => violations += 1,
        }
    }
    Ok((pass, retried, violations))
}

fn theorem_inequality() -> Verdict {
    let space_for = |rng: &mut ChaCha8Rng| {
        let d = rng.random_range(1..=3);
        SpaceSpec::new(random_field(rng), d, random_p(rng)).expect("valid space")
    };
    match product_checks(200, BoundKind::FiniteDim, 1_000, space_for, false) {
        Ok((pass, retried, violations)) => verdict(
            violations == 0,
            format!("200 tuples: {pass} pass, {retried} pass after retry, {violations} violations"),
        ),
        Err(e) => verdict(false, e),
    }
}

fn prop12_audit() -> Verdict {
    let stated = BoundSpec::new(BoundKind::HilbertFiniteStated, vec![1]).dim(1).field(Field::Real);
    let stated_value = stated.log_value().map(f64::exp).unwrap_or(f64::NAN);
    let stated_ok = (stated_value - E / 4.0).abs() <= 1e-15 && stated_value < 1.0;

    let ratio = compare_bounds(2, 1, 1, Field::Real).map(|r| r.prop12_ratio_printed).unwrap_or(f64::NAN);
    let ratio_ok = (ratio - 0.125).abs() <= 1e-15;

    let space_for = |rng: &mut ChaCha8Rng| {
        let d = rng.random_range(1..=3);
        SpaceSpec::new(random_field(rng), d, Exponent::Finite(2.0)).expect("valid space")
    };
    let checks = product_checks(100, BoundKind::HilbertFiniteDerived, 2_000, space_for, true);
    let (detail, checks_ok) = match checks {
        Ok((pass, retried, violations)) => (
            format!("100 derived tuples: {pass} pass, {retried} after retry, {violations} violations"),
            violations == 0,
        ),
        Err(e) => (e, false),
    };
    verdict(
        stated_ok && ratio_ok && checks_ok,
        format!("stated constant {stated_value:.15} (e/4 < 1), printed ratio {ratio:.17}; {detail}"),
    )
}

fn remez_suite() -> Verdict {
    let mut failures = Vec::new();
    for i in 0..100u64 {
        let mut rng = start_rng(3_000 + i);
        let space = SpaceSpec::new(random_field(&mut rng), rng.random_range(1..=3), random_p(&mut rng)).unwrap();
        let k = rng.random_range(1..=5);
        let raw = random_polynomial(space.dim, space.field, k, 0.7, &mut rng);
        let norm = NormOptions::with_seed(i);
        let opts = MonteCarloOptions { samples: 100_000, seed: i, norm };
        let result = normalize(&raw, &space, &norm).map_err(|e| e.to_string()).and_then(|(p, _)| {
            let sub = estimate_sublevel_measures(&p, &space, &[0.01, 0.1, 0.5], &opts).map_err(|e| e.to_string())?;
            let int = check_lemma8_integral(&p, &space, 40.0, &opts).map_err(|e| e.to_string())?;
            Ok(sub.iter().all(|s| s.pass) && int.pass)
        });
        if result != Ok(true) {
            failures.push(format!("poly {i}: {result:?}"));
        }
    }
    let mut homogeneous = 0;
    for i in 0..20u64 {
        let mut rng = start_rng(4_000 + i);
        let space = SpaceSpec::new(random_field(&mut rng), rng.random_range(1..=3), Exponent::Finite(2.0)).unwrap();
        let raw = random_homogeneous(space.dim, space.field, rng.random_range(1..=5), 0.8, &mut rng);
        let norm = NormOptions::with_seed(i);
        let opts = MonteCarloOptions { samples: 100_000, seed: i, norm };
        let ok = normalize(&raw, &space, &norm)
            .ok()
            .and_then(|(p, _)| check_lemma8_integral(&p, &space, 40.0, &opts).ok())
            .is_some_and(|c| c.homogeneous_pass == Some(true));
        if ok {
            homogeneous += 1;
        } else {
            failures.push(format!("homogeneous poly {i}"));
        }
    }
    let line = SpaceSpec::real(1, 2.0).unwrap();
    let opts = MonteCarloOptions { samples: 100_000, seed: 5, norm: NormOptions::with_seed(5) };
    let x = Polynomial::variable(1, Field::Real, 0).unwrap();
    let mut analytic = Vec::new();
    for s in estimate_sublevel_measures(&x, &line, &[0.1, 0.5], &opts).unwrap() {
        analytic.push((s.measure - s.t).abs() <= 3.0 * s.stderr);
    }
    for k in 1..=3 {
        let c = check_lemma8_integral(&x.power(k).unwrap(), &line, 40.0, &opts).unwrap();
        analytic.push((c.integral_estimate - f64::from(k)).abs() <= 3.0 * c.stderr);
    }
    if analytic.contains(&false) {
        failures.push(format!("analytic d = 1 cases {analytic:?}"));
    }
    verdict(
        failures.is_empty(),
        format!("100 random polys, {homogeneous}/20 homogeneous l_2 bounds, analytic cases {analytic:?}; failures {failures:?}"),
    )
}

/// Some point of the `l_p` unit sphere of complex dimension two meeting every
/// plank, searched on a grid of step 0.01 in `(rho, theta)`. The first
/// coordinate is taken real since the polynomials are homogeneous.
fn grid_refutes(inst: &PlankInstance, p: f64) -> bool {
    let targets = inst.targets();
    (0..=100).any(|i| {
        let rho = f64::from(i) / 100.0;
        let r2 = (1.0 - rho.powf(p)).max(0.0).powf(1.0 / p);
        (0..(2.0 * PI / 0.01).ceil() as usize).any(|j| {
            let z = [Complex64::new(rho, 0.0), Complex64::from_polar(r2, j as f64 * 0.01)];
            inst.polys.iter().zip(&targets).all(|(q, t)| q.evaluate(&z).unwrap().norm() >= *t)
        })
    })
}

fn plank_instance(rng: &mut ChaCha8Rng, seed: u64, fraction: f64) -> (PlankInstance, f64) {
    let p = [1.0, 1.5, 2.0][rng.random_range(0..3)];
    let space = SpaceSpec::complex(2, p).unwrap();
    let n = rng.random_range(2..=3);
    let polys: Vec<Polynomial> =
        (0..n).map(|_| random_homogeneous(2, Field::Complex, rng.random_range(1..=3), 1.0, rng)).collect();
    let radii: Vec<f64> = simplex(rng, n).iter().map(|w| (fraction * lemma4_budget(n) * w).powf(1.0 / p)).collect();
    let inst = PlankInstance::new(&polys, &radii, space, Regime::Lp, &NormOptions::with_seed(seed)).unwrap();
    (inst, p)
}

fn plank_end_to_end() -> Verdict {
    let mut successes = 0;
    let mut refuted = 0;
    let mut errors = Vec::new();
    for i in 0..100u64 {
        let mut rng = start_rng(5_000 + i);
        let (inst, p) = plank_instance(&mut rng, i, 0.9);
        let opts = WitnessOptions { norm: NormOptions::with_seed(i), r_cap: None };
        match find_witness(&inst, &opts) {
            Ok(r) if r.success => successes += 1,
            Ok(_) => refuted += usize::from(grid_refutes(&inst, p)),
            Err(e) => errors.push(format!("instance {i}: {e}")),
        }
    }
    let mut worst_boundary = f64::INFINITY;
    for i in 0..20u64 {
        let mut rng = start_rng(6_000 + i);
        let (inst, _) = plank_instance(&mut rng, i, 1.0);
        let opts = WitnessOptions { norm: NormOptions::with_seed(i), r_cap: None };
        match find_witness(&inst, &opts) {
            Ok(r) => worst_boundary = r.margins.iter().copied().fold(worst_boundary, f64::min),
            Err(e) => errors.push(format!("boundary {i}: {e}")),
        }
    }
    verdict(
        successes >= 98 && refuted == 0 && worst_boundary >= -1e-6 && errors.is_empty(),
        format!(
            "{successes}/100 at 90% budget, {refuted} grid-refuted failures, worst boundary margin {worst_boundary:.3e} over 20; errors {errors:?}"
        ),
    )
}

fn allocation_lemmas() -> Verdict {
    let mut bad4 = 0;
    let mut worst4 = f64::INFINITY;
    for i in 0..10_000u64 {
        let mut rng = start_rng(7_000 + i);
        let n = rng.random_range(1..=6);
        let b: Vec<f64> = simplex(&mut rng, n).iter().map(|w| w * lemma4_budget(n)).collect();
        match allocate_lemma4(&b) {
            Ok(a) => {
                let c = product_certificate(&a.t, &b);
                worst4 = worst4.min(c);
                bad4 += usize::from(c < FEASIBILITY_TOL);
            }
            Err(_) => bad4 += 1,
        }
    }
    let fallback = allocate_lemma4(&[0.375, 0.125]).is_ok_and(|a| product_certificate(&a.t, &a.b) >= FEASIBILITY_TOL);

    let mut bad7 = 0;
    let mut worst7 = f64::INFINITY;
    for i in 0..10_000u64 {
        let mut rng = start_rng(8_000 + i);
        let n = rng.random_range(1..=6);
        let k = k_limit(n) * rng.random_range(0.05..1.0);
        let mut w = simplex(&mut rng, n);
        if n > 1 && rng.random::<f64>() < 0.1 {
            let j = rng.random_range(0..n);
            let moved = w[j];
            w[j] = 0.0;
            w[(j + 1) % n] += moved;
        }
        let b: Vec<f64> = w.iter().map(|x| x * n as f64 * k.powi(n as i32)).collect();
        match allocate_lemma7(&b, k) {
            Ok((a, s)) => {
                let c = power_certificate(&a.t, &b, k);
                worst7 = worst7.min(c);
                let s_ok = s.iter().sum::<f64>() <= 1.0 + 1e-12;
                bad7 += usize::from(c < FEASIBILITY_TOL || !s_ok);
            }
            Err(_) => bad7 += 1,
        }
    }

    let symmetric = (1..=6).all(|n| {
        let nf = n as f64;
        allocate_lemma4(&vec![nf.powi(-(n as i32)); n]).is_ok_and(|a| {
            a.t.iter().all(|t| (t - 1.0 / nf).abs() <= 1e-12)
                && (n == 1 || a.c.is_some_and(|c| (c - nf.ln()).abs() <= 1e-12))
        })
    });
    verdict(
        bad4 == 0 && bad7 == 0 && fallback && symmetric,
        format!(
            "product form: {bad4} bad of 1e4 (worst certificate {worst4:.2e}), n = 2 fallback {fallback}; power form: {bad7} bad of 1e4 (worst {worst7:.2e}); symmetric {symmetric}"
        ),
    )
}

fn crossover() -> Verdict {
    let at = |n| compare_bounds(n, 1000, 2, Field::Real);
    match (at(300), at(100)) {
        (Ok(big), Ok(small)) => {
            let cross = big.crossover_n;
            let pass = big.log_eq6 < big.log_eq4
                && small.log_eq4 < small.log_eq6
                && cross.is_some_and(|c| (150..=400).contains(&c));
            verdict(
                pass,
                format!(
                    "n = 300: eq6 < eq4 is {}; n = 100: eq4 < eq6 is {}; crossover {cross:?}",
                    big.log_eq6 < big.log_eq4,
                    small.log_eq4 < small.log_eq6
                ),
            )
        }
        (a, b) => verdict(false, format!("{a:?} {b:?}")),
    }
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_plankforge")).args(args).output().map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(0 | 1) => Ok(out.stdout),
        code => Err(format!("{args:?} exited with {code:?}: {}", String::from_utf8_lossy(&out.stderr))),
    }
}

fn write_poly(dir: &Path, name: &str, p: &Polynomial) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(p).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let planks = dir.join("planks");
    std::fs::create_dir(&planks).unwrap();
    let mut rng = start_rng(9_000);
    for i in 0..3 {
        let q = random_homogeneous(3, Field::Complex, 1 + i % 2, 1.0, &mut rng);
        write_poly(&planks, &format!("p{i}.json"), &q);
    }
    let real = random_polynomial(2, Field::Real, 3, 1.0, &mut rng);
    let real = normalize(&real, &SpaceSpec::real(2, 2.0).unwrap(), &NormOptions::with_seed(0)).unwrap().0;
    let f = write_poly(dir, "f.json", &real);
    let planks = planks.to_string_lossy().into_owned();
    let space3 = "lp:p=2,d=3,field=complex";
    let runs: Vec<Vec<&str>> = vec![
        vec!["norm", "--poly", &f, "--p", "2", "--seed", "7"],
        vec!["constants", "--kind", "eq6", "--field", "real", "--d", "3", "--k", "2,3,4"],
        vec!["constants", "sweep", "--kinds", "eq4,eq6", "--d", "1..4", "--n", "2..16", "--k", "5"],
        vec!["mn-estimate", "--space", "lp:p=2,d=2,field=real", "--n", "2", "--budget", "8", "--seed", "3"],
        vec!["polarization", "--space", "lp:p=2,d=2,field=complex", "--k", "3", "--budget", "8", "--seed", "3"],
        vec!["remez", "sublevel", "--poly", &f, "--p", "2", "--t", "0.1", "--samples", "20000", "--seed", "3"],
        vec!["remez", "lemma8", "--poly", &f, "--p", "2", "--samples", "20000", "--seed", "3"],
        vec![
            "plank",
            "--polys",
            &planks,
            "--space",
            space3,
            "--radii",
            "0.1,0.1,0.05",
            "--regime",
            "lp",
            "--seed",
            "1",
        ],
        vec!["extremal", "--d", "2", "--n", "3", "--k", "1", "--cross-check"],
        vec!["verify-inequality", "--polys", &planks, "--space", space3, "--kind", "eq6", "--seed", "2"],
    ];
    let mut mismatched = Vec::new();
    for args in &runs {
        match (run_cli(args), run_cli(args)) {
            (Ok(a), Ok(b)) if a == b && !a.is_empty() => {}
            (a, b) => mismatched.push(format!("{} ({:?})", args[..2].join(" "), a.err().or(b.err()))),
        }
    }
    verdict(mismatched.is_empty(), format!("{} runs repeated; mismatches {mismatched:?}", runs.len()))
}

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "BST sharpness", Duration::from_secs(1), bst_sharpness),
        (2, "Hilbert equality", Duration::from_secs(1), hilbert_equality),
        (3, "l_1^d extremal family", Duration::from_secs(5), extremal_family),
        (4, "finite-dimensional product inequality", Duration::from_secs(600), theorem_inequality),
        (5, "Hilbert finite-dimensional constant audit", Duration::from_secs(600), prop12_audit),
        (6, "Remez suite", Duration::from_secs(600), remez_suite),
        (7, "plank end-to-end", Duration::from_secs(900), plank_end_to_end),
        (8, "allocation lemmas", Duration::from_secs(60), allocation_lemmas),
        (9, "crossover", Duration::from_secs(1), crossover),
        (10, "CLI determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let pass = v.pass && elapsed <= budget;
        failed += usize::from(!pass);
        println!(
            "[{}] criterion {id:>2} {name}: {} ({:.2}s, budget {}s)",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
