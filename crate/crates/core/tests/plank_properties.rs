use plankforge_core::plank::{
    allocate_lemma4, allocate_lemma7, find_witness, k_limit, lemma4_budget, power_certificate, product_certificate,
    rationalize_lemma5, WitnessOptions,
};
use plankforge_core::poly::random::random_homogeneous;
use plankforge_core::space::start_rng;
use plankforge_core::{Field, NormOptions, PlankInstance, Regime, SpaceSpec};
use proptest::prelude::*;
use rand::Rng;

fn simplex_point<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

#[test]
fn lemma4_certificates_on_random_targets() {
    let mut rng = start_rng(8);
    for _ in 0..2000 {
        let n = rng.random_range(1..=6);
        let budget = lemma4_budget(n);
        let b: Vec<f64> = simplex_point(n, &mut rng).into_iter().map(|x| (x * budget).max(1e-300)).collect();
        let a = allocate_lemma4(&b).unwrap();
        assert!((a.t.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(a.t.iter().all(|&t| t > 0.0));
        assert!(product_certificate(&a.t, &a.b) >= -1e-12, "{b:?} -> {a:?}");
    }
}

#[test]
fn lemma7_certificates_on_random_targets() {
    let mut rng = start_rng(9);
    for _ in 0..2000 {
        let n = rng.random_range(1..=6);
        let k = rng.random_range(0.01..1.0) * k_limit(n);
        let mut b: Vec<f64> = simplex_point(n, &mut rng);
        if n > 1 && rng.random_bool(0.2) {
            b[0] = 0.0;
        }
        let s: f64 = b.iter().sum();
        let b: Vec<f64> = b.iter().map(|x| x / s * n as f64 * k.powi(n as i32)).collect();
        let (a, raw) = allocate_lemma7(&b, k).unwrap();
        assert!(raw.iter().sum::<f64>() <= 1.0 + 1e-12);
        assert!(a.t.iter().all(|&t| t > 0.0));
        assert!(power_certificate(&a.t, &a.b, k) >= -1e-12);
    }
}

proptest! {
    #[test]
    fn small_denominators_are_exact(q in prop::collection::vec(1u64..=10, 2..=4), k in prop::collection::vec(1u32..4, 4)) {
        let den: u64 = q.iter().sum();
        prop_assume!(den <= 32);
        let t: Vec<f64> = q.iter().map(|&x| x as f64 / den as f64).collect();
        let k = &k[..t.len()];
        let cap = 64 * t.len() as u64 * k.iter().map(|&x| x as u64).product::<u64>();
        let r = rationalize_lemma5(&t, k, cap).unwrap();
        prop_assert_eq!(r.max_error, 0.0);
        for (s, t) in r.s.iter().zip(&t) {
            prop_assert!((s - t).abs() < 1e-15);
        }
    }
}

#[test]
fn shrinking_radii_keeps_success_and_product_is_never_formed() {
    let mut rng = start_rng(21);
    let opts = WitnessOptions { norm: NormOptions::with_seed(3).starts(24), r_cap: None };
    for case in 0..20 {
        let d = 2 + case % 2;
        let n = 2 + (case / 2) % 2;
        let space = SpaceSpec::complex(d, [1.0, 1.5, 2.0][case % 3]).unwrap();
        let polys: Vec<_> =
            (0..n).map(|_| random_homogeneous(d, Field::Complex, rng.random_range(1..=3), 0.8, &mut rng)).collect();
        let p = match space.p {
            plankforge_core::Exponent::Finite(p) => p,
            _ => unreachable!(),
        };
        let w = simplex_point(n, &mut rng);
        let radii: Vec<f64> = w.iter().map(|x| (x * 0.9 * lemma4_budget(n)).powf(1.0 / p)).collect();
        let inst = PlankInstance::new(&polys, &radii, space, Regime::Lp, &opts.norm).unwrap();
        let full = find_witness(&inst, &opts).unwrap();
        let max_deg = polys.iter().map(|q| q.degree()).max().unwrap();
        assert_eq!(full.diagnostics.max_materialized_degree, max_deg);
        assert!(full.total_degree > max_deg as u64 || n == 1);

        let half: Vec<f64> = radii.iter().map(|a| a * 0.5).collect();
        let inst_half = PlankInstance::new(&polys, &half, space, Regime::Lp, &opts.norm).unwrap();
        let small = find_witness(&inst_half, &opts).unwrap();
        if full.success {
            assert!(small.success, "case {case}");
        }
        let recomputed = inst.margins(&full.witness).unwrap();
        assert_eq!(recomputed, full.margins);
    }
}
