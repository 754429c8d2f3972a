use plankforge_core::poly::random::random_homogeneous;
use plankforge_core::poly::random::random_polynomial;
use plankforge_core::space::{estimate_sup_norm, monomial_norm, sample_ball, start_rng};
use plankforge_core::{Complex64, Exponent, Field, MultiIndex, NormOptions, Polynomial, SpaceSpec};
use rand::Rng;

fn spaces() -> Vec<SpaceSpec> {
    let mut out = Vec::new();
    for field in [Field::Real, Field::Complex] {
        for d in 1..=3 {
            for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Finite(3.5), Exponent::Infinite] {
                out.push(SpaceSpec::new(field, d, p).unwrap());
            }
        }
    }
    out
}

#[test]
fn estimate_is_below_coefficient_sum() {
    let mut rng = start_rng(1);
    for (i, space) in spaces().into_iter().enumerate() {
        let p = random_polynomial(space.dim, space.field, 1 + (i as u32 % 4), 0.7, &mut rng);
        let est = estimate_sup_norm(&p, &space, &NormOptions::with_seed(i as u64)).unwrap();
        assert!(est.value <= p.coefficient_l1() * (1.0 + 1e-12), "{space}");
        assert!(space.norm(&est.argmax) <= 1.0 + 1e-12);
    }
}

#[test]
fn monomials_match_closed_form() {
    let mut rng = start_rng(2);
    let opts = NormOptions::with_seed(9).starts(64);
    for case in 0..40 {
        let d = 1 + case % 4;
        let p = [1.0, 1.5, 2.0, 4.0][case % 4];
        let mut e: Vec<u32> = (0..d).map(|_| rng.random_range(0..4)).collect();
        if e.iter().sum::<u32>() == 0 {
            e[0] = 1;
        }
        if e.iter().sum::<u32>() > 10 {
            continue;
        }
        let space = SpaceSpec::real(d, p).unwrap();
        let poly = Polynomial::monomial(Field::Real, e.clone(), Complex64::new(1.0, 0.0)).unwrap();
        let est = estimate_sup_norm(&poly, &space, &opts).unwrap().value;
        let exact = monomial_norm(&MultiIndex::new(e.clone()), Exponent::Finite(p));
        assert!((est - exact).abs() <= 1e-7 * exact, "{e:?} p={p}: {est} vs {exact}");
    }
}

#[test]
fn scaling_equivariance() {
    let mut rng = start_rng(3);
    for space in spaces() {
        let p = random_polynomial(space.dim, space.field, 3, 0.6, &mut rng);
        let opts = NormOptions::with_seed(4);
        let base = estimate_sup_norm(&p, &space, &opts).unwrap().value;
        for c in [2.0, -0.5, 1e3] {
            let scaled = estimate_sup_norm(&p.scale(c), &space, &opts).unwrap().value;
            assert!((scaled - c.abs() * base).abs() <= 1e-12 * scaled, "{space} c={c}");
        }
    }
}

#[test]
fn homogeneous_argmax_on_sphere() {
    let mut rng = start_rng(4);
    for space in spaces() {
        let p = random_homogeneous(space.dim, space.field, 3, 0.8, &mut rng);
        let est = estimate_sup_norm(&p, &space, &NormOptions::with_seed(5)).unwrap();
        assert!((space.norm(&est.argmax) - 1.0).abs() <= 1e-9, "{space}");
    }
}

#[test]
fn ball_samples_are_inside_and_reproducible() {
    for space in spaces() {
        let a = sample_ball(&space, 500, 17);
        assert_eq!(a, sample_ball(&space, 500, 17));
        assert!(a.iter().all(|z| space.norm(z) <= 1.0 + 1e-12));
    }
    // Radial law: P(||z|| <= r) = r^{real dim}.
    let space = SpaceSpec::complex(2, 2.0).unwrap();
    let pts = sample_ball(&space, 40_000, 3);
    let frac = pts.iter().filter(|z| space.norm(z) <= 0.8).count() as f64 / pts.len() as f64;
    let expected = 0.8f64.powi(4);
    let se = (expected * (1.0 - expected) / pts.len() as f64).sqrt();
    assert!((frac - expected).abs() <= 4.0 * se, "{frac} vs {expected}");
}
