//! Uniform sampling of `l_p` unit balls.
//!
//! For finite `p`, draw each coordinate block `w_i` with density proportional
//! to `exp(-|w_i|^p)` and an independent `E ~ Exp(1)`; then
//! `w / (sum |w_i|^p + E)^{1/p}` is uniform on the ball. Real blocks are
//! one-dimensional (`|w|^p ~ Gamma(1/p)`), complex blocks are planar
//! (`|w|^p ~ Gamma(2/p)`, uniform phase). For `p = inf` the ball is a product
//! of intervals or discs and is sampled coordinatewise.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use super::{Exponent, SpaceSpec};
use crate::poly::Field;

/// The generator used for every seeded stream in the crate.
pub fn start_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_point<R: Rng + ?Sized>(space: &SpaceSpec, rng: &mut R) -> Vec<Complex64> {
    let d = space.dim;
    match space.p {
        Exponent::Infinite => (0..d)
            .map(|_| match space.field {
                Field::Real => Complex64::new(rng.random_range(-1.0..=1.0), 0.0),
                Field::Complex => {
                    let r = rng.random::<f64>().sqrt();
                    Complex64::from_polar(r, 2.0 * PI * rng.random::<f64>())
                }
            })
            .collect(),
        Exponent::Finite(p) => {
            let shape = match space.field {
                Field::Real => 1.0 / p,
                Field::Complex => 2.0 / p,
            };
            let gamma = Gamma::new(shape, 1.0).expect("positive shape");
            let mut total = 0.0;
            let mut w = Vec::with_capacity(d);
            for _ in 0..d {
                let g: f64 = gamma.sample(rng);
                total += g;
                let r = g.powf(1.0 / p);
                w.push(match space.field {
                    Field::Real => {
                        if rng.random::<bool>() {
                            Complex64::new(r, 0.0)
                        } else {
                            Complex64::new(-r, 0.0)
                        }
                    }
                    Field::Complex => Complex64::from_polar(r, 2.0 * PI * rng.random::<f64>()),
                });
            }
            let e: f64 = Exp1.sample(rng);
            let denom = (total + e).powf(1.0 / p);
            w.into_iter().map(|v| v / denom).collect()
        }
    }
}

/// `n` i.i.d. uniform points of the unit ball, deterministic in `seed`.
pub fn sample_ball(space: &SpaceSpec, n: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = start_rng(seed);
    (0..n).map(|_| sample_point(space, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_interval_mean_modulus() {
        let s = SpaceSpec::real(1, 2.0).unwrap();
        let pts = sample_ball(&s, 100_000, 11);
        let mean = pts.iter().map(|x| x[0].norm()).sum::<f64>() / pts.len() as f64;
        assert!((mean - 0.5).abs() < 0.01, "{mean}");
    }

    #[test]
    fn l1_square_half_space() {
        let s = SpaceSpec::real(2, 1.0).unwrap();
        let pts = sample_ball(&s, 100_000, 12);
        let frac = pts.iter().filter(|x| x[0].re > 0.0).count() as f64 / pts.len() as f64;
        assert!((frac - 0.5).abs() < 0.01, "{frac}");
    }

    #[test]
    fn l2_disc_inner_radius() {
        let s = SpaceSpec::real(2, 2.0).unwrap();
        let pts = sample_ball(&s, 100_000, 13);
        let frac = pts.iter().filter(|x| s.norm(x) <= 0.5).count() as f64 / pts.len() as f64;
        assert!((frac - 0.25).abs() < 0.01, "{frac}");
    }

    #[test]
    fn samples_stay_in_ball() {
        for spec in [
            "lp:p=1,d=3,field=real",
            "lp:p=1.5,d=2,field=complex",
            "lp:p=inf,d=3,field=complex",
            "lp:p=3,d=4,field=real",
        ] {
            let s: SpaceSpec = spec.parse().unwrap();
            for x in sample_ball(&s, 2000, 5) {
                assert!(s.norm(&x) <= 1.0 + 1e-12);
                if s.field == Field::Real {
                    assert!(x.iter().all(|v| v.im == 0.0));
                }
            }
        }
    }

    // Volume of the radius-r ball scales as r^{real dim}; for complex l_1^1
    // (the unit disc) the inner half-radius disc carries a quarter of the mass.
    #[test]
    fn complex_blocks_are_uniform_discs() {
        let s = SpaceSpec::complex(1, 1.0).unwrap();
        let pts = sample_ball(&s, 100_000, 14);
        let frac = pts.iter().filter(|x| x[0].norm() <= 0.5).count() as f64 / pts.len() as f64;
        assert!((frac - 0.25).abs() < 0.01, "{frac}");
        let s3 = SpaceSpec::complex(2, 3.0).unwrap();
        let pts = sample_ball(&s3, 100_000, 15);
        let frac = pts.iter().filter(|x| s3.norm(x) <= 0.5).count() as f64 / pts.len() as f64;
        assert!((frac - 0.0625).abs() < 0.005, "{frac}");
    }

    #[test]
    fn deterministic_in_seed() {
        let s = SpaceSpec::complex(3, 1.5).unwrap();
        assert_eq!(sample_ball(&s, 10, 99), sample_ball(&s, 10, 99));
        assert_ne!(sample_ball(&s, 10, 99), sample_ball(&s, 10, 100));
    }
}
