//! Random searches for tuples with a large norm ratio.
//!
//! Both searches spend about 70% of the budget on independent random
//! candidates and the rest on perturbing the best one found. Candidate `i`
//! of the random phase draws from the stream `seed + i`, and the merge keeps
//! the first best, so results do not depend on scheduling. Every ratio is
//! computed from sup-norm estimates, which are lower bounds; the reported
//! value is therefore an estimate of a lower bound for the optimal constant,
//! not a certified one.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::BoundError;
use crate::par::map_indexed;
use crate::poly::random::{gaussian, random_homogeneous};
use crate::poly::Polynomial;
use crate::space::{estimate_sup_norm, start_rng, NormOptions, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Number of candidate tuples to evaluate.
    pub budget: usize,
    pub seed: u64,
    pub norm: NormOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 64, seed: 0, norm: NormOptions::default() }
    }
}

/// Best `(prod ||P_i|| / ||prod P_i||)^{1 / sum k_i}` found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MnEstimate {
    pub ratio: f64,
    pub log_ratio: f64,
    pub degrees: Vec<u32>,
    pub polys: Vec<Polynomial>,
    pub evaluations: usize,
    pub seed: u64,
}

/// Best `prod ||phi_i|| / ||prod phi_i||` over `k` linear functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizationEstimate {
    pub constant: f64,
    pub log_constant: f64,
    /// Coefficient vectors, each of dual norm one.
    pub functionals: Vec<Vec<Complex64>>,
    pub evaluations: usize,
    pub seed: u64,
}

fn product(polys: &[Polynomial]) -> Polynomial {
    polys[1..].iter().fold(polys[0].clone(), |acc, p| acc.multiply(p).expect("same space"))
}

fn log_ratio(polys: &[Polynomial], space: &SpaceSpec, opts: &NormOptions) -> f64 {
    let mut num = 0.0;
    let mut total = 0u32;
    for p in polys {
        num += estimate_sup_norm(p, space, opts).expect("checked").value.ln();
        total += p.degree();
    }
    let den = estimate_sup_norm(&product(polys), space, opts).expect("checked").value.ln();
    let r = (num - den) / total as f64;
    if r.is_finite() {
        r
    } else {
        f64::NEG_INFINITY
    }
}

fn perturb(p: &Polynomial, sigma: f64, rng: &mut ChaCha8Rng) -> Polynomial {
    let terms: Vec<(Vec<u32>, Complex64)> = p.terms().map(|(a, c)| (a.exponents().to_vec(), *c)).collect();
    let drop = terms.len() > 1 && rng.random::<f64>() < 0.2;
    let skip = if drop { rng.random_range(0..terms.len()) } else { usize::MAX };
    let scale = terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let out = terms.into_iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, (a, c))| {
        let c = if drop { c } else { c + gaussian(p.field(), rng) * (sigma * scale) };
        (a, c)
    });
    let q = Polynomial::from_terms(p.dim(), p.field(), out).expect("same shape");
    if q.is_zero() || q.degree() != p.degree() {
        p.clone()
    } else {
        q
    }
}

fn coordinate_tuple(space: &SpaceSpec, n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::variable(space.dim, space.field, i % space.dim).expect("index in range")).collect()
}

fn check_space(space: &SpaceSpec, polys: &[Polynomial]) -> Result<(), BoundError> {
    for p in polys {
        space.check_polynomial(p.dim(), p.field())?;
        if p.is_zero() || p.degree() == 0 {
            return Err(BoundError::ZeroDegree);
        }
    }
    Ok(())
}

struct Best<T> {
    item: T,
    score: f64,
}

fn hill_climb<T: Clone>(
    mut best: Best<T>,
    steps: usize,
    seed: u64,
    mut mutate: impl FnMut(&T, f64, &mut ChaCha8Rng) -> T,
    score: impl Fn(&T) -> f64,
) -> Best<T> {
    let mut rng = start_rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut sigma = 0.3;
    for _ in 0..steps {
        let cand = mutate(&best.item, sigma, &mut rng);
        let s = score(&cand);
        if s > best.score {
            best = Best { item: cand, score: s };
        } else {
            sigma = (sigma * 0.7).max(1e-3);
        }
    }
    best
}

fn split_budget(budget: usize) -> (usize, usize) {
    let budget = budget.max(1);
    let random = (budget * 7).div_ceil(10).max(1);
    (random, budget - random)
}

/// Searches random homogeneous `n`-tuples with degrees in `1..=degree_cap`.
/// The first candidate is the tuple of coordinate functionals
/// `z_1, ..., z_d, z_1, ...`.
pub fn estimate_mn(
    space: &SpaceSpec,
    n: usize,
    degree_cap: u32,
    opts: &SearchOptions,
) -> Result<MnEstimate, BoundError> {
    if n == 0 {
        return Err(BoundError::EmptyDegrees);
    }
    if degree_cap == 0 {
        return Err(BoundError::ZeroDegree);
    }
    run_mn(space, coordinate_tuple(space, n), Some(degree_cap), opts)
}

/// As [`estimate_mn`], starting from `initial` and keeping its degrees.
pub fn estimate_mn_from(
    space: &SpaceSpec,
    initial: Vec<Polynomial>,
    opts: &SearchOptions,
) -> Result<MnEstimate, BoundError> {
    if initial.is_empty() {
        return Err(BoundError::EmptyDegrees);
    }
    run_mn(space, initial, None, opts)
}

fn run_mn(
    space: &SpaceSpec,
    initial: Vec<Polynomial>,
    degree_cap: Option<u32>,
    opts: &SearchOptions,
) -> Result<MnEstimate, BoundError> {
    check_space(space, &initial)?;
    let n = initial.len();
    if n == 1 {
        return Ok(MnEstimate {
            ratio: 1.0,
            log_ratio: 0.0,
            degrees: vec![initial[0].degree()],
            polys: initial,
            evaluations: 0,
            seed: opts.seed,
        });
    }
    let fixed: Vec<u32> = initial.iter().map(|p| p.degree()).collect();
    let (random, refine) = split_budget(opts.budget);
    let scores = map_indexed(random, |i| {
        if i == 0 {
            return (initial.clone(), log_ratio(&initial, space, &opts.norm));
        }
        let mut rng = start_rng(opts.seed.wrapping_add(i as u64));
        let polys: Vec<Polynomial> = (0..n)
            .map(|j| {
                let k = match degree_cap {
                    Some(cap) => rng.random_range(1..=cap),
                    None => fixed[j],
                };
                let density = rng.random_range(0.3..=1.0);
                random_homogeneous(space.dim, space.field, k, density, &mut rng)
            })
            .collect();
        let s = log_ratio(&polys, space, &opts.norm);
        (polys, s)
    });
    let mut best = 0;
    for (i, (_, s)) in scores.iter().enumerate() {
        if *s > scores[best].1 {
            best = i;
        }
    }
    let (item, score) = scores.into_iter().nth(best).expect("non-empty");
    let found = hill_climb(
        Best { item, score },
        refine,
        opts.seed,
        |polys: &Vec<Polynomial>, sigma, rng| {
            let j = rng.random_range(0..polys.len());
            let mut next = polys.clone();
            next[j] = perturb(&polys[j], sigma, rng);
            next
        },
        |polys| log_ratio(polys, space, &opts.norm),
    );
    Ok(MnEstimate {
        ratio: found.score.exp(),
        log_ratio: found.score,
        degrees: found.item.iter().map(|p| p.degree()).collect(),
        polys: found.item,
        evaluations: random + refine,
        seed: opts.seed,
    })
}

fn functional(space: &SpaceSpec, a: &[Complex64]) -> Polynomial {
    let terms = (0..space.dim).map(|j| {
        let mut e = vec![0; space.dim];
        e[j] = 1;
        (e, a[j])
    });
    Polynomial::from_terms(space.dim, space.field, terms).expect("field-consistent coefficients")
}

fn normalized(space: &SpaceSpec, mut a: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let nu = space.dual_norm(&a);
    if nu == 0.0 || !nu.is_finite() {
        return None;
    }
    for v in a.iter_mut() {
        *v /= nu;
    }
    Some(a)
}

fn log_polarization(space: &SpaceSpec, funcs: &[Vec<Complex64>], opts: &NormOptions) -> f64 {
    let polys: Vec<Polynomial> = funcs.iter().map(|a| functional(space, a)).collect();
    let v = estimate_sup_norm(&product(&polys), space, opts).expect("checked").value;
    let r = -v.ln();
    if r.is_finite() {
        r
    } else {
        f64::NEG_INFINITY
    }
}

/// Searches `k`-tuples of dual-norm-one functionals; the first candidate is
/// the coordinate functionals `z_1, ..., z_d, z_1, ...`.
pub fn estimate_polarization_constant(
    space: &SpaceSpec,
    k: usize,
    opts: &SearchOptions,
) -> Result<PolarizationEstimate, BoundError> {
    if k == 0 {
        return Err(BoundError::EmptyDegrees);
    }
    let one = Complex64::new(1.0, 0.0);
    let initial: Vec<Vec<Complex64>> = (0..k)
        .map(|i| {
            let mut a = vec![Complex64::new(0.0, 0.0); space.dim];
            a[i % space.dim] = one;
            a
        })
        .collect();
    if k == 1 {
        return Ok(PolarizationEstimate {
            constant: 1.0,
            log_constant: 0.0,
            functionals: initial,
            evaluations: 0,
            seed: opts.seed,
        });
    }
    let (random, refine) = split_budget(opts.budget);
    let scores = map_indexed(random, |i| {
        if i == 0 {
            return (initial.clone(), log_polarization(space, &initial, &opts.norm));
        }
        let mut rng = start_rng(opts.seed.wrapping_add(i as u64));
        let funcs: Vec<Vec<Complex64>> = (0..k)
            .map(|_| loop {
                let a: Vec<Complex64> = (0..space.dim).map(|_| gaussian(space.field, &mut rng)).collect();
                if let Some(a) = normalized(space, a) {
                    break a;
                }
            })
            .collect();
        let s = log_polarization(space, &funcs, &opts.norm);
        (funcs, s)
    });
    let mut best = 0;
    for (i, (_, s)) in scores.iter().enumerate() {
        if *s > scores[best].1 {
            best = i;
        }
    }
    let (item, score) = scores.into_iter().nth(best).expect("non-empty");
    let found = hill_climb(
        Best { item, score },
        refine,
        opts.seed,
        |funcs: &Vec<Vec<Complex64>>, sigma, rng| {
            let j = rng.random_range(0..funcs.len());
            let mut next = funcs.clone();
            let moved: Vec<Complex64> = funcs[j].iter().map(|c| c + gaussian(space.field, rng) * sigma).collect();
            if let Some(a) = normalized(space, moved) {
                next[j] = a;
            }
            next
        },
        |funcs| log_polarization(space, funcs, &opts.norm),
    );
    Ok(PolarizationEstimate {
        constant: found.score.exp(),
        log_constant: found.score,
        functionals: found.item,
        evaluations: random + refine,
        seed: opts.seed,
    })
}
