//! Chebyshev polynomials, Remez-type bounds, and Monte-Carlo estimates of
//! sublevel-set measures `mu({z in B_X : |P(z)| <= t})`.
//!
//! Complex polynomials on `C^d` are checked through `Q = |P|^2`, a real
//! polynomial of degree `2k` on the `2d`-dimensional real space underlying
//! `C^d`. Since `|P| <= t` exactly when `Q <= t^2`, the real-space bounds
//! transfer with `(d, k, t)` replaced by `(2d, 2k, t^2)`.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

mod chebyshev;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{harmonic, BoundValue};
use crate::par::map_indexed;
use crate::poly::{Field, Polynomial};
use crate::space::{estimate_sup_norm, sample_point, start_rng, Exponent, NormOptions, SpaceError, SpaceSpec};

pub use chebyshev::{chebyshev_t, chebyshev_t_closed, chebyshev_t_recurrence};

/// Points drawn per Monte-Carlo batch. Batch `b` uses the stream `seed + b`.
pub const BATCH: usize = 4096;

/// Tolerance on `estimate_sup_norm(P) = 1` accepted as "normalized".
pub const NORMALIZATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RemezError {
    #[error("{0}")]
    Domain(&'static str),
    #[error("polynomial is not normalized: estimated norm {0}")]
    NotNormalized(f64),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// `(4 |I| / |V|)^k`.
pub fn remez_univariate_bound(k: u32, interval: f64, subset: f64) -> Result<BoundValue, RemezError> {
    if !(subset > 0.0) {
        return Err(RemezError::Domain("|V| must be positive"));
    }
    if !(subset <= interval) {
        return Err(RemezError::Domain("|V| must not exceed |I|"));
    }
    Ok(BoundValue::from_log(k as f64 * (4.0 * interval / subset).ln()))
}

/// `T_k((1 + (1 - lambda)^{1/d}) / (1 - (1 - lambda)^{1/d}))`.
pub fn brudnyi_ganzburg_bound(k: u32, d: usize, lambda: f64) -> Result<f64, RemezError> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(RemezError::Domain("lambda must lie in (0, 1]"));
    }
    if d == 0 {
        return Err(RemezError::Domain("d must be positive"));
    }
    let s = (1.0 - lambda).powf(1.0 / d as f64);
    Ok(chebyshev_t(k, (1.0 + s) / (1.0 - s)))
}

/// Sampling settings shared by the Monte-Carlo checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloOptions {
    pub samples: usize,
    pub seed: u64,
    /// Options for re-estimating `||P||` when checking normalization.
    pub norm: NormOptions,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        MonteCarloOptions { samples: 100_000, seed: 0, norm: NormOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SublevelEstimate {
    pub t: f64,
    pub measure: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    /// `4d (t/2)^{1/k}` (with the complex substitution applied).
    pub bound: f64,
    /// `measure <= bound + 3 stderr`.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralCheck {
    /// Mean of `min(-ln Q, t_max)` over the ball, where `Q = |P|` (real) or
    /// `|P|^2` (complex).
    pub integral_estimate: f64,
    pub stderr: f64,
    pub t_max: f64,
    /// `k ln(4d) - ln 2 + k` in the real variables.
    pub bound: f64,
    pub pass: bool,
    /// `k (ln 4 + H_d)` in the real variables, for homogeneous `P` on `l_2`.
    pub homogeneous_bound: Option<f64>,
    pub homogeneous_pass: Option<bool>,
    pub samples: usize,
    pub seed: u64,
}

/// Real dimension and degree of the polynomial the bounds are applied to,
/// plus the power taken of `|P|`.
fn real_params(p: &Polynomial, space: &SpaceSpec) -> (usize, u32, f64) {
    match space.field {
        Field::Real => (space.dim, p.degree(), 1.0),
        Field::Complex => (2 * space.dim, 2 * p.degree(), 2.0),
    }
}

fn check_normalized(p: &Polynomial, space: &SpaceSpec, opts: &MonteCarloOptions) -> Result<(), RemezError> {
    let est = estimate_sup_norm(p, space, &opts.norm)?;
    if (est.value - 1.0).abs() > NORMALIZATION_TOL {
        return Err(RemezError::NotNormalized(est.value));
    }
    Ok(())
}

/// `|P(z)|` at `samples` uniform points, in fixed batches.
fn sample_moduli(p: &Polynomial, space: &SpaceSpec, opts: &MonteCarloOptions) -> Vec<f64> {
    let batches = opts.samples.div_ceil(BATCH);
    let chunks = map_indexed(batches, |b| {
        let mut rng = start_rng(opts.seed.wrapping_add(b as u64));
        let len = BATCH.min(opts.samples - b * BATCH);
        (0..len).map(|_| p.evaluate_unchecked(&sample_point(space, &mut rng)).norm()).collect::<Vec<f64>>()
    });
    chunks.concat()
}

/// Estimates `mu(|P| <= t)` for each threshold in `ts` from one shared set of
/// samples, so the estimates are monotone in `t`.
pub fn estimate_sublevel_measures(
    p: &Polynomial,
    space: &SpaceSpec,
    ts: &[f64],
    opts: &MonteCarloOptions,
) -> Result<Vec<SublevelEstimate>, RemezError> {
    space.check_polynomial(p.dim(), p.field())?;
    if ts.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(RemezError::Domain("t must lie in (0, 1)"));
    }
    if opts.samples == 0 {
        return Err(RemezError::Domain("at least one sample is required"));
    }
    if p.degree() == 0 {
        return Err(RemezError::Domain("the polynomial must have positive degree"));
    }
    check_normalized(p, space, opts)?;
    let moduli = sample_moduli(p, space, opts);
    let (d, k, power) = real_params(p, space);
    let n = moduli.len() as f64;
    Ok(ts
        .iter()
        .map(|&t| {
            let hits = moduli.iter().filter(|&&m| m <= t).count() as f64;
            let measure = hits / n;
            let stderr = (measure * (1.0 - measure) / n).sqrt();
            let bound = 4.0 * d as f64 * (t.powf(power) / 2.0).powf(1.0 / k as f64);
            SublevelEstimate {
                t,
                measure,
                stderr,
                samples: moduli.len(),
                seed: opts.seed,
                bound,
                pass: measure <= bound + 3.0 * stderr,
            }
        })
        .collect())
}

pub fn estimate_sublevel_measure(
    p: &Polynomial,
    space: &SpaceSpec,
    t: f64,
    opts: &MonteCarloOptions,
) -> Result<SublevelEstimate, RemezError> {
    Ok(estimate_sublevel_measures(p, space, &[t], opts)?.remove(0))
}

/// Checks `int_0^inf mu(|Q| <= e^{-t}) dt <= k ln(4d) - ln 2 + k`.
///
/// By Fubini the integral up to `t_max` equals the mean of
/// `min(max(-ln |Q|, 0), t_max)` over the ball, which is what is sampled.
pub fn check_lemma8_integral(
    p: &Polynomial,
    space: &SpaceSpec,
    t_max: f64,
    opts: &MonteCarloOptions,
) -> Result<IntegralCheck, RemezError> {
    space.check_polynomial(p.dim(), p.field())?;
    if !(t_max > 0.0) {
        return Err(RemezError::Domain("t_max must be positive"));
    }
    if opts.samples < 2 {
        return Err(RemezError::Domain("at least two samples are required"));
    }
    if p.degree() == 0 {
        return Err(RemezError::Domain("the polynomial must have positive degree"));
    }
    check_normalized(p, space, opts)?;
    let (d, k, power) = real_params(p, space);
    let values: Vec<f64> =
        sample_moduli(p, space, opts).into_iter().map(|m| (-power * m.ln()).clamp(0.0, t_max)).collect();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    let stderr = (var / n).sqrt();
    let kf = k as f64;
    let bound = kf * (4.0 * d as f64).ln() - core::f64::consts::LN_2 + kf;
    let homogeneous_bound = (p.is_homogeneous() && space.p == Exponent::Finite(2.0))
        .then(|| kf * (4f64.ln() + harmonic(d).expect("d >= 1")));
    Ok(IntegralCheck {
        integral_estimate: mean,
        stderr,
        t_max,
        bound,
        pass: mean <= bound + 3.0 * stderr,
        homogeneous_bound,
        homogeneous_pass: homogeneous_bound.map(|b| mean <= b + 3.0 * stderr),
        samples: values.len(),
        seed: opts.seed,
    })
}
