#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ascent::{maximize, LogObjective};
use super::{SpaceError, SpaceSpec};
use crate::poly::{PolyError, Polynomial};

/// Settings for multi-start sup-norm estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormOptions {
    /// Number of starts; `None` means `32 * d`.
    pub starts: Option<usize>,
    pub max_iters: usize,
    /// Stop a start once the objective improves by less than
    /// `tol * max(1, |ln F|)` in one step.
    pub tol: f64,
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions { starts: None, max_iters: 500, tol: 1e-12, seed: 0 }
    }
}

impl NormOptions {
    pub fn with_seed(seed: u64) -> Self {
        NormOptions { seed, ..Self::default() }
    }

    pub fn starts(mut self, starts: usize) -> Self {
        self.starts = Some(starts);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn starts_for(&self, space: &SpaceSpec) -> usize {
        self.starts.unwrap_or(32 * space.dim)
    }
}

/// A lower bound for `sup_{B_X} |P|` together with the point attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// `|P(argmax)|`.
    pub value: f64,
    pub log_value: f64,
    pub argmax: Vec<Complex64>,
    pub starts: usize,
    pub converged_fraction: f64,
    pub seed: u64,
}

/// `ln |P|` as an ascent objective.
pub struct SinglePolynomial<'a>(pub &'a Polynomial);

impl LogObjective for SinglePolynomial<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    fn log_value(&self, z: &[Complex64]) -> f64 {
        self.0.evaluate_unchecked(z).norm().ln()
    }

    fn log_value_and_gradient(&self, z: &[Complex64]) -> (f64, Vec<Complex64>) {
        let (v, g) = self.0.value_and_gradient_unchecked(z);
        let inv = v.inv();
        (v.norm().ln(), g.into_iter().map(|gj| gj * inv).collect())
    }
}

/// Estimates `||P|| = sup_{z in B_X} |P(z)|` from below by multi-start ascent
/// on `ln |P|`. The value is always attained at the returned point, so it
/// never exceeds the true norm. The search path depends on `P` only up to a
/// positive scalar, so `||cP||` is estimated as `|c|` times `||P||` up to
/// rounding in the coefficients.
pub fn estimate_sup_norm(p: &Polynomial, space: &SpaceSpec, opts: &NormOptions) -> Result<NormEstimate, SpaceError> {
    space.check_polynomial(p.dim(), p.field())?;
    let starts = opts.starts_for(space).max(1);
    if p.is_zero() {
        return Ok(NormEstimate {
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            argmax: vec![Complex64::new(0.0, 0.0); space.dim],
            starts,
            converged_fraction: 1.0,
            seed: opts.seed,
        });
    }
    // Optimize a copy whose largest coefficient lies in [1, 2): multiplying
    // by a power of two is exact, and the stopping rule then sees the same
    // objective for P and cP.
    let largest = p.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let shift = largest.log2().floor();
    let work = if shift == 0.0 { p.clone() } else { p.scale((-shift).exp2()) };
    let out = maximize(&SinglePolynomial(&work), space, opts);
    let value = p.evaluate_unchecked(&out.point).norm();
    Ok(NormEstimate {
        value,
        log_value: value.ln(),
        argmax: out.point,
        starts: out.starts,
        converged_fraction: out.converged_fraction,
        seed: opts.seed,
    })
}

/// Divides `p` by its estimated norm. Since the estimate is a lower bound,
/// the true norm of the result is at least one.
pub fn normalize(
    p: &Polynomial,
    space: &SpaceSpec,
    opts: &NormOptions,
) -> Result<(Polynomial, NormEstimate), SpaceError> {
    let est = estimate_sup_norm(p, space, opts)?;
    if est.value == 0.0 {
        return Err(SpaceError::Poly(PolyError::ZeroPolynomial));
    }
    Ok((p.scale(1.0 / est.value), est))
}
