#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{bound_log_value, BoundError, BoundKind, BoundSpec};
use crate::poly::{Field, Polynomial};
use crate::space::{estimate_sup_norm, Exponent, NormOptions, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub norm: NormOptions,
    /// Relative slack on the right-hand side.
    pub rtol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { norm: NormOptions::default(), rtol: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    /// Failed at first, passed once the product norm was re-estimated with
    /// four times as many starts.
    OptimizerFailure,
    /// Still failing after the retry.
    Violation,
}

/// Outcome of checking `M est(P_1 ... P_n) >= (1 - rtol) prod est(P_i)`.
///
/// Every estimate is a lower bound for its norm, so a true inequality can
/// only fail here through an underestimated product norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductCheck {
    pub kind: BoundKind,
    pub degrees: Vec<u32>,
    pub log_constant: f64,
    pub factor_estimates: Vec<f64>,
    pub product_estimate: f64,
    /// `ln M + ln est(prod)`.
    pub log_lhs: f64,
    /// `sum ln est(P_i)`.
    pub log_rhs: f64,
    /// `log_lhs - log_rhs`; the check requires this to be at least `ln(1 - rtol)`.
    pub log_margin: f64,
    pub status: CheckStatus,
    pub product_starts: usize,
}

/// Whether the kind's hypotheses cover polynomials on `space`.
pub fn check_applicable(kind: BoundKind, space: &SpaceSpec, homogeneous: bool) -> Result<(), BoundError> {
    let fail = |reason| Err(BoundError::NotApplicable { kind, reason });
    let p2 = space.p == Exponent::Finite(2.0);
    let needs_homogeneous = !matches!(kind, BoundKind::Bst | BoundKind::FiniteDim);
    if needs_homogeneous && !homogeneous {
        return fail("the polynomials must be homogeneous");
    }
    match kind {
        BoundKind::Bst if space.field != Field::Complex => fail("needs a complex space"),
        BoundKind::HilbertComplex if space.field != Field::Complex || !p2 => fail("needs complex l_2"),
        BoundKind::HilbertReal if space.field != Field::Real || !p2 => fail("needs real l_2"),
        BoundKind::Lp if space.field != Field::Complex => fail("needs a complex space"),
        BoundKind::Lp if !matches!(space.p, Exponent::Finite(p) if p <= 2.0) => fail("needs 1 <= p <= 2"),
        BoundKind::HilbertFiniteStated | BoundKind::HilbertFiniteDerived if !p2 => fail("needs l_2"),
        _ => Ok(()),
    }
}

pub fn verify_product_inequality(
    polys: &[Polynomial],
    space: &SpaceSpec,
    kind: BoundKind,
    opts: &VerifyOptions,
) -> Result<ProductCheck, BoundError> {
    if polys.is_empty() {
        return Err(BoundError::EmptyDegrees);
    }
    for p in polys {
        space.check_polynomial(p.dim(), p.field())?;
        if p.is_zero() {
            return Err(crate::poly::PolyError::ZeroPolynomial.into());
        }
    }
    check_applicable(kind, space, polys.iter().all(|p| p.is_homogeneous()))?;
    let degrees: Vec<u32> = polys.iter().map(|p| p.degree()).collect();
    if degrees.contains(&0) {
        return Err(BoundError::ZeroDegree);
    }
    let spec = BoundSpec {
        kind,
        degrees: degrees.clone(),
        dim: Some(space.dim),
        p: Some(space.p.value()),
        field: space.field,
    };
    let log_constant = bound_log_value(&spec)?;

    let mut factor_estimates = Vec::with_capacity(polys.len());
    for p in polys {
        factor_estimates.push(estimate_sup_norm(p, space, &opts.norm)?.value);
    }
    let mut product = polys[0].clone();
    for p in &polys[1..] {
        product = product.multiply(p)?;
    }
    let log_rhs: f64 = factor_estimates.iter().map(|v| v.ln()).sum();
    let threshold = (1.0 - opts.rtol).ln();

    let starts = opts.norm.starts_for(space);
    let mut product_estimate = estimate_sup_norm(&product, space, &opts.norm)?.value;
    let mut product_starts = starts;
    let mut log_lhs = log_constant + product_estimate.ln();
    let mut status = CheckStatus::Pass;
    if log_lhs - log_rhs < threshold {
        product_starts = 4 * starts;
        let retry = opts.norm.starts(product_starts);
        product_estimate = product_estimate.max(estimate_sup_norm(&product, space, &retry)?.value);
        log_lhs = log_constant + product_estimate.ln();
        status = if log_lhs - log_rhs < threshold { CheckStatus::Violation } else { CheckStatus::OptimizerFailure };
    }
    Ok(ProductCheck {
        kind,
        degrees,
        log_constant,
        factor_estimates,
        product_estimate,
        log_lhs,
        log_rhs,
        log_margin: log_lhs - log_rhs,
        status,
        product_starts,
    })
}
