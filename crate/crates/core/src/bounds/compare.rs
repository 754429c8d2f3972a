#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use serde::{Deserialize, Serialize};

use super::{bound_log_value_stats, harmonic, BoundError, BoundKind, DegreeStats};
use crate::poly::Field;

const CROSSOVER_RANGE: (u64, u64) = (2, 1_000_000);

/// `eq4` against `eq6` for `n` real polynomials of common degree `k` on a
/// `d`-dimensional real Hilbert space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub n: u64,
    pub k: u32,
    pub d: usize,
    pub field: Field,
    pub log_eq4: f64,
    pub log_eq6: f64,
    /// The kind with the smaller (stronger) constant; `eq4` on exact ties.
    pub smaller: BoundKind,
    /// Smallest `n` in `[2, 10^6]` at which `eq6` is strictly smaller, found
    /// by bisection; `None` if the order does not flip on that range.
    pub crossover_n: Option<u64>,
    /// Per-unit-degree base of `prop12-stated` divided by `C 2 e d`.
    pub prop12_ratio_printed: f64,
    /// The same base divided by `C 4 e d`, the base of `eq6`.
    pub prop12_ratio_theorem: f64,
}

fn gap(n: u64, k: u32, d: usize) -> f64 {
    let s = DegreeStats::uniform(n, k);
    let eq6 = bound_log_value_stats(BoundKind::FiniteDim, &s, d, Field::Real).expect("admissible");
    let eq4 = bound_log_value_stats(BoundKind::HilbertReal, &s, d, Field::Real).expect("admissible");
    eq6 - eq4
}

pub fn compare_bounds(n: u64, k: u32, d: usize, field: Field) -> Result<CompareReport, BoundError> {
    if field != Field::Real {
        return Err(BoundError::NotApplicable {
            kind: BoundKind::HilbertReal,
            reason: "the comparison is for real spaces",
        });
    }
    if n == 0 {
        return Err(BoundError::EmptyDegrees);
    }
    if k == 0 {
        return Err(BoundError::ZeroDegree);
    }
    if d == 0 {
        return Err(BoundError::MissingDimension(BoundKind::FiniteDim));
    }
    let s = DegreeStats::uniform(n, k);
    let log_eq4 = bound_log_value_stats(BoundKind::HilbertReal, &s, d, field)?;
    let log_eq6 = bound_log_value_stats(BoundKind::FiniteDim, &s, d, field)?;
    let smaller = if log_eq6 < log_eq4 { BoundKind::FiniteDim } else { BoundKind::HilbertReal };

    let (mut lo, mut hi) = CROSSOVER_RANGE;
    let crossover_n = if gap(lo, k, d) < 0.0 || gap(hi, k, d) >= 0.0 {
        None
    } else {
        // Invariant: gap(lo) >= 0 > gap(hi).
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if gap(mid, k, d) < 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    };

    let stated_base = (harmonic(d)? - 4f64.ln()).exp();
    let e_d = core::f64::consts::E * d as f64;
    Ok(CompareReport {
        n,
        k,
        d,
        field,
        log_eq4,
        log_eq6,
        smaller,
        crossover_n,
        prop12_ratio_printed: stated_base / (2.0 * e_d),
        prop12_ratio_theorem: stated_base / (4.0 * e_d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_at_spec_points() {
        let r = compare_bounds(300, 200, 2, Field::Real).unwrap();
        assert_eq!(r.smaller, BoundKind::FiniteDim);
        let r = compare_bounds(100, 200, 2, Field::Real).unwrap();
        assert_eq!(r.smaller, BoundKind::HilbertReal);
        compare_bounds(2, 1, 1, Field::Real).unwrap();
    }

    #[test]
    fn crossover_near_asymptotic_threshold() {
        let r = compare_bounds(300, 1000, 2, Field::Real).unwrap();
        let n = r.crossover_n.unwrap();
        assert!((150..=400).contains(&n), "{n}");
        assert!(gap(n, 1000, 2) < 0.0 && gap(n - 1, 1000, 2) >= 0.0);
    }

    #[test]
    fn printed_ratio_arithmetic() {
        let r = compare_bounds(2, 1, 1, Field::Real).unwrap();
        assert!((r.prop12_ratio_printed - 0.125).abs() < 1e-15);
        assert!((r.prop12_ratio_theorem - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn complex_rejected() {
        assert!(compare_bounds(10, 1, 1, Field::Complex).is_err());
    }
}
