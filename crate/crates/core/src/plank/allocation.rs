//! Simplex weights `t` that dominate given targets `b`.
//!
//! Two certificates are used:
//!
//! * product form: `sum_j t_j ln t_j >= t_i ln b_i` for every `i`, i.e.
//!   `prod_j t_j^{t_j} >= b_i^{t_i}`;
//! * power form: `K^{1/t_i} >= b_i` for every `i`.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::start_rng;

/// Relative tolerance on the prescribed sum of `b`.
pub const BUDGET_RTOL: f64 = 1e-12;
/// A returned allocation never has a certificate below this.
pub const FEASIBILITY_TOL: f64 = -1e-9;
/// Closed-form and symmetric candidates are accepted at this certificate.
pub const CERTIFICATE_TOL: f64 = -1e-12;

const RESTARTS: usize = 64;
const SUBGRADIENT_STEPS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AllocationError {
    #[error("{0}")]
    InvalidInput(&'static str),
    #[error("targets sum to {sum}, expected {expected}")]
    BudgetMismatch { sum: f64, expected: f64 },
    #[error("no feasible weights found (best certificate {certificate:e})")]
    Infeasible { certificate: f64 },
    #[error("sum of s_i is {0}, above 1")]
    ExponentSumAboveOne(f64),
    #[error("K = {k} is outside (0, {limit}]")]
    KOutOfRange { k: f64, limit: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AllocationMethod {
    ClosedForm,
    NumericFallback,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    pub b: Vec<f64>,
    pub t: Vec<f64>,
    /// The scalar `c` of the inverse-log construction, when it is defined.
    pub c: Option<f64>,
    pub method: AllocationMethod,
    /// Smallest slack of the certificate over `i`; nonnegative up to rounding.
    pub certificate: f64,
}

/// `min_i (sum_j t_j ln t_j - t_i ln b_i)`, with `0 ln 0 = 0`.
pub fn product_certificate(t: &[f64], b: &[f64]) -> f64 {
    let entropy: f64 = t.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum();
    t.iter().zip(b).map(|(&ti, &bi)| entropy - ti * bi.ln()).fold(f64::INFINITY, f64::min)
}

/// `min_i (ln K / t_i - ln b_i)` over the indices with `b_i > 0`.
pub fn power_certificate(t: &[f64], b: &[f64], k: f64) -> f64 {
    t.iter().zip(b).filter(|(_, &bi)| bi > 0.0).map(|(&ti, &bi)| k.ln() / ti - bi.ln()).fold(f64::INFINITY, f64::min)
}

fn check_budget(b: &[f64], expected: f64) -> Result<(), AllocationError> {
    let sum: f64 = b.iter().sum();
    if (sum - expected).abs() > BUDGET_RTOL * expected {
        return Err(AllocationError::BudgetMismatch { sum, expected });
    }
    Ok(())
}

/// `1 / n^{n-1}`.
pub fn lemma4_budget(n: usize) -> f64 {
    let nf = n as f64;
    (-(nf - 1.0) * nf.ln()).exp()
}

/// The scalar `c` with `ln c = (-1 - sum a_i ln a_i) / sum a_i`, where
/// `a_i = -1 / ln b_i`.
fn inverse_log_scalar(invlog: &[f64]) -> f64 {
    let sum: f64 = invlog.iter().sum();
    let ent: f64 = invlog.iter().map(|a| a * a.ln()).sum();
    ((-1.0 - ent) / sum).exp()
}

/// Weights `t` on the simplex with `prod_j t_j^{t_j} >= b_i^{t_i}` for every
/// `i`, given `b_i > 0` summing to `1 / n^{n-1}`.
///
/// * `n = 1`: `t = (1)`.
/// * `n = 2`: `t = (1/2, 1/2)` when that is certified.
/// * `n >= 3` with every `b_i <= e^-2`: `t_i` proportional to
///   `-1 / ln b_i`, which equalizes all the margins.
///
/// Anything uncertified falls through to a multi-start projected
/// subgradient search on `min_i (sum_j t_j ln t_j - t_i ln b_i)` whose first
/// start is the equal-margin point.
pub fn allocate_lemma4(b: &[f64]) -> Result<Allocation, AllocationError> {
    let n = b.len();
    if n == 0 {
        return Err(AllocationError::InvalidInput("no targets"));
    }
    if b.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(AllocationError::InvalidInput("targets must be positive"));
    }
    check_budget(b, lemma4_budget(n))?;
    let b = b.to_vec();
    if n == 1 {
        return Ok(Allocation { b, t: vec![1.0], c: Some(0.0), method: AllocationMethod::Symmetric, certificate: 0.0 });
    }
    let invlog: Vec<f64> = b.iter().map(|x| -1.0 / x.ln()).collect();
    let c = Some(inverse_log_scalar(&invlog));
    let sum: f64 = invlog.iter().sum();
    let equal_margin: Vec<f64> = invlog.iter().map(|a| a / sum).collect();

    if n == 2 {
        let half = vec![0.5, 0.5];
        let cert = product_certificate(&half, &b);
        if cert >= CERTIFICATE_TOL {
            return Ok(Allocation { b, t: half, c, method: AllocationMethod::Symmetric, certificate: cert });
        }
    } else if b.iter().all(|&x| x <= (-2.0f64).exp()) {
        let t = if invlog.iter().all(|&a| a == invlog[0]) { vec![1.0 / n as f64; n] } else { equal_margin.clone() };
        let cert = product_certificate(&t, &b);
        if cert >= CERTIFICATE_TOL {
            return Ok(Allocation { b, t, c, method: AllocationMethod::ClosedForm, certificate: cert });
        }
    }

    let (t, cert) = numeric_max_min(&b, &equal_margin);
    if cert < FEASIBILITY_TOL {
        return Err(AllocationError::Infeasible { certificate: cert });
    }
    Ok(Allocation { b, t, c, method: AllocationMethod::NumericFallback, certificate: cert })
}

/// Euclidean projection onto `{x : x_i >= floor, sum x_i = 1}`.
fn project_simplex(v: &[f64], floor: f64) -> Vec<f64> {
    let n = v.len();
    let mass = 1.0 - floor * n as f64;
    let shifted: Vec<f64> = v.iter().map(|x| x - floor).collect();
    let mut u = shifted.clone();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        acc += uj;
        let cand = (acc - mass) / (j + 1) as f64;
        if uj - cand > 0.0 {
            theta = cand;
        }
    }
    shifted.iter().map(|x| (x - theta).max(0.0) + floor).collect()
}

fn numeric_max_min(b: &[f64], first: &[f64]) -> (Vec<f64>, f64) {
    let n = b.len();
    let ln_b: Vec<f64> = b.iter().map(|x| x.ln()).collect();
    let floor = 1e-12;
    let mut best_t = first.to_vec();
    let mut best = product_certificate(first, b);
    for start in 0..RESTARTS {
        let mut t = if start == 0 {
            first.to_vec()
        } else {
            let mut rng = start_rng(start as u64);
            let raw: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / s).collect()
        };
        for step in 0..SUBGRADIENT_STEPS {
            let entropy: f64 = t.iter().map(|&x| x * x.ln()).sum();
            let mut active = 0;
            let mut value = f64::INFINITY;
            for i in 0..n {
                let m = entropy - t[i] * ln_b[i];
                if m < value {
                    value = m;
                    active = i;
                }
            }
            if value > best {
                best = value;
                best_t.clone_from(&t);
            }
            let eta = 0.05 / ((step + 1) as f64).sqrt();
            let moved: Vec<f64> = (0..n)
                .map(|j| {
                    let mut g = t[j].ln() + 1.0;
                    if j == active {
                        g -= ln_b[j];
                    }
                    t[j] + eta * g
                })
                .collect();
            t = project_simplex(&moved, floor);
        }
        let value = product_certificate(&t, b);
        if value > best {
            best = value;
            best_t = t;
        }
    }
    (best_t, best)
}

/// Weights `t` on the simplex with `K^{1/t_i} >= b_i`, given `b_i >= 0`
/// summing to `n K^n` and `0 < K <= (n e^2)^{-1/n}`.
///
/// Starts from `s_i = ln K / ln b_i` (`0` where `b_i = 0`) and pads up to a
/// sum of one: proportionally to `s` when every `b_i > 0`; otherwise half of
/// the remainder goes proportionally to the positive entries and half is
/// split equally among the zero entries, so every `t_i` is positive.
pub fn allocate_lemma7(b: &[f64], k: f64) -> Result<(Allocation, Vec<f64>), AllocationError> {
    let n = b.len();
    if n == 0 {
        return Err(AllocationError::InvalidInput("no targets"));
    }
    if b.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(AllocationError::InvalidInput("targets must be nonnegative"));
    }
    let nf = n as f64;
    let limit = (-(nf.ln() + 2.0) / nf).exp();
    if !(k > 0.0) || k > limit * (1.0 + BUDGET_RTOL) {
        return Err(AllocationError::KOutOfRange { k, limit });
    }
    check_budget(b, nf * k.powi(n as i32))?;
    let s: Vec<f64> = b.iter().map(|&x| if x > 0.0 { k.ln() / x.ln() } else { 0.0 }).collect();
    let sum_s: f64 = s.iter().sum();
    if sum_s > 1.0 + 1e-12 {
        return Err(AllocationError::ExponentSumAboveOne(sum_s));
    }
    let zeros = b.iter().filter(|&&x| x == 0.0).count();
    let t: Vec<f64> = if zeros == 0 {
        s.iter().map(|x| x / sum_s).collect()
    } else {
        let rem = 1.0 - sum_s;
        if !(rem > 0.0) {
            return Err(AllocationError::ExponentSumAboveOne(sum_s));
        }
        s.iter().map(|&x| if x > 0.0 { x + 0.5 * rem * x / sum_s } else { 0.5 * rem / zeros as f64 }).collect()
    };
    let certificate = power_certificate(&t, b, k);
    let alloc = Allocation { b: b.to_vec(), t, c: None, method: AllocationMethod::ClosedForm, certificate };
    Ok((alloc, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three() {
        let b = [1.0 / 27.0; 3];
        let a = allocate_lemma4(&b).unwrap();
        assert_eq!(a.method, AllocationMethod::ClosedForm);
        for t in &a.t {
            assert!((t - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!((a.c.unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!(a.certificate.abs() < 1e-12);
    }

    #[test]
    fn two_planks() {
        let a = allocate_lemma4(&[0.25, 0.25]).unwrap();
        assert_eq!(a.method, AllocationMethod::Symmetric);
        assert_eq!(a.t, vec![0.5, 0.5]);
        assert!((a.c.unwrap() - 2f64.ln()).abs() < 1e-12);

        // (1/2, 1/2) fails here because sqrt(3/8) > 1/2.
        assert!(product_certificate(&[0.5, 0.5], &[0.375, 0.125]) < 0.0);
        let a = allocate_lemma4(&[0.375, 0.125]).unwrap();
        assert_eq!(a.method, AllocationMethod::NumericFallback);
        assert!(a.certificate >= 0.0);
        assert!(product_certificate(&a.t, &a.b) >= 0.0);
        assert!((a.t.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_confirms_two_plank_feasibility() {
        let b = [0.375, 0.125];
        let best = (1..1000)
            .map(|i| {
                let x = i as f64 / 1000.0;
                product_certificate(&[x, 1.0 - x], &b)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(best >= 0.0);
        assert!(allocate_lemma4(&b).unwrap().certificate >= best - 1e-9);
    }

    #[test]
    fn single_plank() {
        let a = allocate_lemma4(&[1.0]).unwrap();
        assert_eq!(a.t, vec![1.0]);
    }

    #[test]
    fn rejects_bad_budget() {
        assert!(matches!(allocate_lemma4(&[0.2, 0.2]), Err(AllocationError::BudgetMismatch { .. })));
        assert!(allocate_lemma4(&[0.5, 0.0]).is_err());
    }

    #[test]
    fn simplex_projection() {
        let p = project_simplex(&[0.9, 0.9, -1.0], 0.0);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(p, vec![0.5, 0.5, 0.0]);
    }

    #[test]
    fn lemma7_examples() {
        let (a, s) = allocate_lemma7(&[0.04, 0.04], 0.2).unwrap();
        assert!((s[0] - 0.5).abs() < 1e-12 && (s[1] - 0.5).abs() < 1e-12);
        assert!((a.t[0] - 0.5).abs() < 1e-12);
        assert!(a.certificate.abs() < 1e-12);

        let (a, s) = allocate_lemma7(&[0.08, 0.0], 0.2).unwrap();
        assert!((s[0] - 0.2f64.ln() / 0.08f64.ln()).abs() < 1e-15);
        assert_eq!(s[1], 0.0);
        assert!(a.t[0] > s[0] && a.t[1] > 0.0);
        assert!((a.t.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(a.certificate > 0.0);

        let (a, _) = allocate_lemma7(&[0.1], 0.1).unwrap();
        assert!((a.t[0] - 1.0).abs() < 1e-15);
        assert!(a.certificate.abs() < 1e-12);
    }

    #[test]
    fn lemma7_rejects_large_k() {
        assert!(matches!(allocate_lemma7(&[0.5, 0.5], 0.5), Err(AllocationError::KOutOfRange { .. })));
    }
}
