//! Exact sharpness examples.
//!
//! On `l_1^d` the family `P_i = z_i^{k(n-d+1)}` (`i < d`), `P_i = z_d^k`
//! (`i >= d`) of norm-one monomials has product `(z_1 ... z_d)^{k(n-d+1)}`,
//! whose norm is `d^{-sum deg P_i}`. All comparisons run in the log domain.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Field, MultiIndex, PolyError, Polynomial};
use crate::space::{estimate_sup_norm, log_monomial_norm, Exponent, NormOptions, SpaceError, SpaceSpec};

/// Tolerance on the exact log-domain identities, relative to `max(1, |rhs|)`.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance on the optimizer cross-check, relative.
pub const ESTIMATE_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error("need n > d >= 1 and k >= 1, got d={d}, n={n}, k={k}")]
    InvalidParameters { d: usize, n: usize, k: u32 },
    #[error("need n >= 1")]
    ZeroCount,
    #[error("exponent k (n - d + 1) overflows")]
    Overflow,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalFamily {
    pub d: usize,
    pub n: usize,
    pub k: u32,
    /// Exponent vectors of the monomials, coefficient one.
    pub exponents: Vec<Vec<u32>>,
    pub polys: Vec<Polynomial>,
    /// `M_n(l_1^d)` lower bound per unit degree.
    pub expected_ratio: f64,
}

impl ExtremalFamily {
    pub fn degrees(&self) -> Vec<u32> {
        self.exponents.iter().map(|e| e.iter().sum()).collect()
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().flatten().map(|&e| e as u64).sum()
    }

    pub fn product_exponents(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.d];
        for e in &self.exponents {
            for (o, x) in out.iter_mut().zip(e) {
                *o += x;
            }
        }
        out
    }
}

pub fn build_family(d: usize, n: usize, k: u32) -> Result<ExtremalFamily, ExtremalError> {
    if d == 0 || n <= d || k == 0 {
        return Err(ExtremalError::InvalidParameters { d, n, k });
    }
    let big = u32::try_from(n - d + 1).ok().and_then(|m| m.checked_mul(k)).ok_or(ExtremalError::Overflow)?;
    let mut exponents = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0u32; d];
        if i + 1 < d {
            e[i] = big;
        } else {
            e[d - 1] = k;
        }
        exponents.push(e);
    }
    let one = Complex64::new(1.0, 0.0);
    let polys =
        exponents.iter().map(|e| Polynomial::monomial(Field::Real, e.clone(), one)).collect::<Result<Vec<_>, _>>()?;
    Ok(ExtremalFamily { d, n, k, exponents, polys, expected_ratio: d as f64 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityReport {
    pub d: usize,
    pub n: usize,
    pub k: u32,
    pub degrees: Vec<u32>,
    pub total_degree: u64,
    /// `sum_i ln ||P_i||`.
    pub log_factor_norms: f64,
    /// `ln ||prod P_i||`.
    pub log_product_norm: f64,
    /// `sum_i ln ||P_i|| - (sum deg P_i) ln d`.
    pub log_expected: f64,
    /// `ln (prod ||P_i|| / ||prod P_i||)`.
    pub log_ratio: f64,
    /// `(prod ||P_i|| / ||prod P_i||)^{1 / sum deg P_i}`.
    pub ratio_per_degree: f64,
    pub exact_pass: bool,
    pub estimate_log_product_norm: Option<f64>,
    pub estimate_pass: Option<bool>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXACT_TOL * b.abs().max(1.0)
}

/// Checks `||prod P_i|| = d^{-sum deg P_i} prod ||P_i||` on `l_1^d` with the
/// closed-form monomial norms, and optionally cross-checks the product norm
/// with the multi-start estimator.
pub fn verify_equality(
    fam: &ExtremalFamily,
    cross_check: Option<&NormOptions>,
) -> Result<EqualityReport, ExtremalError> {
    let l1 = Exponent::Finite(1.0);
    let log_factor_norms: f64 = fam.exponents.iter().map(|e| log_monomial_norm(&MultiIndex::new(e.clone()), l1)).sum();
    let prod = fam.product_exponents();
    let log_product_norm = log_monomial_norm(&MultiIndex::new(prod.clone()), l1);
    let total_degree = fam.total_degree();
    let log_expected = log_factor_norms - total_degree as f64 * (fam.d as f64).ln();
    let log_ratio = log_factor_norms - log_product_norm;
    let (estimate_log_product_norm, estimate_pass) = match cross_check {
        Some(opts) => {
            let space = SpaceSpec::real(fam.d, 1.0)?;
            let p = Polynomial::monomial(Field::Real, prod, Complex64::new(1.0, 0.0))?;
            let est = estimate_sup_norm(&p, &space, opts)?;
            let pass = (est.log_value - log_product_norm).abs() <= ESTIMATE_RTOL;
            (Some(est.log_value), Some(pass))
        }
        None => (None, None),
    };
    Ok(EqualityReport {
        d: fam.d,
        n: fam.n,
        k: fam.k,
        degrees: fam.degrees(),
        total_degree,
        log_factor_norms,
        log_product_norm,
        log_expected,
        log_ratio,
        ratio_per_degree: (log_ratio / total_degree as f64).exp(),
        exact_pass: close(log_product_norm, log_expected),
        estimate_log_product_norm,
        estimate_pass,
    })
}

/// Both sides of `M ||prod P_i|| >= prod ||P_i||` for coordinate functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub n: usize,
    pub log_constant: f64,
    pub log_product_norm: f64,
    pub log_factor_norms: f64,
    /// `ln M + ln ||prod P_i||`.
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub pass: bool,
}

fn coordinate_sharpness(n: usize, p: Exponent, log_constant: f64) -> Result<SharpnessReport, ExtremalError> {
    if n == 0 {
        return Err(ExtremalError::ZeroCount);
    }
    let log_factor_norms: f64 = (0..n).map(|i| log_monomial_norm(&MultiIndex::unit(n, i), p)).sum();
    let log_product_norm = log_monomial_norm(&MultiIndex::new(vec![1; n]), p);
    let log_lhs = log_constant + log_product_norm;
    Ok(SharpnessReport {
        n,
        log_constant,
        log_product_norm,
        log_factor_norms,
        log_lhs,
        log_rhs: log_factor_norms,
        pass: close(log_lhs, log_factor_norms),
    })
}

/// `z_1, ..., z_n` on `l_1^n`: `n^n ||z_1 ... z_n|| = 1`.
pub fn bst_sharpness_check(n: usize) -> Result<SharpnessReport, ExtremalError> {
    let nf = n.max(1) as f64;
    coordinate_sharpness(n, Exponent::Finite(1.0), nf * nf.ln())
}

/// `z_1, ..., z_n` on `l_2^n`: `n^{n/2} ||z_1 ... z_n|| = 1`.
pub fn hilbert_equality_check(n: usize) -> Result<SharpnessReport, ExtremalError> {
    let nf = n.max(1) as f64;
    coordinate_sharpness(n, Exponent::Finite(2.0), 0.5 * nf * nf.ln())
}
