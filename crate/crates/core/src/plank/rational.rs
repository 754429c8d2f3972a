//! Rational approximation of simplex weights by degree-weighted exponents.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RationalError {
    #[error("{0}")]
    InvalidInput(&'static str),
    #[error("the product of the degrees overflows")]
    Overflow,
    #[error("exponent cap {cap} is below n * prod k_i = {needed}")]
    CapTooSmall { cap: u64, needed: u64 },
    #[error("no denominator up to the cap keeps every s_i >= t_i / 2")]
    NoHalfBound,
}

/// Integer exponents `r` with `s_i = k_i r_i / sum_j k_j r_j = q_i / p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rationalization {
    pub s: Vec<f64>,
    pub r: Vec<u64>,
    pub q: Vec<u64>,
    pub denominator: u64,
    /// `sum_i k_i r_i = p prod k_j`.
    pub total_degree: u64,
    pub max_error: f64,
}

/// Largest-remainder rounding of `t p` to integers `q_i >= 1` summing to `p`.
fn round_to(t: &[f64], p: u64) -> Vec<u64> {
    let pf = p as f64;
    let mut q: Vec<u64> = t.iter().map(|&x| ((x * pf).floor() as u64).max(1)).collect();
    let rem = |q: &[u64], i: usize| t[i] * pf - q[i] as f64;
    let mut total: u64 = q.iter().sum();
    while total < p {
        let i = (0..q.len()).fold(0, |best, i| if rem(&q, i) > rem(&q, best) { i } else { best });
        q[i] += 1;
        total += 1;
    }
    while total > p {
        let i = (0..q.len())
            .filter(|&i| q[i] > 1)
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if rem(&q, b) <= rem(&q, i) => Some(b),
                _ => Some(i),
            })
            .expect("p >= n leaves an entry above one");
        q[i] -= 1;
        total -= 1;
    }
    q
}

/// Approximates `t` by `q / p` over all denominators `p` with
/// `p prod k_i <= r_cap`, keeping the smallest maximal error (smallest `p`
/// on ties) among those with `q_i / p >= t_i / 2`. Then
/// `r_i = q_i prod k_j / k_i`.
pub fn rationalize_lemma5(t: &[f64], k: &[u32], r_cap: u64) -> Result<Rationalization, RationalError> {
    let n = t.len();
    if n == 0 || k.len() != n {
        return Err(RationalError::InvalidInput("t and k must be non-empty and of equal length"));
    }
    if t.iter().any(|&x| !(x > 0.0)) || k.contains(&0) {
        return Err(RationalError::InvalidInput("weights and degrees must be positive"));
    }
    if (t.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(RationalError::InvalidInput("weights must sum to one"));
    }
    let m = k.iter().try_fold(1u64, |acc, &ki| acc.checked_mul(ki as u64)).ok_or(RationalError::Overflow)?;
    let needed = m.checked_mul(n as u64).ok_or(RationalError::Overflow)?;
    if r_cap < needed {
        return Err(RationalError::CapTooSmall { cap: r_cap, needed });
    }
    let mut best: Option<(f64, u64, Vec<u64>)> = None;
    for p in n as u64..=r_cap / m {
        let q = round_to(t, p);
        let pf = p as f64;
        if q.iter().zip(t).any(|(&qi, &ti)| (qi as f64) / pf < ti / 2.0) {
            continue;
        }
        let err = q.iter().zip(t).map(|(&qi, &ti)| (qi as f64 / pf - ti).abs()).fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(e, _, _)| err < *e) {
            best = Some((err, p, q));
        }
    }
    let (max_error, p, q) = best.ok_or(RationalError::NoHalfBound)?;
    let r: Vec<u64> = q.iter().zip(k).map(|(&qi, &ki)| qi * (m / ki as u64)).collect();
    let total_degree = p * m;
    let s = r.iter().zip(k).map(|(&ri, &ki)| (ri * ki as u64) as f64 / total_degree as f64).collect();
    Ok(Rationalization { s, r, q, denominator: p, total_degree, max_error })
}

/// Default exponent cap `64 n prod k_i`.
pub fn default_cap(k: &[u32]) -> Option<u64> {
    let m = k.iter().try_fold(1u64, |acc, &ki| acc.checked_mul(ki as u64))?;
    m.checked_mul(64 * k.len() as u64)
}
