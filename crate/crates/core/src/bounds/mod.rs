//! Constants `M` in `||P_1|| ... ||P_n|| <= M ||P_1 ... P_n||`.
//!
//! Every constant is produced as `ln M`. With `K = k_1 + ... + k_n`:
//!
//! | kind            | `M`                                                   |
//! |-----------------|-------------------------------------------------------|
//! | `eq2`           | `K^K / prod k_i^{k_i}`                                |
//! | `eq3`           | square root of `eq2`                                  |
//! | `eq4`           | `sqrt(2^K Gamma(K + d/2) / (Gamma(d/2) prod k_i!))`   |
//! | `eq5`           | `p`-th root of `eq2`, `1 <= p <= 2`                   |
//! | `eq6`           | `(C 4 e d)^K / 2^{n/C}`, `C = 1` (real) or `2` (complex) |
//! | `prop12-stated` | `(e^{H_{dC}} / 4)^K`                                  |
//! | `prop12`        | `(4 e^{H_{dC}})^K`                                    |
//!
//! `prop12-stated` drops below one for small `d` (at `d = 1`, `K = 1` it is
//! `e / 4`), which no valid constant can do; `prop12` is the form obtained by
//! running the `eq6` argument with the sharper homogeneous integral estimate.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

mod compare;
mod search;
mod special;
mod verify;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Field, PolyError};
use crate::space::SpaceError;

pub use compare::{compare_bounds, CompareReport};
pub use search::{
    estimate_mn, estimate_mn_from, estimate_polarization_constant, MnEstimate, PolarizationEstimate, SearchOptions,
};
pub use special::{harmonic, log_factorial, log_gamma};
pub use verify::{check_applicable, verify_product_inequality, CheckStatus, ProductCheck, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("{0}")]
    Domain(&'static str),
    #[error("at least one degree is required")]
    EmptyDegrees,
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("{0} needs the space dimension d")]
    MissingDimension(BoundKind),
    #[error("{0} needs an exponent p in [1, 2], got {1}")]
    ExponentOutOfRange(BoundKind, f64),
    #[error("{kind} does not apply here: {reason}")]
    NotApplicable { kind: BoundKind, reason: &'static str },
    #[error("unknown bound kind `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "eq2")]
    Bst,
    #[serde(rename = "eq3")]
    HilbertComplex,
    #[serde(rename = "eq4")]
    HilbertReal,
    #[serde(rename = "eq5")]
    Lp,
    #[serde(rename = "eq6")]
    FiniteDim,
    #[serde(rename = "prop12-stated")]
    HilbertFiniteStated,
    #[serde(rename = "prop12")]
    HilbertFiniteDerived,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::Bst,
        BoundKind::HilbertComplex,
        BoundKind::HilbertReal,
        BoundKind::Lp,
        BoundKind::FiniteDim,
        BoundKind::HilbertFiniteStated,
        BoundKind::HilbertFiniteDerived,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Bst => "eq2",
            BoundKind::HilbertComplex => "eq3",
            BoundKind::HilbertReal => "eq4",
            BoundKind::Lp => "eq5",
            BoundKind::FiniteDim => "eq6",
            BoundKind::HilbertFiniteStated => "prop12-stated",
            BoundKind::HilbertFiniteDerived => "prop12",
        }
    }

    pub fn needs_dimension(self) -> bool {
        matches!(
            self,
            BoundKind::HilbertReal
                | BoundKind::FiniteDim
                | BoundKind::HilbertFiniteStated
                | BoundKind::HilbertFiniteDerived
        )
    }

    /// A caution to surface to users, if the kind has one.
    pub fn warning(self) -> Option<&'static str> {
        match self {
            BoundKind::HilbertFiniteStated => Some(
                "prop12-stated is below 1 for small d (e/4 at d = 1, K = 1) and cannot be a valid constant there; prefer prop12",
            ),
            _ => None,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| BoundError::UnknownKind(s.into()))
    }
}

/// A bound kind together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub kind: BoundKind,
    pub degrees: Vec<u32>,
    pub dim: Option<usize>,
    pub p: Option<f64>,
    pub field: Field,
}

impl BoundSpec {
    pub fn new(kind: BoundKind, degrees: Vec<u32>) -> Self {
        BoundSpec { kind, degrees, dim: None, p: None, field: Field::Real }
    }

    pub fn dim(mut self, d: usize) -> Self {
        self.dim = Some(d);
        self
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn log_value(&self) -> Result<f64, BoundError> {
        bound_log_value(self)
    }

    pub fn value(&self) -> Result<BoundValue, BoundError> {
        self.log_value().map(BoundValue::from_log)
    }
}

/// `ln M`, and `M` itself when it fits in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub log_value: f64,
    pub value_if_finite: Option<f64>,
}

impl BoundValue {
    pub fn from_log(log_value: f64) -> Self {
        let v = log_value.exp();
        BoundValue { log_value, value_if_finite: v.is_finite().then_some(v) }
    }
}

/// Aggregates of a degree list that the formulas need. Kept separate so that
/// long runs of equal degrees never have to be materialized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DegreeStats {
    pub n: f64,
    pub total: f64,
    pub sum_k_ln_k: f64,
    pub sum_ln_factorial: f64,
}

impl DegreeStats {
    pub fn from_degrees(degrees: &[u32]) -> Result<Self, BoundError> {
        if degrees.is_empty() {
            return Err(BoundError::EmptyDegrees);
        }
        if degrees.contains(&0) {
            return Err(BoundError::ZeroDegree);
        }
        let mut s = DegreeStats { n: 0.0, total: 0.0, sum_k_ln_k: 0.0, sum_ln_factorial: 0.0 };
        for &k in degrees {
            let kf = k as f64;
            s.n += 1.0;
            s.total += kf;
            s.sum_k_ln_k += kf * kf.ln();
            s.sum_ln_factorial += log_factorial(k);
        }
        Ok(s)
    }

    /// `n` copies of the degree `k`.
    pub fn uniform(n: u64, k: u32) -> Self {
        let (nf, kf) = (n as f64, k as f64);
        DegreeStats { n: nf, total: nf * kf, sum_k_ln_k: nf * kf * kf.ln(), sum_ln_factorial: nf * log_factorial(k) }
    }
}

pub(crate) fn log_bst(s: &DegreeStats) -> f64 {
    let k = s.total;
    k * k.ln() - s.sum_k_ln_k
}

pub(crate) fn log_hilbert_real(s: &DegreeStats, d: usize) -> f64 {
    let half_d = d as f64 / 2.0;
    let lg = |x: f64| log_gamma(x).expect("positive argument");
    0.5 * (s.total * core::f64::consts::LN_2 + lg(s.total + half_d) - lg(half_d) - s.sum_ln_factorial)
}

pub(crate) fn log_finite_dim(s: &DegreeStats, d: usize, field: Field) -> f64 {
    let c = field.c_constant() as f64;
    s.total * (c * 4.0 * core::f64::consts::E * d as f64).ln() - s.n / c * core::f64::consts::LN_2
}

fn harmonic_dc(d: usize, field: Field) -> f64 {
    harmonic(d * field.c_constant()).expect("d >= 1")
}

fn log_dispatch(
    kind: BoundKind,
    s: &DegreeStats,
    dim: Option<usize>,
    p: Option<f64>,
    field: Field,
) -> Result<f64, BoundError> {
    let need_d = || match dim {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(BoundError::MissingDimension(kind)),
    };
    Ok(match kind {
        BoundKind::Bst => log_bst(s),
        BoundKind::HilbertComplex => log_bst(s) / 2.0,
        BoundKind::HilbertReal => log_hilbert_real(s, need_d()?),
        BoundKind::Lp => {
            let p = p.unwrap_or(f64::NAN);
            if !(1.0..=2.0).contains(&p) {
                return Err(BoundError::ExponentOutOfRange(kind, p));
            }
            log_bst(s) / p
        }
        BoundKind::FiniteDim => log_finite_dim(s, need_d()?, field),
        BoundKind::HilbertFiniteStated => s.total * (harmonic_dc(need_d()?, field) - 4f64.ln()),
        BoundKind::HilbertFiniteDerived => s.total * (4f64.ln() + harmonic_dc(need_d()?, field)),
    })
}

/// `ln M` for the given kind and parameters.
pub fn bound_log_value(spec: &BoundSpec) -> Result<f64, BoundError> {
    let stats = DegreeStats::from_degrees(&spec.degrees)?;
    log_dispatch(spec.kind, &stats, spec.dim, spec.p, spec.field)
}

pub(crate) fn bound_log_value_stats(
    kind: BoundKind,
    stats: &DegreeStats,
    dim: usize,
    field: Field,
) -> Result<f64, BoundError> {
    log_dispatch(kind, stats, Some(dim), None, field)
}
