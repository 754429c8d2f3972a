//! Finite-dimensional `l_p` spaces over the reals or complexes.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

mod ascent;
mod sample;
mod sup_norm;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Field, MultiIndex, PolyError};

pub use ascent::{maximize, AscentOutcome, LogObjective, WeightedLogProduct};
pub use sample::{sample_ball, sample_point, start_rng};
pub use sup_norm::{estimate_sup_norm, normalize, NormEstimate, NormOptions, SinglePolynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("exponent p must lie in [1, inf], got {0}")]
    InvalidExponent(f64),
    #[error("space dimension must be positive")]
    ZeroDimension,
    #[error("cannot parse space spec `{0}`: {1}")]
    Parse(String, String),
    #[error("polynomial has dimension {poly}, space has dimension {space}")]
    DimensionMismatch { poly: usize, space: usize },
    #[error("a complex polynomial needs a complex space")]
    FieldMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The exponent `p` of an `l_p` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self, SpaceError> {
        if p.is_nan() || p < 1.0 {
            return Err(SpaceError::InvalidExponent(p));
        }
        if p.is_infinite() {
            Ok(Exponent::Infinite)
        } else {
            Ok(Exponent::Finite(p))
        }
    }

    /// `p` as a float, `f64::INFINITY` for `p = inf`.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinite => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinite,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// `l_p` norm of a vector of moduli.
    pub fn norm_of_moduli<I: IntoIterator<Item = f64>>(self, moduli: I) -> f64 {
        match self {
            Exponent::Infinite => moduli.into_iter().fold(0.0, f64::max),
            Exponent::Finite(1.0) => moduli.into_iter().sum(),
            Exponent::Finite(2.0) => {
                let v: Vec<f64> = moduli.into_iter().collect();
                let scale = v.iter().copied().fold(0.0, f64::max);
                if scale == 0.0 {
                    return 0.0;
                }
                scale * v.iter().map(|m| (m / scale) * (m / scale)).sum::<f64>().sqrt()
            }
            Exponent::Finite(p) => {
                let v: Vec<f64> = moduli.into_iter().collect();
                let scale = v.iter().copied().fold(0.0, f64::max);
                if scale == 0.0 {
                    return 0.0;
                }
                scale * v.iter().map(|m| (m / scale).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinite);
        }
        let p: f64 =
            t.parse().map_err(|_| SpaceError::Parse(s.to_string(), "p must be a number or `inf`".to_string()))?;
        Exponent::new(p)
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Exponent::new(p).map_err(serde::de::Error::custom),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// The space `l_p^d` over `field`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SpaceSpec {
    pub field: Field,
    pub dim: usize,
    pub p: Exponent,
}

impl SpaceSpec {
    pub fn new(field: Field, dim: usize, p: Exponent) -> Result<Self, SpaceError> {
        if dim == 0 {
            return Err(SpaceError::ZeroDimension);
        }
        if let Exponent::Finite(v) = p {
            Exponent::new(v)?;
        }
        Ok(SpaceSpec { field, dim, p })
    }

    pub fn real(dim: usize, p: f64) -> Result<Self, SpaceError> {
        Self::new(Field::Real, dim, Exponent::new(p)?)
    }

    pub fn complex(dim: usize, p: f64) -> Result<Self, SpaceError> {
        Self::new(Field::Complex, dim, Exponent::new(p)?)
    }

    /// Dimension of the underlying real space.
    pub fn real_dim(&self) -> usize {
        self.dim * self.field.c_constant()
    }

    /// `(sum |x_i|^p)^{1/p}`, or `max |x_i|`; moduli for complex entries.
    pub fn norm(&self, x: &[Complex64]) -> f64 {
        self.p.norm_of_moduli(x.iter().map(|v| v.norm()))
    }

    /// Norm of the functional `z -> sum a_i z_i`, i.e. the conjugate-exponent
    /// norm of `a`.
    pub fn dual_norm(&self, a: &[Complex64]) -> f64 {
        self.p.conjugate().norm_of_moduli(a.iter().map(|v| v.norm()))
    }

    /// Errors unless a polynomial of this dimension and field lives on the space.
    pub fn check_polynomial(&self, dim: usize, field: Field) -> Result<(), SpaceError> {
        if dim != self.dim {
            return Err(SpaceError::DimensionMismatch { poly: dim, space: self.dim });
        }
        if field == Field::Complex && self.field == Field::Real {
            return Err(SpaceError::FieldMismatch);
        }
        Ok(())
    }
}

/// `lp:p=<float|inf>,d=<int>,field=<real|complex>`
impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lp:p={},d={},field={}", self.p, self.dim, self.field)
    }
}

impl FromStr for SpaceSpec {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| SpaceError::Parse(s.to_string(), msg.to_string());
        let body = s.trim().strip_prefix("lp:").ok_or_else(|| err("expected prefix `lp:`"))?;
        let (mut p, mut d, mut field) = (None, None, None);
        for part in body.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| err("expected key=value pairs"))?;
            match key.trim() {
                "p" => p = Some(value.parse::<Exponent>()?),
                "d" => d = Some(value.trim().parse::<usize>().map_err(|_| err("d must be a positive integer"))?),
                "field" => field = Some(value.parse::<Field>().map_err(|e| err(&e))?),
                other => return Err(err(&format!("unknown key `{other}`"))),
            }
        }
        SpaceSpec::new(
            field.ok_or_else(|| err("missing field"))?,
            d.ok_or_else(|| err("missing d"))?,
            p.ok_or_else(|| err("missing p"))?,
        )
    }
}

impl From<SpaceSpec> for String {
    fn from(s: SpaceSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SpaceSpec {
    type Error = SpaceError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// `ln sup_{B} |z^alpha|` over the unit ball of `l_p^d`:
/// `(1/p) (sum alpha_i ln alpha_i - K ln K)` with `K = |alpha|` and `0 ln 0 = 0`.
/// The same for both fields.
pub fn log_monomial_norm(alpha: &MultiIndex, p: Exponent) -> f64 {
    let k = alpha.degree();
    match p {
        Exponent::Infinite => 0.0,
        _ if k == 0 => 0.0,
        Exponent::Finite(p) => {
            let xlogx = |a: u32| if a == 0 { 0.0 } else { a as f64 * (a as f64).ln() };
            let num: f64 = alpha.exponents().iter().map(|&a| xlogx(a)).sum();
            (num - xlogx(k)) / p
        }
    }
}

/// Exact sup norm of the monomial `z^alpha` on the unit ball of `l_p^d`.
pub fn monomial_norm(alpha: &MultiIndex, p: Exponent) -> f64 {
    log_monomial_norm(alpha, p).exp()
}
