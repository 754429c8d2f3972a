//! Witnesses for the polynomial plank problem: given norm-one polynomials
//! `P_i` of degrees `k_i` and radii `a_i`, find `z` in the unit ball with
//! `|P_i(z)| >= a_i^{k_i}` for every `i`.
//!
//! The search pads the radii up to a budget, allocates simplex weights `t`
//! (see [`allocation`]), rounds them to integer exponents `r` (see
//! [`rational`]) and maximizes `sum_i r_i ln |P_i(z)|` over the ball. The
//! product polynomial is never formed.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

pub mod allocation;
pub mod rational;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Field, PolyError, Polynomial};
use crate::space::{maximize, normalize, Exponent, NormOptions, SpaceError, SpaceSpec, WeightedLogProduct};

pub use allocation::{
    allocate_lemma4, allocate_lemma7, lemma4_budget, power_certificate, product_certificate, Allocation,
    AllocationError, AllocationMethod, FEASIBILITY_TOL,
};
pub use rational::{default_cap, rationalize_lemma5, RationalError, Rationalization};

/// Relative tolerance for boundary equality in the feasibility gates.
pub const GATE_RTOL: f64 = 1e-12;
/// A margin below this marks the witness as failed.
pub const MARGIN_TOL: f64 = -1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlankError {
    #[error("no polynomials given")]
    Empty,
    #[error("{polys} polynomials but {radii} radii")]
    LengthMismatch { polys: usize, radii: usize },
    #[error("radius {0} is not a finite nonnegative number")]
    InvalidRadius(f64),
    #[error("polynomial {0} is constant")]
    ConstantPolynomial(usize),
    #[error("regime {0} needs a complex space")]
    NeedsComplex(Regime),
    #[error("regime {0} needs homogeneous polynomials (polynomial {1} is not)")]
    NotHomogeneous(Regime, usize),
    #[error("regime lp needs p in [1, 2], got {0}")]
    ExponentOutOfRange(Exponent),
    #[error("K = {k} must lie in (0, {limit})")]
    InvalidK { k: f64, limit: f64 },
    #[error("feasibility gate violated: {inequality} ({lhs} > {rhs})")]
    Gate { inequality: String, lhs: f64, rhs: f64 },
    #[error(transparent)]
    Allocation(#[from] AllocationError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which plank theorem supplies the budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Complex spaces, `sum a_i <= 1 / n^{n-1}`.
    Bst,
    /// Complex `l_p` with `1 <= p <= 2`, homogeneous polynomials,
    /// `sum a_i^p <= 1 / n^{n-1}`.
    Lp,
    /// `sum a_i <= n K^n` for a user constant `K < (n e^2)^{-1/n}`.
    KCustom { k: f64 },
    /// `sum a_i <= n K^n` with `K = 1 / (C 4 e d)`, `C = 1` (real) or `2`
    /// (complex).
    FiniteDim,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Bst => f.write_str("bst"),
            Regime::Lp => f.write_str("lp"),
            Regime::KCustom { k } => write!(f, "k-custom(K={k})"),
            Regime::FiniteDim => f.write_str("finite-dim"),
        }
    }
}

/// The largest `K` allowed for `n` planks: `(n e^2)^{-1/n}`.
pub fn k_limit(n: usize) -> f64 {
    let nf = n as f64;
    (-(nf.ln() + 2.0) / nf).exp()
}

/// `1 / (C 4 e d)`.
pub fn finite_dim_k(field: Field, dim: usize) -> f64 {
    1.0 / (field.c_constant() as f64 * 4.0 * core::f64::consts::E * dim as f64)
}

/// A checked plank problem. The polynomials are stored divided by their
/// estimated sup norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlankInstance {
    pub polys: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    pub radii: Vec<f64>,
    pub space: SpaceSpec,
    pub regime: Regime,
    /// Norm estimates of the polynomials as given.
    pub input_norms: Vec<f64>,
    /// Left and right side of the gate inequality.
    pub gate_lhs: f64,
    pub gate_rhs: f64,
}

impl PlankInstance {
    pub fn new(
        polys: &[Polynomial],
        radii: &[f64],
        space: SpaceSpec,
        regime: Regime,
        norm: &NormOptions,
    ) -> Result<Self, PlankError> {
        let n = polys.len();
        if n == 0 {
            return Err(PlankError::Empty);
        }
        if radii.len() != n {
            return Err(PlankError::LengthMismatch { polys: n, radii: radii.len() });
        }
        if let Some(&a) = radii.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
            return Err(PlankError::InvalidRadius(a));
        }
        for (i, p) in polys.iter().enumerate() {
            space.check_polynomial(p.dim(), p.field())?;
            if p.is_zero() {
                return Err(PolyError::ZeroPolynomial.into());
            }
            if p.degree() == 0 {
                return Err(PlankError::ConstantPolynomial(i));
            }
        }
        if matches!(regime, Regime::Bst | Regime::Lp) && space.field != Field::Complex {
            return Err(PlankError::NeedsComplex(regime));
        }
        let (gate_lhs, gate_rhs, inequality) = match regime {
            Regime::Bst => (radii.iter().sum(), lemma4_budget(n), String::from("sum a_i <= 1/n^(n-1)")),
            Regime::Lp => {
                let p = match space.p {
                    Exponent::Finite(p) if p <= 2.0 => p,
                    other => return Err(PlankError::ExponentOutOfRange(other)),
                };
                if let Some(i) = polys.iter().position(|q| !q.is_homogeneous()) {
                    return Err(PlankError::NotHomogeneous(regime, i));
                }
                (radii.iter().map(|a| a.powf(p)).sum(), lemma4_budget(n), String::from("sum a_i^p <= 1/n^(n-1)"))
            }
            Regime::KCustom { k } => {
                let limit = k_limit(n);
                if !(k > 0.0 && k < limit) {
                    return Err(PlankError::InvalidK { k, limit });
                }
                (radii.iter().sum(), n as f64 * k.powi(n as i32), String::from("sum a_i <= n K^n"))
            }
            Regime::FiniteDim => {
                let k = finite_dim_k(space.field, space.dim);
                (radii.iter().sum(), n as f64 * k.powi(n as i32), String::from("sum a_i <= n (1/(C 4 e d))^n"))
            }
        };
        if gate_lhs > gate_rhs * (1.0 + GATE_RTOL) {
            return Err(PlankError::Gate { inequality, lhs: gate_lhs, rhs: gate_rhs });
        }
        let mut normalized = Vec::with_capacity(n);
        let mut input_norms = Vec::with_capacity(n);
        for p in polys {
            let (q, est) = normalize(p, &space, norm)?;
            normalized.push(q);
            input_norms.push(est.value);
        }
        Ok(PlankInstance {
            degrees: polys.iter().map(Polynomial::degree).collect(),
            polys: normalized,
            radii: radii.to_vec(),
            space,
            regime,
            input_norms,
            gate_lhs,
            gate_rhs,
        })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `a_i^{k_i}`.
    pub fn targets(&self) -> Vec<f64> {
        self.radii.iter().zip(&self.degrees).map(|(a, &k)| a.powi(k as i32)).collect()
    }

    /// `|P_i(z)| - a_i^{k_i}` for the stored (normalized) polynomials.
    pub fn margins(&self, z: &[Complex64]) -> Result<Vec<f64>, PlankError> {
        let mut out = Vec::with_capacity(self.len());
        for (p, t) in self.polys.iter().zip(self.targets()) {
            out.push(p.evaluate(z)?.norm() - t);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WitnessOptions {
    pub norm: NormOptions,
    /// Cap on `sum k_i r_i`; `None` means `64 n prod k_i` over the planks
    /// that take part in the allocation.
    pub r_cap: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub starts: usize,
    pub converged_fraction: f64,
    pub best_start: usize,
    /// `sum_i r_i ln |P_i(witness)|`.
    pub log_objective: f64,
    /// Degree of the largest polynomial held by the objective.
    pub max_materialized_degree: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlankReport {
    pub regime: Regime,
    pub space: SpaceSpec,
    pub degrees: Vec<u32>,
    pub radii: Vec<f64>,
    /// Indices that take part in the allocation; `s` and `r` follow this order.
    pub active: Vec<usize>,
    pub budget: f64,
    pub witness: Vec<Complex64>,
    pub witness_norm: f64,
    pub values: Vec<f64>,
    pub margins: Vec<f64>,
    pub allocation: Allocation,
    /// `ln K / t_i`-type exponents before padding (K regimes only).
    pub lemma7_s: Option<Vec<f64>>,
    pub s: Vec<f64>,
    pub r: Vec<u64>,
    pub total_degree: u64,
    pub diagnostics: Diagnostics,
    pub success: bool,
}

/// Runs the allocation, rationalization and ascent for `inst`.
///
/// Radii equal to zero impose nothing, so in the `1 / n^{n-1}` regimes those
/// planks are left out and the budget is `1 / m^{m-1}` for the `m` remaining
/// ones. With every radius zero all planks are kept.
pub fn find_witness(inst: &PlankInstance, opts: &WitnessOptions) -> Result<PlankReport, PlankError> {
    let n = inst.len();
    let (active, allocation, lemma7_s, budget) = match inst.regime {
        Regime::Bst | Regime::Lp => {
            let q = match (inst.regime, inst.space.p) {
                (Regime::Lp, Exponent::Finite(p)) => p,
                _ => 1.0,
            };
            let mut active: Vec<usize> = (0..n).filter(|&i| inst.radii[i] > 0.0).collect();
            if active.is_empty() {
                active = (0..n).collect();
            }
            let m = active.len();
            let budget = lemma4_budget(m);
            let powered: Vec<f64> = active.iter().map(|&i| inst.radii[i].powf(q)).collect();
            let slack = (budget - powered.iter().sum::<f64>()).max(0.0) / m as f64;
            let b: Vec<f64> = powered.iter().map(|x| x + slack).collect();
            (active, allocate_lemma4(&b)?, None, budget)
        }
        Regime::KCustom { k } => k_regime(inst, k)?,
        Regime::FiniteDim => k_regime(inst, finite_dim_k(inst.space.field, inst.space.dim))?,
    };

    let degrees: Vec<u32> = active.iter().map(|&i| inst.degrees[i]).collect();
    let cap = match opts.r_cap {
        Some(c) => c,
        None => default_cap(&degrees).ok_or(RationalError::Overflow)?,
    };
    let rat = rationalize_lemma5(&allocation.t, &degrees, cap)?;

    let polys: Vec<&Polynomial> = active.iter().map(|&i| &inst.polys[i]).collect();
    let weights: Vec<f64> = rat.r.iter().map(|&r| r as f64 / rat.total_degree as f64).collect();
    let objective = WeightedLogProduct::new(polys, weights);
    let out = maximize(&objective, &inst.space, &opts.norm);

    let witness = out.point;
    let values: Vec<f64> = inst.polys.iter().map(|p| p.evaluate_unchecked(&witness).norm()).collect();
    let margins: Vec<f64> = values.iter().zip(inst.targets()).map(|(v, t)| v - t).collect();
    let success = margins.iter().all(|&m| m >= MARGIN_TOL);
    Ok(PlankReport {
        regime: inst.regime,
        space: inst.space,
        degrees: inst.degrees.clone(),
        radii: inst.radii.clone(),
        active,
        budget,
        witness_norm: inst.space.norm(&witness),
        witness,
        values,
        margins,
        allocation,
        lemma7_s,
        s: rat.s,
        r: rat.r,
        total_degree: rat.total_degree,
        diagnostics: Diagnostics {
            starts: out.starts,
            converged_fraction: out.converged_fraction,
            best_start: out.best_start,
            log_objective: out.log_value * rat.total_degree as f64,
            max_materialized_degree: objective.max_factor_degree(),
            seed: opts.norm.seed,
        },
        success,
    })
}

type Allocated = (Vec<usize>, Allocation, Option<Vec<f64>>, f64);

fn k_regime(inst: &PlankInstance, k: f64) -> Result<Allocated, PlankError> {
    let n = inst.len();
    let budget = n as f64 * k.powi(n as i32);
    let slack = (budget - inst.radii.iter().sum::<f64>()).max(0.0) / n as f64;
    let b: Vec<f64> = inst.radii.iter().map(|a| a + slack).collect();
    let (alloc, s) = allocate_lemma7(&b, k)?;
    Ok(((0..n).collect(), alloc, Some(s), budget))
}

/// The lower bound on `|P_i|` implied by the realized weights `s`, in log
/// form: `(k_i / (q s_i)) sum_j s_j ln s_j` for the `1/n^{n-1}` regimes (with
/// `q = p` or `1`), `k_i ln K / s_i` for the K regimes. Entries follow
/// `report.active`.
pub fn log_guarantees(inst: &PlankInstance, report: &PlankReport) -> Vec<f64> {
    let ks: Vec<f64> = report.active.iter().map(|&i| inst.degrees[i] as f64).collect();
    match inst.regime {
        Regime::Bst | Regime::Lp => {
            let q = match (inst.regime, inst.space.p) {
                (Regime::Lp, Exponent::Finite(p)) => p,
                _ => 1.0,
            };
            let ent: f64 = report.s.iter().map(|s| s * s.ln()).sum();
            ks.iter().zip(&report.s).map(|(k, s)| k / (q * s) * ent).collect()
        }
        Regime::KCustom { k } => ks.iter().zip(&report.s).map(|(ki, s)| ki * k.ln() / s).collect(),
        Regime::FiniteDim => {
            let k = finite_dim_k(inst.space.field, inst.space.dim);
            ks.iter().zip(&report.s).map(|(ki, s)| ki * k.ln() / s).collect()
        }
    }
}
