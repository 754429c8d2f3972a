//! Factorization of homogeneous polynomials on `C^2` into linear forms.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{polynomial_roots, Field, PolyError, Polynomial};
use crate::space::SpaceSpec;

/// The linear form `a z_1 + b z_2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFactor {
    pub coeffs: [Complex64; 2],
    /// Whether the form was normalized to dual norm one.
    pub norm_one: bool,
}

impl LinearFactor {
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.coeffs[0] * z[0] + self.coeffs[1] * z[1]
    }
}

/// `P = scale * prod factors`, up to `residual`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFactorization {
    pub scale: f64,
    pub factors: Vec<LinearFactor>,
    /// Largest reconstruction error over the 64-point grid on the torus
    /// `|z_1| = |z_2| = 1/2`.
    pub residual: f64,
}

impl LinearFactorization {
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.factors.iter().fold(Complex64::new(self.scale, 0.0), |acc, f| acc * f.evaluate(z))
    }

    /// Expands the product back into a complex polynomial on `C^2`.
    pub fn reconstruct(&self) -> Polynomial {
        let mut acc = Polynomial::constant(2, Field::Complex, Complex64::new(self.scale, 0.0)).expect("finite scale");
        for f in &self.factors {
            let lin = Polynomial::from_terms(2, Field::Complex, [(vec![1, 0], f.coeffs[0]), (vec![0, 1], f.coeffs[1])])
                .expect("finite coefficients");
            acc = acc.multiply(&lin).expect("same dimension");
        }
        acc
    }
}

/// Factors a homogeneous polynomial on `C^2` into linear forms of dual norm
/// one with respect to `space` (a two-dimensional `l_p`).
///
/// Dehomogenizes in `w = z_1 / z_2`, finds the roots with an Aberth
/// iteration, and puts the leading coefficient's phase on the first factor so
/// that `scale` is a positive real.
pub fn factor_binary_form(p: &Polynomial, space: &SpaceSpec) -> Result<LinearFactorization, PolyError> {
    if p.dim() != 2 {
        return Err(PolyError::DimensionMismatch { expected: 2, got: p.dim() });
    }
    if space.dim != 2 {
        return Err(PolyError::DimensionMismatch { expected: 2, got: space.dim });
    }
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !p.is_homogeneous() {
        return Err(PolyError::NotHomogeneous);
    }
    let k = p.degree() as usize;
    // c[j] multiplies z1^j z2^(k-j).
    let mut c = vec![Complex64::new(0.0, 0.0); k + 1];
    for (alpha, coeff) in p.terms() {
        c[alpha.exponents()[0] as usize] = *coeff;
    }
    let zero = Complex64::new(0.0, 0.0);
    let low = c.iter().position(|v| *v != zero).expect("nonzero polynomial");
    let high = c.iter().rposition(|v| *v != zero).expect("nonzero polynomial");
    let roots = polynomial_roots(&c[low..=high]);

    let mut raw: Vec<[Complex64; 2]> = Vec::with_capacity(k);
    let one = Complex64::new(1.0, 0.0);
    raw.extend(core::iter::repeat_n([one, zero], low));
    raw.extend(roots.iter().map(|w| [one, -w]));
    raw.extend(core::iter::repeat_n([zero, one], k - high));

    let lead = c[high];
    let mut scale = lead.norm();
    let phase = lead / scale;
    let mut factors = Vec::with_capacity(k);
    for (i, ab) in raw.iter().enumerate() {
        let nu = space.dual_norm(ab);
        scale *= nu;
        let mut coeffs = [ab[0] / nu, ab[1] / nu];
        if i == 0 {
            coeffs = [coeffs[0] * phase, coeffs[1] * phase];
        }
        factors.push(LinearFactor { coeffs, norm_one: true });
    }

    let mut fact = LinearFactorization { scale, factors, residual: 0.0 };
    let mut residual = 0.0f64;
    for a in 0..8 {
        for b in 0..8 {
            let z = [
                Complex64::from_polar(0.5, 2.0 * PI * a as f64 / 8.0),
                Complex64::from_polar(0.5, 2.0 * PI * b as f64 / 8.0),
            ];
            let err = (p.evaluate_unchecked(&z) - fact.evaluate(&z)).norm();
            residual = residual.max(err);
        }
    }
    fact.residual = residual;
    Ok(fact)
}
