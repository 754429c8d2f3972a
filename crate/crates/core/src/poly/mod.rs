//! Sparse multivariate polynomials with real or complex coefficients.
//!
//! Coefficients are stored as `Complex64` for both fields; a polynomial
//! tagged [`Field::Real`] never holds a coefficient with a nonzero imaginary
//! part. Terms live in a `BTreeMap` keyed by [`MultiIndex`], whose ordering is
//! graded lexicographic, so iteration and serialization are canonical.

mod factor;
pub mod random;
mod realify;
mod roots;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use factor::{factor_binary_form, LinearFactor, LinearFactorization};
pub(crate) use roots::polynomial_roots;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: cannot combine a {0} polynomial with a {1} polynomial")]
    FieldMismatch(Field, Field),
    #[error("real polynomial given a coefficient with imaginary part {0}")]
    ComplexCoefficient(f64),
    #[error("coefficient is not finite")]
    NonFiniteCoefficient,
    #[error("polynomial dimension must be positive")]
    ZeroDimension,
    #[error("operation requires a complex polynomial")]
    NotComplex,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("variable index {index} out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
}

/// The scalar field of a polynomial or space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// `C_K` in the finite-dimensional product bounds: 1 over the reals, 2 over
    /// the complexes (the real dimension multiplier).
    pub fn c_constant(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

impl core::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(alloc::format!("unknown field `{other}` (expected real or complex)")),
        }
    }
}

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically by exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The monomial `z_index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|alpha|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    dim: usize,
    field: Field,
    terms: BTreeMap<MultiIndex, Complex64>,
    // Highest exponent of each variable; sizes the per-point power tables.
    max_exponents: Vec<u32>,
}

impl Polynomial {
    pub fn zero(dim: usize, field: Field) -> Self {
        Polynomial { dim, field, terms: BTreeMap::new(), max_exponents: vec![0; dim] }
    }

    pub fn constant(dim: usize, field: Field, c: Complex64) -> Result<Self, PolyError> {
        Self::from_terms(dim, field, [(vec![0; dim], c)])
    }

    /// The coordinate function `z_index`.
    pub fn variable(dim: usize, field: Field, index: usize) -> Result<Self, PolyError> {
        if index >= dim {
            return Err(PolyError::VariableOutOfRange { index, dim });
        }
        Self::from_terms(dim, field, [(MultiIndex::unit(dim, index).0, Complex64::new(1.0, 0.0))])
    }

    /// A single monomial `coeff * z^exponents`; the dimension is `exponents.len()`.
    pub fn monomial(field: Field, exponents: Vec<u32>, coeff: Complex64) -> Result<Self, PolyError> {
        let dim = exponents.len();
        Self::from_terms(dim, field, [(exponents, coeff)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// exponents are summed; exact zeros are dropped.
    pub fn from_terms<I>(dim: usize, field: Field, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        if dim == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut map: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != dim {
                return Err(PolyError::DimensionMismatch { expected: dim, got: exp.len() });
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(PolyError::NonFiniteCoefficient);
            }
            if field == Field::Real && c.im != 0.0 {
                return Err(PolyError::ComplexCoefficient(c.im));
            }
            *map.entry(MultiIndex(exp)).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self::from_map(dim, field, map))
    }

    pub fn from_real_terms<I>(dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        Self::from_terms(dim, Field::Real, terms.into_iter().map(|(e, c)| (e, Complex64::new(c, 0.0))))
    }

    fn from_map(dim: usize, field: Field, mut terms: BTreeMap<MultiIndex, Complex64>) -> Self {
        terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        if field == Field::Real {
            for c in terms.values_mut() {
                c.im = 0.0;
            }
        }
        let mut max_exponents = vec![0; dim];
        for alpha in terms.keys() {
            for (m, &a) in max_exponents.iter_mut().zip(&alpha.0) {
                *m = (*m).max(a);
            }
        }
        Polynomial { dim, field, terms, max_exponents }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Complex64 {
        self.terms.get(&MultiIndex(exponents.to_vec())).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|k| k == first),
        }
    }

    /// `sum |c_alpha|`, an upper bound for the sup norm on any `l_p` unit ball.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    fn check_point(&self, z: &[Complex64]) -> Result<(), PolyError> {
        if z.len() != self.dim {
            return Err(PolyError::DimensionMismatch { expected: self.dim, got: z.len() });
        }
        Ok(())
    }

    fn power_table(&self, z: &[Complex64]) -> Vec<Vec<Complex64>> {
        z.iter()
            .zip(&self.max_exponents)
            .map(|(&zi, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                // 0^0 = 1
                let mut acc = Complex64::new(1.0, 0.0);
                row.push(acc);
                for _ in 0..m {
                    acc *= zi;
                    row.push(acc);
                }
                row
            })
            .collect()
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64, PolyError> {
        self.check_point(z)?;
        Ok(self.evaluate_unchecked(z))
    }

    pub(crate) fn evaluate_unchecked(&self, z: &[Complex64]) -> Complex64 {
        let table = self.power_table(z);
        let mut sum = Complex64::new(0.0, 0.0);
        for (alpha, c) in &self.terms {
            let mut m = *c;
            for (row, &a) in table.iter().zip(&alpha.0) {
                m *= row[a as usize];
            }
            sum += m;
        }
        sum
    }

    /// Evaluates at a real point.
    pub fn evaluate_real(&self, x: &[f64]) -> Result<Complex64, PolyError> {
        let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.evaluate(&z)
    }

    /// Analytic partial derivatives (complex derivatives for complex inputs).
    pub fn gradient(&self, z: &[Complex64]) -> Result<Vec<Complex64>, PolyError> {
        self.check_point(z)?;
        Ok(self.value_and_gradient_unchecked(z).1)
    }

    pub fn value_and_gradient(&self, z: &[Complex64]) -> Result<(Complex64, Vec<Complex64>), PolyError> {
        self.check_point(z)?;
        Ok(self.value_and_gradient_unchecked(z))
    }

    pub(crate) fn value_and_gradient_unchecked(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let table = self.power_table(z);
        let zero = Complex64::new(0.0, 0.0);
        let mut value = zero;
        let mut grad = vec![zero; self.dim];
        for (alpha, c) in &self.terms {
            let mut m = *c;
            for (row, &a) in table.iter().zip(&alpha.0) {
                m *= row[a as usize];
            }
            value += m;
            for (j, (&aj, slot)) in alpha.0.iter().zip(grad.iter_mut()).enumerate() {
                if aj == 0 {
                    continue;
                }
                let mut dm = *c * aj as f64;
                for (i, (row, &a)) in table.iter().zip(&alpha.0).enumerate() {
                    let e = if i == j { a - 1 } else { a };
                    dm *= row[e as usize];
                }
                *slot += dm;
            }
        }
        (value, grad)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Sparse convolution of the term maps. Only exact zeros are pruned.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *out.entry(a.add(b)).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        Ok(Self::from_map(self.dim, self.field, out))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.terms.clone();
        for (b, cb) in &other.terms {
            *out.entry(b.clone()).or_insert(Complex64::new(0.0, 0.0)) += cb;
        }
        Ok(Self::from_map(self.dim, self.field, out))
    }

    /// `P^r` by repeated squaring.
    pub fn power(&self, r: u32) -> Result<Polynomial, PolyError> {
        if r == 0 {
            return Err(PolyError::ZeroExponent);
        }
        let mut base = self.clone();
        let mut acc: Option<Polynomial> = None;
        let mut e = r;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.multiply(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.multiply(&base)?;
        }
        Ok(acc.expect("r >= 1"))
    }

    /// Multiplies every coefficient by a real factor.
    pub fn scale(&self, factor: f64) -> Polynomial {
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), c * factor)).collect();
        Self::from_map(self.dim, self.field, terms)
    }

    /// Multiplies every coefficient by a complex factor. Real polynomials
    /// accept only factors with zero imaginary part.
    pub fn scale_complex(&self, factor: Complex64) -> Result<Polynomial, PolyError> {
        if self.field == Field::Real && factor.im != 0.0 {
            return Err(PolyError::ComplexCoefficient(factor.im));
        }
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), c * factor)).collect();
        Ok(Self::from_map(self.dim, self.field, terms))
    }

    /// The same coefficients viewed as a complex polynomial.
    pub fn to_complex(&self) -> Polynomial {
        Polynomial { field: Field::Complex, ..self.clone() }
    }

    /// Sum of the terms of total degree `l`.
    pub fn homogeneous_component(&self, l: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(a, _)| a.degree() == l).map(|(a, c)| (a.clone(), *c)).collect();
        Self::from_map(self.dim, self.field, terms)
    }

    /// Components of degree `0..=deg P`.
    pub fn homogeneous_components(&self) -> Vec<Polynomial> {
        (0..=self.degree()).map(|l| self.homogeneous_component(l)).collect()
    }

    /// `Q(x_1, y_1, ..., x_d, y_d) = |P(x + iy)|^2` as a real polynomial on
    /// `R^{2d}`.
    pub fn realify_modulus_squared(&self) -> Result<Polynomial, PolyError> {
        realify::modulus_squared(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if self.field == Field::Real {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            for (j, &a) in alpha.0.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*z{}", j + 1)?,
                    _ => write!(f, "*z{}^{}", j + 1, a)?,
                }
            }
        }
        Ok(())
    }
}

/// On-disk polynomial format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialRepr {
    pub dim: usize,
    pub field: Field,
    pub terms: Vec<TermRepr>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRepr {
    pub exp: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr {
            dim: p.dim,
            field: p.field,
            terms: p.terms.into_iter().map(|(a, c)| TermRepr { exp: a.0, re: c.re, im: c.im }).collect(),
        }
    }
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = PolyError;

    fn try_from(r: PolynomialRepr) -> Result<Self, Self::Error> {
        Polynomial::from_terms(r.dim, r.field, r.terms.into_iter().map(|t| (t.exp, Complex64::new(t.re, t.im))))
    }
}
