//! Random polynomials with Gaussian coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Field, MultiIndex, Polynomial};

/// All exponent vectors of total degree `k` in `dim` variables, in graded-lex
/// order.
pub fn monomials_of_degree(dim: usize, k: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    fill(&mut cur, 0, k, &mut out);
    out.sort();
    out
}

fn fill(cur: &mut [u32], i: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(MultiIndex::new(cur.to_vec()));
        return;
    }
    for a in 0..=left {
        cur[i] = a;
        fill(cur, i + 1, left - a, out);
    }
}

/// A standard normal scalar of the given field (complex: independent real and
/// imaginary parts, each `N(0, 1/2)`).
pub fn gaussian<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Complex64 {
    let x: f64 = StandardNormal.sample(rng);
    match field {
        Field::Real => Complex64::new(x, 0.0),
        Field::Complex => {
            let y: f64 = StandardNormal.sample(rng);
            Complex64::new(x, y) * core::f64::consts::FRAC_1_SQRT_2
        }
    }
}

/// A random `k`-homogeneous polynomial. Each monomial is kept with
/// probability `density` (at least one always is) and gets a Gaussian
/// coefficient.
pub fn random_homogeneous<R: Rng + ?Sized>(dim: usize, field: Field, k: u32, density: f64, rng: &mut R) -> Polynomial {
    let basis = monomials_of_degree(dim, k);
    random_on_basis(dim, field, &basis, density, rng)
}

/// A random polynomial of degree exactly `k`, built from monomials of every
/// degree `0..=k`; the top-degree part is never empty.
pub fn random_polynomial<R: Rng + ?Sized>(dim: usize, field: Field, k: u32, density: f64, rng: &mut R) -> Polynomial {
    let mut terms = Vec::new();
    for l in 0..k {
        for alpha in monomials_of_degree(dim, l) {
            if rng.random::<f64>() < density {
                terms.push((alpha.exponents().to_vec(), gaussian(field, rng)));
            }
        }
    }
    let top = random_homogeneous(dim, field, k, density, rng);
    terms.extend(top.terms().map(|(a, c)| (a.exponents().to_vec(), *c)));
    Polynomial::from_terms(dim, field, terms).expect("consistent dimensions")
}

fn random_on_basis<R: Rng + ?Sized>(
    dim: usize,
    field: Field,
    basis: &[MultiIndex],
    density: f64,
    rng: &mut R,
) -> Polynomial {
    let forced = rng.random_range(0..basis.len());
    let mut terms = Vec::new();
    for (j, alpha) in basis.iter().enumerate() {
        let keep = j == forced || rng.random::<f64>() < density;
        if keep {
            let mut c = gaussian(field, rng);
            while c == Complex64::new(0.0, 0.0) {
                c = gaussian(field, rng);
            }
            terms.push((alpha.exponents().to_vec(), c));
        }
    }
    Polynomial::from_terms(dim, field, terms).expect("consistent dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::start_rng;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert!(monomials_of_degree(3, 2).iter().all(|a| a.degree() == 2));
    }

    #[test]
    fn random_shapes() {
        let mut rng = start_rng(1);
        for k in 1..5 {
            let p = random_homogeneous(3, Field::Complex, k, 0.5, &mut rng);
            assert!(p.is_homogeneous());
            assert_eq!(p.degree(), k);
            let q = random_polynomial(2, Field::Real, k, 0.5, &mut rng);
            assert_eq!(q.degree(), k);
            assert_eq!(q.field(), Field::Real);
        }
    }
}
