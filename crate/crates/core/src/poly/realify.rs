use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Field, PolyError, Polynomial};

// Binomial row C(m, 0..=m).
fn binomial_row(m: u32) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for j in 1..=m {
        let prev = row[j as usize - 1];
        row.push(prev * (m - j + 1) as f64 / j as f64);
    }
    row
}

/// Expands `P(x + iy)` over `(x_1, y_1, ..., x_d, y_d)` and returns
/// `Re(P)^2 + Im(P)^2` as a real polynomial.
pub(super) fn modulus_squared(p: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.field != Field::Complex {
        return Err(PolyError::NotComplex);
    }
    let d = p.dim;
    let rd = 2 * d;
    let mut expanded = Polynomial::zero(rd, Field::Complex);
    for (alpha, coeff) in &p.terms {
        // prod_j (x_j + i y_j)^{alpha_j}
        let mut term = Polynomial::constant(rd, Field::Complex, *coeff)?;
        for (j, &a) in alpha.exponents().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = binomial_row(a);
            let mut factor_terms = Vec::with_capacity(a as usize + 1);
            for (l, &b) in row.iter().enumerate() {
                let l = l as u32;
                let mut e = vec![0u32; rd];
                e[2 * j] = a - l;
                e[2 * j + 1] = l;
                // i^l
                let unit = match l % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                };
                factor_terms.push((e, unit * b));
            }
            let factor = Polynomial::from_terms(rd, Field::Complex, factor_terms)?;
            term = term.multiply(&factor)?;
        }
        expanded = expanded.add(&term)?;
    }
    let re = Polynomial::from_real_terms(rd, expanded.terms.iter().map(|(a, c)| (a.exponents().to_vec(), c.re)))?;
    let im = Polynomial::from_real_terms(rd, expanded.terms.iter().map(|(a, c)| (a.exponents().to_vec(), c.im)))?;
    re.multiply(&re)?.add(&im.multiply(&im)?)
}
