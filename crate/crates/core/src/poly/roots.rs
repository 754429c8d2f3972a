//! Simultaneous root finding for univariate complex polynomials
//! (Aberth-Ehrlich iteration followed by Newton polishing).

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

const MAX_ITERS: usize = 1000;

// p(x) and p'(x) by Horner; `coeffs` are low-to-high.
fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All complex roots of `sum coeffs[j] x^j`, with multiplicity.
///
/// The leading coefficient must be nonzero. Returns an empty vector for
/// constant input.
pub(crate) fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let m = coeffs.len().saturating_sub(1);
    if m == 0 {
        return Vec::new();
    }
    let lead = coeffs[m];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if m == 1 {
        return alloc::vec![-monic[0]];
    }

    // Initial guesses on a circle whose radius is the Cauchy-style bound
    // max |a_j|^{1/(m-j)}, rotated off the real axis.
    let radius = (0..m).map(|j| monic[j].norm().powf(1.0 / (m - j) as f64)).fold(0.0f64, f64::max).max(1e-12);
    let mut z: Vec<Complex64> =
        (0..m).map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64 + 0.4)).collect();

    let mut done = alloc::vec![false; m];
    for _ in 0..MAX_ITERS {
        let mut all_done = true;
        for k in 0..m {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..m {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff != Complex64::new(0.0, 0.0) {
                        repulsion += diff.inv();
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(1e-300) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    // Newton polish, keeping a step only when it reduces |p|.
    for zk in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = horner(&monic, *zk);
            if dp == Complex64::new(0.0, 0.0) {
                break;
            }
            let cand = *zk - p / dp;
            if horner(&monic, cand).0.norm() < p.norm() {
                *zk = cand;
            } else {
                break;
            }
        }
    }
    z
}
