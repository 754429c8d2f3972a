//! Lower bounds for norms of products of polynomials on finite-dimensional
//! `l_p` spaces, Remez-type sublevel estimates, and a constructive solver for
//! the polynomial plank problem.
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `parallel` feature to
//! spread multi-start searches over a rayon pool. Results do not depend on the
//! thread count. Since `parallel` links `std`, it also switches elementary
//! float functions from `libm` to the platform's, which may change the last
//! bits of reported values.
//!
//! Module map:
//!
//! * [`poly`]: sparse multivariate polynomials over the reals or complexes.
//! * [`space`]: `l_p^d` models, uniform ball sampling, exact monomial norms
//!   and multi-start sup-norm estimation.
//! * [`bounds`]: closed-form product-inequality constants, their comparison,
//!   empirical checks and searches for near-extremal tuples.
//! * [`remez`]: Chebyshev polynomials, Remez-type bounds and Monte-Carlo
//!   sublevel-set measures.
//! * [`plank`]: weight allocation, rational approximation and witness search.
//! * [`extremal`]: exact sharpness examples on `l_1^d` and `l_2^n`.
#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN is rejected as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod extremal;
pub mod plank;
pub mod poly;
pub mod remez;
pub mod space;

mod par;

pub use num_complex::Complex64;

pub use bounds::{BoundKind, BoundSpec};
pub use plank::{PlankInstance, PlankReport, Regime};
pub use poly::{Field, MultiIndex, Polynomial};
pub use space::{Exponent, NormEstimate, NormOptions, SpaceSpec};
