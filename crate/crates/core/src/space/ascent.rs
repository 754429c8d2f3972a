//! Multi-start projected gradient ascent of `ln |F|` over an `l_p` unit ball.
//!
//! Complex coordinates are optimized as pairs of real coordinates. On the
//! sphere, an outward-pointing gradient is projected onto the tangent
//! hyperplane given by a subgradient of the norm, the step is taken, and the
//! iterate is radially rescaled back (retraction). Step sizes come from
//! halving backtracking starting at 1. Objectives that are homogeneous are
//! kept on the sphere throughout; others may move through the interior.

#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::sample::{sample_point, start_rng};
use super::{Exponent, NormOptions, SpaceSpec};
use crate::par::map_indexed;
use crate::poly::{Field, Polynomial};

/// A function of the form `ln |F(z)|` with `F` holomorphic (or real
/// polynomial).
pub trait LogObjective: Sync {
    fn dim(&self) -> usize;

    /// Whether `F` is homogeneous, so its maximum over the ball is on the sphere.
    fn homogeneous(&self) -> bool;

    /// `ln |F(z)|`; `-inf` on the zero set.
    fn log_value(&self, z: &[Complex64]) -> f64;

    /// `ln |F(z)|` together with the logarithmic derivative `(dF/dz_j) / F`.
    fn log_value_and_gradient(&self, z: &[Complex64]) -> (f64, Vec<Complex64>);
}

/// `sum_i w_i ln |P_i(z)|`, the log of `prod_i |P_i|^{w_i}`, evaluated factor
/// by factor. The product polynomial itself is never formed.
pub struct WeightedLogProduct<'a> {
    polys: Vec<&'a Polynomial>,
    weights: Vec<f64>,
    homogeneous: bool,
}

impl<'a> WeightedLogProduct<'a> {
    /// Panics if the lists differ in length, are empty, or mix dimensions.
    pub fn new(polys: Vec<&'a Polynomial>, weights: Vec<f64>) -> Self {
        assert_eq!(polys.len(), weights.len());
        assert!(!polys.is_empty());
        let dim = polys[0].dim();
        assert!(polys.iter().all(|p| p.dim() == dim));
        let homogeneous = polys.iter().all(|p| p.is_homogeneous());
        WeightedLogProduct { polys, weights, homogeneous }
    }

    /// Largest degree among the factors, i.e. the largest polynomial this
    /// objective ever holds.
    pub fn max_factor_degree(&self) -> u32 {
        self.polys.iter().map(|p| p.degree()).max().unwrap_or(0)
    }
}

impl LogObjective for WeightedLogProduct<'_> {
    fn dim(&self) -> usize {
        self.polys[0].dim()
    }

    fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    fn log_value(&self, z: &[Complex64]) -> f64 {
        let mut total = 0.0;
        for (p, &w) in self.polys.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            total += w * p.evaluate_unchecked(z).norm().ln();
        }
        total
    }

    fn log_value_and_gradient(&self, z: &[Complex64]) -> (f64, Vec<Complex64>) {
        let mut total = 0.0;
        let mut grad = vec![Complex64::new(0.0, 0.0); z.len()];
        for (p, &w) in self.polys.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            let (v, g) = p.value_and_gradient_unchecked(z);
            total += w * v.norm().ln();
            let inv = v.inv() * w;
            for (acc, gj) in grad.iter_mut().zip(g) {
                *acc += gj * inv;
            }
        }
        (total, grad)
    }
}

/// Result of a multi-start maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct AscentOutcome {
    pub point: Vec<Complex64>,
    pub log_value: f64,
    pub starts: usize,
    pub converged_fraction: f64,
    /// Index of the start that produced `point`.
    pub best_start: usize,
}

struct StartOutcome {
    u: Vec<f64>,
    f: f64,
    converged: bool,
}

// Real-coordinate view of the space: d blocks of size 1 (real) or 2 (complex).
struct Geometry {
    block: usize,
    p: Exponent,
}

impl Geometry {
    fn new(space: &SpaceSpec) -> Self {
        let block = match space.field {
            Field::Real => 1,
            Field::Complex => 2,
        };
        Geometry { block, p: space.p }
    }

    fn to_complex(&self, u: &[f64]) -> Vec<Complex64> {
        if self.block == 1 {
            u.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        } else {
            u.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
        }
    }

    fn to_real(&self, z: &[Complex64]) -> Vec<f64> {
        if self.block == 1 {
            z.iter().map(|v| v.re).collect()
        } else {
            z.iter().flat_map(|v| [v.re, v.im]).collect()
        }
    }

    fn moduli(&self, u: &[f64]) -> Vec<f64> {
        if self.block == 1 {
            u.iter().map(|x| x.abs()).collect()
        } else {
            u.chunks_exact(2).map(|c| c[0].hypot(c[1])).collect()
        }
    }

    fn norm(&self, u: &[f64]) -> f64 {
        self.p.norm_of_moduli(self.moduli(u))
    }

    /// Rescales onto the sphere (or into the ball when `onto_sphere` is
    /// false). Returns false for the zero vector.
    fn retract(&self, u: &mut [f64], onto_sphere: bool) -> bool {
        let n = self.norm(u);
        if n == 0.0 || !n.is_finite() {
            return false;
        }
        if onto_sphere || n > 1.0 {
            for x in u.iter_mut() {
                *x /= n;
            }
            // Rounding may leave the norm a hair above one.
            for _ in 0..8 {
                if self.norm(u) <= 1.0 {
                    break;
                }
                for x in u.iter_mut() {
                    *x *= 1.0 - f64::EPSILON;
                }
            }
        }
        true
    }

    /// Projects the ascent direction `g` at a point `u` of the unit sphere
    /// onto the cone of directions that do not leave the ball to first order.
    ///
    /// For finite `p` the outward part along the gradient of the norm is
    /// removed. For `p = inf` every block at the largest modulus is a face of
    /// the sphere, and the outward radial part of each such block is clipped.
    fn tangent(&self, u: &[f64], g: &[f64]) -> Vec<f64> {
        let moduli = self.moduli(u);
        let b = self.block;
        let mut dir = g.to_vec();
        match self.p {
            Exponent::Infinite => {
                let top = moduli.iter().copied().fold(0.0, f64::max);
                for (j, &m) in moduli.iter().enumerate() {
                    if m == 0.0 || m < top * (1.0 - 1e-9) {
                        continue;
                    }
                    let radial: f64 = (0..b).map(|t| g[j * b + t] * u[j * b + t] / m).sum();
                    if radial > 0.0 {
                        for t in 0..b {
                            dir[j * b + t] -= radial * u[j * b + t] / m;
                        }
                    }
                }
            }
            Exponent::Finite(p) => {
                let mut n = vec![0.0; u.len()];
                for (j, &m) in moduli.iter().enumerate() {
                    if m == 0.0 {
                        continue;
                    }
                    let w = if p == 1.0 { 1.0 } else { m.powf(p - 1.0) };
                    for t in 0..b {
                        n[j * b + t] = w * u[j * b + t] / m;
                    }
                }
                let gn = dot(g, &n);
                let nn = dot(&n, &n);
                if gn > 0.0 && nn > 0.0 {
                    for (d, ni) in dir.iter_mut().zip(&n) {
                        *d -= gn / nn * ni;
                    }
                }
            }
        }
        dir
    }

    /// The point of the unit ball maximizing `<g, x>`.
    fn linear_maximizer(&self, g: &[f64]) -> Vec<f64> {
        let b = self.block;
        let mags: Vec<f64> = g.chunks_exact(b).map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
        let top = mags.iter().copied().fold(0.0, f64::max);
        let mut s = vec![0.0; g.len()];
        if top == 0.0 {
            return s;
        }
        let mut put = |j: usize, w: f64| {
            for t in 0..b {
                s[j * b + t] = w * g[j * b + t] / mags[j];
            }
        };
        match self.p {
            Exponent::Infinite => {
                for (j, &m) in mags.iter().enumerate() {
                    if m > 0.0 {
                        put(j, 1.0);
                    }
                }
            }
            Exponent::Finite(1.0) => {
                let j = mags.iter().position(|&m| m == top).expect("top is attained");
                put(j, 1.0);
            }
            Exponent::Finite(p) => {
                let q = p / (p - 1.0);
                let total: f64 = mags.iter().map(|m| (m / top).powf(q)).sum();
                let scale = total.powf((q - 1.0) / q);
                for (j, &m) in mags.iter().enumerate() {
                    if m > 0.0 {
                        put(j, (m / top).powf(q - 1.0) / scale);
                    }
                }
            }
        }
        s
    }

    fn real_gradient(&self, h: &[Complex64]) -> Vec<f64> {
        if self.block == 1 {
            h.iter().map(|v| v.re).collect()
        } else {
            h.iter().flat_map(|v| [v.re, -v.im]).collect()
        }
    }
}

const ARMIJO: f64 = 0.1;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Halves the step from one until the Armijo condition holds and returns
/// the best improving point seen on the way. Plain Armijo crawls along the
/// kinks of the p = 1 and p = inf spheres, while taking the first increase
/// zig-zags across smooth ones.
fn line_search<F: Fn(&[f64]) -> f64>(
    geo: &Geometry,
    eval: &F,
    u: &[f64],
    f: f64,
    g: &[f64],
    dir: &[f64],
    onto_sphere: bool,
) -> Option<(Vec<f64>, f64)> {
    let slope = dot(g, dir);
    if !(slope > 0.0) {
        return None;
    }
    let mut step = 1.0;
    let mut accepted: Option<(Vec<f64>, f64)> = None;
    for _ in 0..64 {
        let mut cand: Vec<f64> = u.iter().zip(dir).map(|(x, d)| x + step * d).collect();
        if geo.retract(&mut cand, onto_sphere) {
            let fc = eval(&cand);
            if fc > f && accepted.as_ref().is_none_or(|(_, best)| fc > *best) {
                accepted = Some((cand, fc));
            }
            if fc > f + ARMIJO * step * slope {
                break;
            }
        }
        step *= 0.5;
    }
    accepted
}

fn run_start<O: LogObjective + ?Sized>(
    obj: &O,
    space: &SpaceSpec,
    geo: &Geometry,
    opts: &NormOptions,
    index: usize,
) -> StartOutcome {
    let homogeneous = obj.homogeneous();
    let eval = |u: &[f64]| obj.log_value(&geo.to_complex(u));
    let mut rng = start_rng(opts.seed.wrapping_add(index as u64));

    let mut start = None;
    for _ in 0..64 {
        let raw = geo.to_real(&sample_point(space, &mut rng));
        let mut pushed = raw.clone();
        if !geo.retract(&mut pushed, true) {
            continue;
        }
        let fp = eval(&pushed);
        let cand = if homogeneous {
            (pushed, fp)
        } else {
            let fr = eval(&raw);
            if fp >= fr {
                (pushed, fp)
            } else {
                (raw, fr)
            }
        };
        if cand.1.is_finite() {
            start = Some(cand);
            break;
        }
    }
    let Some((mut u, mut f)) = start else {
        return StartOutcome { u: vec![0.0; space.real_dim()], f: f64::NEG_INFINITY, converged: false };
    };

    let mut converged = false;
    for _ in 0..opts.max_iters {
        let (_, h) = obj.log_value_and_gradient(&geo.to_complex(&u));
        let g = geo.real_gradient(&h);
        if g.iter().any(|x| !x.is_finite()) {
            break;
        }
        let on_sphere = homogeneous || geo.norm(&u) >= 1.0 - 1e-12;
        let dir = if on_sphere { geo.tangent(&u, &g) } else { g.clone() };
        let vertex = geo.linear_maximizer(&g);
        let toward: Vec<f64> = vertex.iter().zip(&u).map(|(s, x)| s - x).collect();

        let projected = line_search(geo, &eval, &u, f, &g, &dir, homogeneous);
        let conditional = line_search(geo, &eval, &u, f, &g, &toward, homogeneous);
        let accepted = match (projected, conditional) {
            (Some(a), Some(b)) => Some(if b.1 > a.1 { b } else { a }),
            (a, b) => a.or(b),
        };
        let Some((cand, fc)) = accepted else {
            converged = true;
            break;
        };
        let change = fc - f;
        u = cand;
        f = fc;
        if change <= opts.tol * f.abs().max(1.0) {
            converged = true;
            break;
        }
    }
    StartOutcome { u, f, converged }
}

/// Maximizes `obj` over the unit ball of `space` from `opts.starts` random
/// starts. Start `i` uses the stream seeded with `opts.seed + i`, and the
/// best start wins (lowest index on ties), so the outcome does not depend on
/// how starts are scheduled.
pub fn maximize<O: LogObjective + ?Sized>(obj: &O, space: &SpaceSpec, opts: &NormOptions) -> AscentOutcome {
    let geo = Geometry::new(space);
    let starts = opts.starts_for(space).max(1);
    let outcomes = map_indexed(starts, |i| run_start(obj, space, &geo, opts, i));
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.f > outcomes[best].f {
            best = i;
        }
    }
    let converged = outcomes.iter().filter(|o| o.converged).count();
    let winner = &outcomes[best];
    AscentOutcome {
        point: geo.to_complex(&winner.u),
        log_value: winner.f,
        starts,
        converged_fraction: converged as f64 / starts as f64,
        best_start: best,
    }
}
