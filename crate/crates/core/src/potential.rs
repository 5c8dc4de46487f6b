//! Potential `P(u, w)` of the unit-symmetric system.
//!
//! `P` integrates `f(., w)` from `u` to an endpoint `u*` on the fixed-point
//! curve and `g(u, .)` from `w` to `w*`. The endpoint branch follows the side
//! of the anti-diagonal: plus branch where `u + w > 0`, minus branch where
//! `u + w < 0`. On `u + w = 0` the plus branch is used; both branches give
//! the same value there, so `P` is continuous across the anti-diagonal.
//!
//! [`evaluate_p`] is the closed form; [`evaluate_p_quadrature`] evaluates
//! the line integrals numerically and is kept as an independent check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stationary::{curve_eval, f_g, Branch, CurveAxis, FixedPointCurve};

/// Panels per leg for [`evaluate_p_quadrature`].
pub const QUADRATURE_PANELS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchedEndpoints {
    pub u_star: f64,
    pub w_star: f64,
    pub branch: Branch,
}

pub fn endpoints(u: f64, w: f64) -> BranchedEndpoints {
    let branch = if u + w >= 0.0 {
        Branch::Plus
    } else {
        Branch::Minus
    };
    BranchedEndpoints {
        u_star: curve_eval(FixedPointCurve::new(CurveAxis::UOfW, branch), w),
        w_star: curve_eval(FixedPointCurve::new(CurveAxis::WOfU, branch), u),
        branch,
    }
}

/// Closed-form potential.
pub fn evaluate_p(u: f64, w: f64) -> f64 {
    let BranchedEndpoints { u_star, w_star, .. } = endpoints(u, w);
    let sq = |x: f64| x * x;
    let cube = |x: f64| x * x * x;
    let quart = |x: f64| sq(sq(x));
    0.5 * (sq(u_star) + sq(w_star) - (sq(u) + sq(w)))
        - 0.25 * (quart(u_star) + quart(w_star) - (quart(u) + quart(w)))
        - (u * (cube(w_star) - cube(w)) + w * (cube(u_star) - cube(u))) / 3.0
}

fn simpson(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    debug_assert!(panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for k in 1..panels {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// Potential from the defining line integrals (composite Simpson).
pub fn evaluate_p_quadrature(u: f64, w: f64) -> f64 {
    let BranchedEndpoints { u_star, w_star, .. } = endpoints(u, w);
    let along_u = simpson(u, u_star, QUADRATURE_PANELS, |s| f_g(s, w).0);
    let along_w = simpson(w, w_star, QUADRATURE_PANELS, |s| f_g(u, s).1);
    along_u + along_w
}

/// `P` sampled on a uniform lattice, endpoints included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialGrid {
    pub u_range: (f64, f64),
    pub w_range: (f64, f64),
    pub n_u: usize,
    pub n_w: usize,
    /// Row-major with `u` fastest: `values[j * n_u + i] = P(u_i, w_j)`.
    pub values: Vec<f64>,
}

pub(crate) fn lattice(range: (f64, f64), n: usize, k: usize) -> f64 {
    if n <= 1 {
        range.0
    } else if k == n - 1 {
        range.1
    } else {
        range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64
    }
}

impl PotentialGrid {
    pub fn u_at(&self, i: usize) -> f64 {
        lattice(self.u_range, self.n_u, i)
    }

    pub fn w_at(&self, j: usize) -> f64 {
        lattice(self.w_range, self.n_w, j)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.n_u + i]
    }

    /// Interior lattice points strictly below all eight neighbours.
    pub fn strict_local_minima(&self) -> Vec<(usize, usize)> {
        self.local_minima(true)
    }

    /// Interior lattice points no higher than any of their eight neighbours.
    /// Unlike [`Self::strict_local_minima`] this keeps pairs of exactly
    /// equal neighbours, which symmetric fields produce on coarse lattices.
    pub fn weak_local_minima(&self) -> Vec<(usize, usize)> {
        self.local_minima(false)
    }

    fn local_minima(&self, strict: bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.n_w.saturating_sub(1) {
            for i in 1..self.n_u.saturating_sub(1) {
                let v = self.get(i, j);
                let lowest = (-1isize..=1).all(|dj| {
                    (-1isize..=1).all(|di| {
                        let n = self.get((i as isize + di) as usize, (j as isize + dj) as usize);
                        (di == 0 && dj == 0) || v < n || (!strict && v == n)
                    })
                });
                if lowest {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn sample_grid(
    u_range: (f64, f64),
    w_range: (f64, f64),
    n_u: usize,
    n_w: usize,
) -> Result<PotentialGrid> {
    if n_u < 2 || n_w < 2 {
        return Err(Error::InvalidArgument(format!(
            "potential grid needs at least 2 samples per axis, got {n_u} x {n_w}"
        )));
    }
    let values: Vec<f64> = (0..n_w)
        .into_par_iter()
        .flat_map_iter(|j| {
            let w = lattice(w_range, n_w, j);
            (0..n_u).map(move |i| evaluate_p(lattice(u_range, n_u, i), w))
        })
        .collect();
    Ok(PotentialGrid {
        u_range,
        w_range,
        n_u,
        n_w,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub u: f64,
    pub w: f64,
    pub p: f64,
}

/// Stop refining once the compass step drops below this.
const REFINE_STEP: f64 = 1e-9;

fn refine(mut u: f64, mut w: f64, mut h: f64) -> Minimum {
    let mut best = evaluate_p(u, w);
    while h > REFINE_STEP {
        let moved = [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)]
            .into_iter()
            .find_map(|(du, dw)| {
                let v = evaluate_p(u + du, w + dw);
                (v < best).then_some((u + du, w + dw, v))
            });
        match moved {
            Some((nu, nw, v)) => {
                u = nu;
                w = nw;
                best = v;
            }
            None => h *= 0.5,
        }
    }
    Minimum { u, w, p: best }
}

/// Grid minima refined by compass search on [`evaluate_p`]; seeds that
/// refine to the same point are merged.
///
/// Expects at least 101 samples per axis over a window containing
/// `[-1.5, 1.5]^2` for the unit-symmetric picture to be resolved.
pub fn locate_minima(grid: &PotentialGrid) -> Vec<Minimum> {
    let du = (grid.u_range.1 - grid.u_range.0) / (grid.n_u - 1) as f64;
    let dw = (grid.w_range.1 - grid.w_range.0) / (grid.n_w - 1) as f64;
    let h = du.abs().max(dw.abs());
    let mut out: Vec<Minimum> = Vec::new();
    for (i, j) in grid.weak_local_minima() {
        let m = refine(grid.u_at(i), grid.w_at(j), h);
        if !out.iter().any(|o| (o.u - m.u).hypot(o.w - m.w) < 1e-6) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.w.total_cmp(&b.w)));
    out
}
