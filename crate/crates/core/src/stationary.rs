//! Fixed-point curves and equilibria.
//!
//! For the unit-symmetric system the non-trivial zero sets of
//! `f(u, w) = u - u^3 - u^2 w` and `g(u, w) = w - w^3 - u w^2` are the
//! hyperbola branches `u = -w/2 ± sqrt((w/2)^2 + 1)` and its mirror image.
//! Their crossings are the coupled equilibria. [`stationary_points`] finds all
//! equilibria in a box by grid-seeded Newton iteration, for any coefficients.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::Params;
use crate::error::{Error, Result};

/// Right-hand sides `(f, g)` of the unit-symmetric system.
pub fn f_g(u: f64, w: f64) -> (f64, f64) {
    (u - u * u * u - u * u * w, w - w * w * w - u * w * w)
}

/// Which coordinate a curve is solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveAxis {
    /// `u` as a function of `w`, zero set of `f`.
    UOfW,
    /// `w` as a function of `u`, zero set of `g`.
    WOfU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedPointCurve {
    pub which: CurveAxis,
    pub branch: Branch,
}

impl FixedPointCurve {
    pub const ALL: [FixedPointCurve; 4] = [
        FixedPointCurve::new(CurveAxis::UOfW, Branch::Plus),
        FixedPointCurve::new(CurveAxis::UOfW, Branch::Minus),
        FixedPointCurve::new(CurveAxis::WOfU, Branch::Plus),
        FixedPointCurve::new(CurveAxis::WOfU, Branch::Minus),
    ];

    pub const fn new(which: CurveAxis, branch: Branch) -> Self {
        Self { which, branch }
    }

    /// Curve value at parameter `s` (`w` for [`CurveAxis::UOfW`], `u` otherwise).
    pub fn eval(&self, s: f64) -> f64 {
        curve_eval(*self, s)
    }

    /// Point `(u, w)` on the curve at parameter `s`.
    pub fn point(&self, s: f64) -> (f64, f64) {
        let v = self.eval(s);
        match self.which {
            CurveAxis::UOfW => (v, s),
            CurveAxis::WOfU => (s, v),
        }
    }
}

/// `-s/2 ± sqrt((s/2)^2 + 1)`.
pub fn curve_eval(c: FixedPointCurve, s: f64) -> f64 {
    let half = 0.5 * s;
    -half + c.branch.sign() * (half * half + 1.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumKind {
    TrivialOrigin,
    Axis,
    CoupledNontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub u: f64,
    pub w: f64,
    pub kind: EquilibriumKind,
}

/// Axis-aligned search rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub u: (f64, f64),
    pub w: (f64, f64),
}

impl SearchBox {
    pub fn square(half_width: f64) -> Self {
        Self {
            u: (-half_width, half_width),
            w: (-half_width, half_width),
        }
    }

    pub fn contains(&self, u: f64, w: f64) -> bool {
        (self.u.0..=self.u.1).contains(&u) && (self.w.0..=self.w.1).contains(&w)
    }
}

impl Default for SearchBox {
    fn default() -> Self {
        Self::square(2.0)
    }
}

/// A seed where the Jacobian was rank-deficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularSeed {
    pub u: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryReport {
    /// Sorted lexicographically by `(u, w)`.
    pub equilibria: Vec<Equilibrium>,
    pub singular_seeds: Vec<SingularSeed>,
}

impl StationaryReport {
    pub fn of_kind(&self, kind: EquilibriumKind) -> impl Iterator<Item = &Equilibrium> {
        self.equilibria.iter().filter(move |e| e.kind == kind)
    }
}

pub const DEDUP_RADIUS: f64 = 1e-8;
pub const RESIDUAL_GATE: f64 = 1e-12;
const ZERO_TOL: f64 = 1e-10;
const SINGULAR_DET: f64 = 1e-14;
const MAX_NEWTON_ITERS: usize = 60;

fn field(p: &Params, u: f64, w: f64) -> (f64, f64) {
    p.accel(u, w)
}

fn jacobian(p: &Params, u: f64, w: f64) -> [[f64; 2]; 2] {
    [
        [
            p.m1 - 3.0 * p.k1 * u * u - 2.0 * p.kp1 * u * w,
            -p.kp1 * u * u,
        ],
        [
            -p.kp2 * w * w,
            p.m2 - 3.0 * p.k2 * w * w - 2.0 * p.kp2 * u * w,
        ],
    ]
}

enum NewtonOutcome {
    Root(f64, f64),
    Singular,
    NoConvergence,
}

fn newton(p: &Params, mut u: f64, mut w: f64) -> NewtonOutcome {
    for iter in 0..MAX_NEWTON_ITERS {
        let (f, g) = field(p, u, w);
        if !(f.is_finite() && g.is_finite()) {
            return NewtonOutcome::NoConvergence;
        }
        let j = jacobian(p, u, w);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < SINGULAR_DET {
            return if iter == 0 {
                NewtonOutcome::Singular
            } else {
                NewtonOutcome::NoConvergence
            };
        }
        let du = (j[1][1] * f - j[0][1] * g) / det;
        let dw = (j[0][0] * g - j[1][0] * f) / det;
        u -= du;
        w -= dw;
        if du.abs().max(dw.abs()) < 1e-15 * (1.0 + u.abs().max(w.abs())) {
            break;
        }
    }
    let (f, g) = field(p, u, w);
    if f.abs() < RESIDUAL_GATE && g.abs() < RESIDUAL_GATE {
        NewtonOutcome::Root(u, w)
    } else {
        NewtonOutcome::NoConvergence
    }
}

fn classify_root(u: f64, w: f64) -> Equilibrium {
    // Snap roots that sit on an axis to exact zero so the result set is
    // reproducible across seeds.
    let u = if u.abs() < ZERO_TOL { 0.0 } else { u };
    let w = if w.abs() < ZERO_TOL { 0.0 } else { w };
    let kind = match (u == 0.0, w == 0.0) {
        (true, true) => EquilibriumKind::TrivialOrigin,
        (true, false) | (false, true) => EquilibriumKind::Axis,
        (false, false) => EquilibriumKind::CoupledNontrivial,
    };
    Equilibrium { u, w, kind }
}

/// All equilibria inside `search`, found by Newton iteration from a
/// `grid_n x grid_n` lattice of seeds.
pub fn stationary_points(p: &Params, search: SearchBox, grid_n: usize) -> Result<StationaryReport> {
    p.validate()?;
    if grid_n < 16 {
        return Err(Error::InvalidArgument(format!(
            "grid_n must be >= 16, got {grid_n}"
        )));
    }
    if !(search.u.0 <= -2.0 && search.u.1 >= 2.0 && search.w.0 <= -2.0 && search.w.1 >= 2.0) {
        return Err(Error::InvalidArgument(
            "search box must contain [-2, 2] x [-2, 2]".into(),
        ));
    }

    let lattice = |range: (f64, f64), k: usize| {
        range.0 + (range.1 - range.0) * k as f64 / (grid_n - 1) as f64
    };
    let outcomes: Vec<(f64, f64, NewtonOutcome)> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let u0 = lattice(search.u, idx % grid_n);
            let w0 = lattice(search.w, idx / grid_n);
            (u0, w0, newton(p, u0, w0))
        })
        .collect();

    let mut roots: Vec<Equilibrium> = Vec::new();
    let mut singular_seeds = Vec::new();
    for (u0, w0, outcome) in outcomes {
        match outcome {
            NewtonOutcome::Root(u, w) if search.contains(u, w) => roots.push(classify_root(u, w)),
            NewtonOutcome::Singular => singular_seeds.push(SingularSeed { u: u0, w: w0 }),
            _ => {}
        }
    }

    roots.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.w.total_cmp(&b.w)));
    let mut equilibria: Vec<Equilibrium> = Vec::new();
    for r in roots {
        let dup = equilibria
            .iter()
            .any(|e| (e.u - r.u).hypot(e.w - r.w) < DEDUP_RADIUS);
        if !dup {
            equilibria.push(r);
        }
    }
    Ok(StationaryReport {
        equilibria,
        singular_seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn f_g_values() {
        let (f, g) = f_g(0.0, 0.3);
        assert_eq!(f, 0.0);
        assert!((g - 0.273).abs() < 1e-15);
        assert_eq!(f_g(1.0, 0.0), (0.0, 0.0));
        let (f, g) = f_g(R, R);
        assert!(f.abs() < 1e-15 && g.abs() < 1e-15);
    }

    #[test]
    fn f_g_agrees_with_params_accel() {
        let p = Params::symmetric();
        for &(u, w) in &[(0.3, 0.6), (-1.1, 0.2), (1.7, -1.9)] {
            let (f, g) = f_g(u, w);
            let (a, b) = p.accel(u, w);
            assert!((f - a).abs() < 1e-13 && (g - b).abs() < 1e-13);
        }
    }

    #[test]
    fn curve_values() {
        let plus = FixedPointCurve::new(CurveAxis::UOfW, Branch::Plus);
        let minus = FixedPointCurve::new(CurveAxis::UOfW, Branch::Minus);
        assert_eq!(plus.eval(0.0), 1.0);
        assert_eq!(minus.eval(0.0), -1.0);
        assert!((plus.eval(R) - R).abs() < 1e-15);
        assert!((1.125_f64.sqrt() - 1.0606601717798212).abs() < 1e-15);
    }

    #[test]
    fn curves_pass_through_coupled_equilibria() {
        let u_plus = FixedPointCurve::new(CurveAxis::UOfW, Branch::Plus);
        let w_plus = FixedPointCurve::new(CurveAxis::WOfU, Branch::Plus);
        let u_minus = FixedPointCurve::new(CurveAxis::UOfW, Branch::Minus);
        let w_minus = FixedPointCurve::new(CurveAxis::WOfU, Branch::Minus);
        assert!((u_plus.eval(R) - R).abs() < 1e-15);
        assert!((w_plus.eval(R) - R).abs() < 1e-15);
        assert!((u_minus.eval(-R) + R).abs() < 1e-15);
        assert!((w_minus.eval(-R) + R).abs() < 1e-15);
    }

    #[test]
    fn symmetric_equilibria_exact_set() {
        let rep = stationary_points(&Params::symmetric(), SearchBox::default(), 32).unwrap();
        let expected = [
            (-1.0, 0.0),
            (-R, -R),
            (0.0, -1.0),
            (0.0, 0.0),
            (0.0, 1.0),
            (R, R),
            (1.0, 0.0),
        ];
        assert_eq!(rep.equilibria.len(), 7, "{:?}", rep.equilibria);
        for (e, (u, w)) in rep.equilibria.iter().zip(expected) {
            assert!((e.u - u).abs() < 1e-12 && (e.w - w).abs() < 1e-12, "{e:?}");
        }
        assert_eq!(rep.of_kind(EquilibriumKind::CoupledNontrivial).count(), 2);
        assert_eq!(rep.of_kind(EquilibriumKind::Axis).count(), 4);
        assert_eq!(rep.of_kind(EquilibriumKind::TrivialOrigin).count(), 1);
    }

    #[test]
    fn rejects_small_grid_and_box() {
        let p = Params::symmetric();
        assert!(stationary_points(&p, SearchBox::default(), 8).is_err());
        assert!(stationary_points(&p, SearchBox::square(1.0), 32).is_err());
    }

    #[test]
    fn asymmetric_coefficients_still_solve() {
        let p = Params {
            m1: 2.0,
            k1: 0.5,
            kp2: 0.3,
            ..Params::symmetric()
        };
        let rep = stationary_points(&p, SearchBox::square(3.0), 32).unwrap();
        assert!(!rep.equilibria.is_empty());
        for e in &rep.equilibria {
            let (f, g) = p.accel(e.u, e.w);
            assert!(f.abs() < RESIDUAL_GATE && g.abs() < RESIDUAL_GATE);
        }
        // u-axis equilibria of u'' = 2u - 0.5u^3 sit at u = ±2.
        assert!(rep
            .equilibria
            .iter()
            .any(|e| (e.u - 2.0).abs() < 1e-12 && e.w == 0.0));
    }
}
