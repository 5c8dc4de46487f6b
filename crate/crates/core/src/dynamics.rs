//! The coupled cubic vector field, its invariant-line reductions and
//! fixed-step time integration.
//!
//! The system is
//!
//! ```text
//! u_tt = m1 u - k1 u^3 - kp1 u^2 w
//! w_tt = m2 w - k2 w^3 - kp2 u w^2
//! ```
//!
//! integrated as a first-order system in `(u, w, u_t, w_t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed-step integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Classical fourth-order Runge-Kutta.
    #[default]
    Rk4,
    /// Second-order velocity Verlet. Only meant as an independent cross-check.
    VelocityVerlet,
}

/// Default time step, 2^-8.
pub const DEFAULT_STEP: f64 = 1.0 / 256.0;
pub const DEFAULT_HORIZON: f64 = 1024.0;
pub const DEFAULT_ESCAPE_RADIUS: f64 = 10.0;
/// Target number of stored samples for [`Params::default_stride`].
pub const DEFAULT_SAMPLE_COUNT: usize = 4096;

/// Coefficients of the coupled system plus integration controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub m1: f64,
    pub m2: f64,
    pub k1: f64,
    pub k2: f64,
    pub kp1: f64,
    pub kp2: f64,
    pub step: f64,
    pub horizon: f64,
    pub escape_radius: f64,
    pub scheme: Scheme,
}

impl Default for Params {
    fn default() -> Self {
        Self::symmetric()
    }
}

impl Params {
    /// All six coefficients equal to one, default step, horizon and radius.
    pub fn symmetric() -> Self {
        Self {
            m1: 1.0,
            m2: 1.0,
            k1: 1.0,
            k2: 1.0,
            kp1: 1.0,
            kp2: 1.0,
            step: DEFAULT_STEP,
            horizon: DEFAULT_HORIZON,
            escape_radius: DEFAULT_ESCAPE_RADIUS,
            scheme: Scheme::Rk4,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn with_horizon(mut self, horizon: f64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn with_escape_radius(mut self, radius: f64) -> Self {
        self.escape_radius = radius;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    /// True when the system is invariant under exchanging `u` and `w`.
    pub fn is_exchange_symmetric(&self) -> bool {
        self.m1 == self.m2 && self.k1 == self.k2 && self.kp1 == self.kp2
    }

    /// True for the unit-coefficient case that the reduced equations,
    /// fixed-point curves and potential are written for.
    pub fn is_unit_symmetric(&self) -> bool {
        [self.m1, self.m2, self.k1, self.k2, self.kp1, self.kp2]
            .iter()
            .all(|&c| c == 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let coeffs = [self.m1, self.m2, self.k1, self.k2, self.kp1, self.kp2];
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParams("coefficients must be finite".into()));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "step must be > 0, got {}",
                self.step
            )));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "horizon must be > 0, got {}",
                self.horizon
            )));
        }
        if !(self.escape_radius > 1.0 && self.escape_radius.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "escape_radius must be > 1, got {}",
                self.escape_radius
            )));
        }
        Ok(())
    }

    /// Number of integration steps needed to reach the horizon.
    pub fn step_count(&self) -> usize {
        ((self.horizon / self.step) - 1e-9).ceil().max(1.0) as usize
    }

    /// Output stride that stores about [`DEFAULT_SAMPLE_COUNT`] samples.
    pub fn default_stride(&self) -> usize {
        self.step_count().div_ceil(DEFAULT_SAMPLE_COUNT).max(1)
    }

    /// Accelerations `(u_tt, w_tt)` at `(u, w)`.
    ///
    /// Written in factored form so that for exchange-symmetric coefficients
    /// swapping the inputs swaps the outputs bit for bit, and negating the
    /// inputs negates the outputs bit for bit.
    #[inline]
    pub fn accel(&self, u: f64, w: f64) -> (f64, f64) {
        let uw = u * w;
        (
            u * (self.m1 - self.k1 * (u * u) - self.kp1 * uw),
            w * (self.m2 - self.k2 * (w * w) - self.kp2 * uw),
        )
    }
}

/// A point in phase space at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub t: f64,
    pub u: f64,
    pub w: f64,
    pub ut: f64,
    pub wt: f64,
}

impl State {
    /// Initial condition at `t = 0` with zero velocities.
    pub fn at_rest(u0: f64, w0: f64) -> Self {
        Self {
            t: 0.0,
            u: u0,
            w: w0,
            ut: 0.0,
            wt: 0.0,
        }
    }

    pub fn new(t: f64, u: f64, w: f64, ut: f64, wt: f64) -> Self {
        Self { t, u, w, ut, wt }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.u.is_finite()
            && self.w.is_finite()
            && self.ut.is_finite()
            && self.wt.is_finite()
    }

    /// `max(|u|, |w|)`.
    pub fn amplitude(&self) -> f64 {
        self.u.abs().max(self.w.abs())
    }

    /// Image under `(u, w, u_t, w_t) -> (w, u, w_t, u_t)`.
    pub fn exchanged(&self) -> Self {
        Self::new(self.t, self.w, self.u, self.wt, self.ut)
    }

    /// Image under `(u, w, u_t, w_t) -> (-u, -w, -u_t, -w_t)`.
    pub fn negated(&self) -> Self {
        Self::new(self.t, -self.u, -self.w, -self.ut, -self.wt)
    }

    /// Same position, velocities reversed.
    pub fn reversed(&self) -> Self {
        Self::new(self.t, self.u, self.w, -self.ut, -self.wt)
    }

    fn to_array(self) -> [f64; 4] {
        [self.u, self.w, self.ut, self.wt]
    }

    fn from_array(t: f64, y: [f64; 4]) -> Self {
        Self::new(t, y[0], y[1], y[2], y[3])
    }
}

/// Time derivative `(u_t, w_t, u_tt, w_tt)` of the first-order system.
pub fn rhs(s: &State, p: &Params) -> [f64; 4] {
    let (a, b) = p.accel(s.u, s.w);
    [s.ut, s.wt, a, b]
}

#[inline]
fn deriv(y: &[f64; 4], p: &Params) -> [f64; 4] {
    let (a, b) = p.accel(y[0], y[1]);
    [y[2], y[3], a, b]
}

#[inline]
fn axpy(y: &[f64; 4], h: f64, k: &[f64; 4]) -> [f64; 4] {
    [
        y[0] + h * k[0],
        y[1] + h * k[1],
        y[2] + h * k[2],
        y[3] + h * k[3],
    ]
}

fn rk4_step(y: &[f64; 4], h: f64, p: &Params) -> [f64; 4] {
    let k1 = deriv(y, p);
    let k2 = deriv(&axpy(y, 0.5 * h, &k1), p);
    let k3 = deriv(&axpy(y, 0.5 * h, &k2), p);
    let k4 = deriv(&axpy(y, h, &k3), p);
    let mut out = *y;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn verlet_step(y: &[f64; 4], h: f64, p: &Params) -> [f64; 4] {
    let (a0, b0) = p.accel(y[0], y[1]);
    let u = y[0] + h * y[2] + 0.5 * h * h * a0;
    let w = y[1] + h * y[3] + 0.5 * h * h * b0;
    let (a1, b1) = p.accel(u, w);
    [u, w, y[2] + 0.5 * h * (a0 + a1), y[3] + 0.5 * h * (b0 + b1)]
}

/// Advance one step of size `h` with the configured scheme.
pub fn step(s: &State, h: f64, p: &Params) -> State {
    let y = s.to_array();
    let next = match p.scheme {
        Scheme::Rk4 => rk4_step(&y, h, p),
        Scheme::VelocityVerlet => verlet_step(&y, h, p),
    };
    State::from_array(s.t + h, next)
}

/// A time-sampled solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub params: Params,
    pub initial: State,
    /// Every `stride`-th step starting with `initial`; the final state (at the
    /// horizon, or the escaping state) is always the last sample.
    pub samples: Vec<State>,
    pub stride: usize,
    /// Time at which `max(|u|, |w|)` first reached the escape radius.
    pub escape_time: Option<f64>,
    /// Maximum of `max(|u|, |w|)` over every integration step.
    pub max_amplitude: f64,
}

impl Trajectory {
    pub fn terminated_early(&self) -> bool {
        self.escape_time.is_some()
    }

    pub fn last(&self) -> &State {
        self.samples
            .last()
            .expect("trajectory always holds the initial state")
    }
}

/// Integrate from `initial` (which must sit at `t = 0`) to `p.horizon`,
/// storing every `stride`-th step.
///
/// Stops at the first step where `max(|u|, |w|) >= p.escape_radius`.
pub fn integrate(initial: &State, p: &Params, stride: usize) -> Result<Trajectory> {
    let mut samples = Vec::new();
    let (escape_time, max_amplitude) = run(initial, p, stride, |s| samples.push(*s))?;
    Ok(Trajectory {
        params: *p,
        initial: *initial,
        samples,
        stride,
        escape_time,
        max_amplitude,
    })
}

/// Final state of an integration, without storing samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoint {
    pub state: State,
    pub escape_time: Option<f64>,
    pub max_amplitude: f64,
}

/// Same stepping as [`integrate`] but keeps only the last state.
pub fn integrate_endpoint(initial: &State, p: &Params) -> Result<Endpoint> {
    let mut last = *initial;
    let stride = p.step_count();
    let (escape_time, max_amplitude) = run(initial, p, stride, |s| last = *s)?;
    Ok(Endpoint {
        state: last,
        escape_time,
        max_amplitude,
    })
}

fn run(
    initial: &State,
    p: &Params,
    stride: usize,
    mut emit: impl FnMut(&State),
) -> Result<(Option<f64>, f64)> {
    p.validate()?;
    if stride == 0 {
        return Err(Error::InvalidArgument(
            "output stride must be positive".into(),
        ));
    }
    if initial.t != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "initial state must sit at t = 0, got t = {}",
            initial.t
        )));
    }
    if !initial.is_finite() {
        return Err(Error::NonFiniteState { t: 0.0 });
    }

    emit(initial);
    let mut max_amp = initial.amplitude();
    if max_amp >= p.escape_radius {
        return Ok((Some(0.0), max_amp));
    }

    let n = p.step_count();
    let mut s = *initial;
    for k in 1..=n {
        let h = if k == n {
            p.horizon - (n - 1) as f64 * p.step
        } else {
            p.step
        };
        s = step(&s, h, p);
        // Recompute time from the step index so it does not accumulate error.
        s.t = if k == n { p.horizon } else { k as f64 * p.step };
        if !s.is_finite() {
            return Err(Error::NonFiniteState { t: s.t });
        }
        let amp = s.amplitude();
        max_amp = max_amp.max(amp);
        if amp >= p.escape_radius {
            emit(&s);
            return Ok((Some(s.t), max_amp));
        }
        if k % stride == 0 || k == n {
            emit(&s);
        }
    }
    Ok((None, max_amp))
}

/// The four lines of the `(u, w)` plane that the unit-symmetric flow
/// preserves when the initial velocity is tangent to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantLine {
    /// `w = 0`: `u_tt = u - u^3`.
    UAxis,
    /// `u = 0`: `w_tt = w - w^3`.
    WAxis,
    /// `u = w`: `u_tt = u - 2u^3`.
    Diagonal,
    /// `u = -w`: `u_tt = u`.
    AntiDiagonal,
}

impl InvariantLine {
    pub const ALL: [InvariantLine; 4] = [
        InvariantLine::UAxis,
        InvariantLine::WAxis,
        InvariantLine::Diagonal,
        InvariantLine::AntiDiagonal,
    ];

    /// Right-hand side of the reduced one-dimensional equation.
    pub fn reduced_rhs(self, x: f64) -> f64 {
        match self {
            InvariantLine::UAxis | InvariantLine::WAxis => x - x * x * x,
            InvariantLine::Diagonal => x - 2.0 * x * x * x,
            InvariantLine::AntiDiagonal => x,
        }
    }

    /// First integral of the reduced equation.
    pub fn energy(self, x: f64, xt: f64) -> f64 {
        let kinetic = 0.5 * xt * xt - 0.5 * x * x;
        match self {
            InvariantLine::UAxis | InvariantLine::WAxis => kinetic + 0.25 * x.powi(4),
            InvariantLine::Diagonal => kinetic + 0.5 * x.powi(4),
            InvariantLine::AntiDiagonal => kinetic,
        }
    }

    /// Reduced coordinate and velocity of a state lying on the line.
    pub fn project(self, s: &State) -> (f64, f64) {
        match self {
            InvariantLine::WAxis => (s.w, s.wt),
            _ => (s.u, s.ut),
        }
    }

    /// Distance of a state's position from the line, measured along the
    /// coordinate that the line pins.
    pub fn deviation(self, s: &State) -> f64 {
        match self {
            InvariantLine::UAxis => s.w.abs(),
            InvariantLine::WAxis => s.u.abs(),
            InvariantLine::Diagonal => (s.u - s.w).abs(),
            InvariantLine::AntiDiagonal => (s.u + s.w).abs(),
        }
    }

    /// Initial position on the line with reduced coordinate `x`.
    pub fn point(self, x: f64) -> (f64, f64) {
        match self {
            InvariantLine::UAxis => (x, 0.0),
            InvariantLine::WAxis => (0.0, x),
            InvariantLine::Diagonal => (x, x),
            InvariantLine::AntiDiagonal => (x, -x),
        }
    }
}

/// Reduced right-hand side on an invariant line.
pub fn reduced_rhs(line: InvariantLine, x: f64) -> f64 {
    line.reduced_rhs(x)
}

/// First integral on an invariant line.
pub fn line_energy(line: InvariantLine, x: f64, xt: f64) -> f64 {
    line.energy(x, xt)
}
