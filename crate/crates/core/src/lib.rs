//! Numerical laboratory for the coupled cubic Klein-Gordon ODE system
//!
//! ```text
//! u_tt = m1 u - k1 u^3 - kp1 u^2 w
//! w_tt = m2 w - k2 w^3 - kp2 u w^2
//! ```
//!
//! started at rest from `(u0, w0)`.
//!
//! - [`dynamics`]: vector field, invariant-line reductions, RK4 / velocity
//!   Verlet integration.
//! - [`stationary`]: fixed-point curves and all equilibria by Newton.
//! - [`potential`]: the potential `P(u, w)` in closed form and by quadrature,
//!   grids and minima.
//! - [`classify`]: bounded / divergent verdicts and parallel sweeps.
//! - [`boundary`]: bisected limits of the bounded region and their
//!   comparison with the `P = 0.1` level.
//! - [`io`]: run configs, CSV/JSON output, SVG figures, subcommand drivers.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod boundary;
pub mod classify;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod potential;
pub mod stationary;

pub use classify::{classify_one, Classification, Quadrant, Verdict};
pub use dynamics::{integrate, InvariantLine, Params, Scheme, State, Trajectory};
pub use error::{Error, Result};
