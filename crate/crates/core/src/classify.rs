//! Bounded / divergent verdicts for initial conditions at rest.
//!
//! A run is divergent when `max(|u|, |w|)` reaches the escape radius before
//! the horizon and bounded otherwise. The verdict is a finite-time,
//! finite-radius statement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{integrate_endpoint, Params, State, Trajectory};
use crate::error::{Error, Result};
use crate::potential::lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Bounded,
    Divergent,
}

/// Sign pair of `(u, w)` at escape; `P` for `>= 0`, `M` for `< 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    PP,
    PM,
    MP,
    MM,
}

impl Quadrant {
    pub fn of(u: f64, w: f64) -> Self {
        match (u >= 0.0, w >= 0.0) {
            (true, true) => Quadrant::PP,
            (true, false) => Quadrant::PM,
            (false, true) => Quadrant::MP,
            (false, false) => Quadrant::MM,
        }
    }

    pub fn exchanged(self) -> Self {
        match self {
            Quadrant::PM => Quadrant::MP,
            Quadrant::MP => Quadrant::PM,
            q => q,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Quadrant::PP => Quadrant::MM,
            Quadrant::MM => Quadrant::PP,
            Quadrant::PM => Quadrant::MP,
            Quadrant::MP => Quadrant::PM,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Quadrant::PP => "PP",
            Quadrant::PM => "PM",
            Quadrant::MP => "MP",
            Quadrant::MM => "MM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub escape_time: Option<f64>,
    pub escape_quadrant: Option<Quadrant>,
    pub max_amplitude: f64,
}

impl Classification {
    pub fn is_bounded(&self) -> bool {
        self.verdict == Verdict::Bounded
    }
}

impl Classification {
    /// Verdict of a finished run: `last` is the terminating state.
    pub fn from_run(escape_time: Option<f64>, last: &State, max_amplitude: f64) -> Self {
        match escape_time {
            Some(t) => Classification {
                verdict: Verdict::Divergent,
                escape_time: Some(t),
                escape_quadrant: Some(Quadrant::of(last.u, last.w)),
                max_amplitude,
            },
            None => Classification {
                verdict: Verdict::Bounded,
                escape_time: None,
                escape_quadrant: None,
                max_amplitude,
            },
        }
    }

    pub fn from_trajectory(tr: &Trajectory) -> Self {
        Self::from_run(tr.escape_time, tr.last(), tr.max_amplitude)
    }
}

/// Classify the initial condition `(u0, w0)` with zero velocities.
pub fn classify_one(u0: f64, w0: f64, p: &Params) -> Result<Classification> {
    let end = integrate_endpoint(&State::at_rest(u0, w0), p)?;
    Ok(Classification::from_run(
        end.escape_time,
        &end.state,
        end.max_amplitude,
    ))
}

/// Outcome of one sweep cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Cell {
    Classified(Classification),
    /// Integration hit a non-finite state at time `t`.
    Fault {
        t: f64,
    },
}

impl Cell {
    pub fn verdict(&self) -> Option<Verdict> {
        match self {
            Cell::Classified(c) => Some(c.verdict),
            Cell::Fault { .. } => None,
        }
    }

    pub fn classification(&self) -> Option<&Classification> {
        match self {
            Cell::Classified(c) => Some(c),
            Cell::Fault { .. } => None,
        }
    }
}

fn classify_cell(u0: f64, w0: f64, p: &Params) -> Result<Cell> {
    match classify_one(u0, w0, p) {
        Ok(c) => Ok(Cell::Classified(c)),
        Err(Error::NonFiniteState { t }) => Ok(Cell::Fault { t }),
        Err(e) => Err(e),
    }
}

/// Classify a list of initial positions in parallel. Output order matches
/// input order.
pub fn classify_many(points: &[(f64, f64)], p: &Params) -> Result<Vec<Cell>> {
    p.validate()?;
    points
        .par_iter()
        .map(|&(u0, w0)| classify_cell(u0, w0, p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub params: Params,
    pub u0_range: (f64, f64),
    pub w0_range: (f64, f64),
    pub n_u: usize,
    pub n_w: usize,
    /// Row-major with `u0` fastest.
    pub cells: Vec<Cell>,
}

impl SweepResult {
    pub fn u0_at(&self, i: usize) -> f64 {
        lattice(self.u0_range, self.n_u, i)
    }

    pub fn w0_at(&self, j: usize) -> f64 {
        lattice(self.w0_range, self.n_w, j)
    }

    pub fn get(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.n_u + i]
    }

    /// `(u0, w0, cell)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &Cell)> {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, c)| (self.u0_at(k % self.n_u), self.w0_at(k / self.n_u), c))
    }
}

/// Classify every point of an `n_u x n_w` lattice (endpoints included).
pub fn sweep(
    u0_range: (f64, f64),
    w0_range: (f64, f64),
    n_u: usize,
    n_w: usize,
    p: &Params,
) -> Result<SweepResult> {
    if n_u == 0 || n_w == 0 {
        return Err(Error::InvalidArgument("sweep needs n_u, n_w >= 1".into()));
    }
    let points: Vec<(f64, f64)> = (0..n_u * n_w)
        .map(|k| {
            (
                lattice(u0_range, n_u, k % n_u),
                lattice(w0_range, n_w, k / n_u),
            )
        })
        .collect();
    let cells = classify_many(&points, p)?;
    Ok(SweepResult {
        params: *p,
        u0_range,
        w0_range,
        n_u,
        n_w,
        cells,
    })
}
