//! CSV emission and parsing.
//!
//! Floats are written with `{:?}`, the shortest representation that parses
//! back to the same bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::boundary::BoundaryPoint;
use crate::classify::{Cell, Classification, SweepResult, Verdict};
use crate::dynamics::State;
use crate::error::{Error, Result};
use crate::potential::PotentialGrid;
use crate::stationary::{Equilibrium, EquilibriumKind};

pub const TRAJECTORY_HEADER: &str = "t,u,w,ut,wt";
pub const BOUNDARY_HEADER: &str = "w0,u0,side,P_value,bracket_width";
pub const EQUILIBRIA_HEADER: &str = "u,w,kind";
pub const CLASSIFICATION_HEADER: &str = "u0,w0,verdict,escape_time,escape_quadrant,max_amplitude";

fn num(out: &mut String, x: f64) {
    write!(out, "{x:?}").expect("writing to a String cannot fail");
}

pub fn trajectory_csv(samples: &[State]) -> String {
    let mut out = String::with_capacity(samples.len() * 96);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for s in samples {
        for (k, x) in [s.t, s.u, s.w, s.ut, s.wt].into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            num(&mut out, x);
        }
        out.push('\n');
    }
    out
}

pub fn parse_trajectory_csv(text: &str, path: &Path) -> Result<Vec<State>> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRAJECTORY_HEADER => {}
        Some((_, h)) => return Err(err(1, format!("unexpected header {h:?}"))),
        None => return Err(err(1, "empty file".into())),
    }
    let mut samples = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| err(idx + 1, e.to_string()))?;
        let [t, u, w, ut, wt] = fields[..] else {
            return Err(err(
                idx + 1,
                format!("expected 5 fields, got {}", fields.len()),
            ));
        };
        samples.push(State::new(t, u, w, ut, wt));
    }
    Ok(samples)
}

pub fn read_trajectory_csv(path: &Path) -> Result<Vec<State>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trajectory_csv(&text, path)
}

fn kind_name(kind: EquilibriumKind) -> &'static str {
    match kind {
        EquilibriumKind::TrivialOrigin => "trivial_origin",
        EquilibriumKind::Axis => "axis",
        EquilibriumKind::CoupledNontrivial => "coupled_nontrivial",
    }
}

pub fn equilibria_csv(eqs: &[Equilibrium]) -> String {
    let mut out = format!("{EQUILIBRIA_HEADER}\n");
    for e in eqs {
        num(&mut out, e.u);
        out.push(',');
        num(&mut out, e.w);
        writeln!(out, ",{}", kind_name(e.kind)).unwrap();
    }
    out
}

/// Matrix layout: header `w\u,u_0,...,u_n`, then one row per `w_j`
/// starting with `w_j`.
pub fn potential_csv(grid: &PotentialGrid) -> String {
    let mut out = String::from("w\\u");
    for i in 0..grid.n_u {
        out.push(',');
        num(&mut out, grid.u_at(i));
    }
    out.push('\n');
    for j in 0..grid.n_w {
        num(&mut out, grid.w_at(j));
        for i in 0..grid.n_u {
            out.push(',');
            num(&mut out, grid.get(i, j));
        }
        out.push('\n');
    }
    out
}

fn cell_code(cell: &Cell) -> char {
    match cell.verdict() {
        Some(Verdict::Bounded) => 'B',
        Some(Verdict::Divergent) => 'D',
        None => 'F',
    }
}

/// Verdict matrix in the potential-grid layout; cells are `B` (bounded),
/// `D` (divergent) or `F` (numerical fault).
pub fn sweep_csv(s: &SweepResult) -> String {
    let mut out = String::from("w0\\u0");
    for i in 0..s.n_u {
        out.push(',');
        num(&mut out, s.u0_at(i));
    }
    out.push('\n');
    for j in 0..s.n_w {
        num(&mut out, s.w0_at(j));
        for i in 0..s.n_u {
            out.push(',');
            out.push(cell_code(s.get(i, j)));
        }
        out.push('\n');
    }
    out
}

pub fn boundary_csv(points: &[BoundaryPoint]) -> String {
    let mut out = format!("{BOUNDARY_HEADER}\n");
    for b in points {
        num(&mut out, b.w0);
        out.push(',');
        num(&mut out, b.u0);
        write!(out, ",{},", b.side.as_str()).unwrap();
        num(&mut out, b.p_value);
        out.push(',');
        num(&mut out, b.bisection_width);
        out.push('\n');
    }
    out
}

pub fn classification_csv(u0: f64, w0: f64, c: &Classification) -> String {
    let mut out = format!("{CLASSIFICATION_HEADER}\n");
    num(&mut out, u0);
    out.push(',');
    num(&mut out, w0);
    let verdict = match c.verdict {
        Verdict::Bounded => "Bounded",
        Verdict::Divergent => "Divergent",
    };
    write!(out, ",{verdict},").unwrap();
    if let Some(t) = c.escape_time {
        num(&mut out, t);
    }
    out.push(',');
    if let Some(q) = c.escape_quadrant {
        out.push_str(q.as_str());
    }
    out.push(',');
    num(&mut out, c.max_amplitude);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn trajectory_round_trip_is_bit_exact(
            rows in proptest::collection::vec(proptest::array::uniform5(any::<f64>().prop_filter("finite", |x| x.is_finite())), 0..20)
        ) {
            let samples: Vec<State> = rows
                .iter()
                .map(|r| State::new(r[0], r[1], r[2], r[3], r[4]))
                .collect();
            let text = trajectory_csv(&samples);
            let back = parse_trajectory_csv(&text, Path::new("mem")).unwrap();
            prop_assert_eq!(back.len(), samples.len());
            for (a, b) in samples.iter().zip(&back) {
                prop_assert_eq!(a.t.to_bits(), b.t.to_bits());
                prop_assert_eq!(a.u.to_bits(), b.u.to_bits());
                prop_assert_eq!(a.w.to_bits(), b.w.to_bits());
                prop_assert_eq!(a.ut.to_bits(), b.ut.to_bits());
                prop_assert_eq!(a.wt.to_bits(), b.wt.to_bits());
            }
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        let p = Path::new("x.csv");
        assert!(parse_trajectory_csv("", p).is_err());
        assert!(parse_trajectory_csv("a,b\n", p).is_err());
        let e = parse_trajectory_csv("t,u,w,ut,wt\n0,1,2\n", p).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn headers_are_exact() {
        assert!(boundary_csv(&[]).starts_with("w0,u0,side,P_value,bracket_width\n"));
        assert!(trajectory_csv(&[]).starts_with("t,u,w,ut,wt\n"));
    }
}
