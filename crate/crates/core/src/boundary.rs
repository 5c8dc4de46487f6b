//! Bisection of the bounded-region limits along fixed-`w0` scan lines in the
//! wedge `w0 > u0 > 0`, and comparison of those limits with the `P = 0.1`
//! level of the potential.
//!
//! On a scan line the bounded set nearest the diagonal is bracketed by a
//! coarse downward scan in `u0` and then bisected. Its top edge is the
//! *upper* limit (bounded below it, divergent above) and its bottom edge the
//! *lower* limit (bounded above it, divergent below). When the scan point
//! next to the diagonal is already bounded the region reaches the diagonal
//! and there is no upper limit on that line.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_one, Verdict};
use crate::dynamics::Params;
use crate::error::{Error, Result};
use crate::potential::evaluate_p;

pub const DEFAULT_TOL: f64 = 1e-3;
pub const DEFAULT_SCAN_STEP: f64 = 0.05;
pub const DEFAULT_LEVEL: f64 = 0.1;
pub const DEFAULT_BAND: f64 = 0.05;
/// Centre and radius of the region where the potential level is known to
/// disagree with the computed limits.
pub const DISCREPANCY_CENTRE: (f64, f64) = (0.0, 1.0);
pub const DISCREPANCY_RADIUS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }

    /// Verdicts expected at the `(lo, hi)` ends of a bracket.
    pub fn expected(self) -> (Verdict, Verdict) {
        match self {
            Side::Lower => (Verdict::Divergent, Verdict::Bounded),
            Side::Upper => (Verdict::Bounded, Verdict::Divergent),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub w0: f64,
    /// Midpoint of the final bracket.
    pub u0: f64,
    pub side: Side,
    pub p_value: f64,
    pub bisection_width: f64,
    /// Final bracket; `lo` and `hi` carry the verdicts of `side.expected()`.
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

fn verdict(u0: f64, w0: f64, p: &Params) -> Result<Verdict> {
    Ok(classify_one(u0, w0, p)?.verdict)
}

/// Bisect the verdict change on `[bracket.0, bracket.1]` along the line
/// `w = w0` until the bracket is no wider than `tol`.
pub fn bisect_limit(
    w0: f64,
    bracket: (f64, f64),
    side: Side,
    tol: f64,
    p: &Params,
) -> Result<BoundaryPoint> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be > 0, got {tol}"
        )));
    }
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    let lo_verdict = verdict(lo, w0, p)?;
    let hi_verdict = verdict(hi, w0, p)?;
    if lo_verdict == hi_verdict {
        return Err(Error::BracketInvalid {
            w0,
            lo,
            hi,
            lo_verdict,
            hi_verdict,
        });
    }
    if (lo_verdict, hi_verdict) != side.expected() {
        return Err(Error::InvalidArgument(format!(
            "bracket [{lo}, {hi}] on w0 = {w0} is oriented for the other side than {}",
            side.as_str()
        )));
    }
    bisect_known(w0, &mut lo, &mut hi, lo_verdict, side, tol, p)
}

fn bisect_known(
    w0: f64,
    lo: &mut f64,
    hi: &mut f64,
    lo_verdict: Verdict,
    side: Side,
    tol: f64,
    p: &Params,
) -> Result<BoundaryPoint> {
    let mut iterations = 0;
    while *hi - *lo > tol {
        let mid = 0.5 * (*lo + *hi);
        if verdict(mid, w0, p)? == lo_verdict {
            *lo = mid;
        } else {
            *hi = mid;
        }
        iterations += 1;
    }
    let u0 = 0.5 * (*lo + *hi);
    Ok(BoundaryPoint {
        w0,
        u0,
        side,
        p_value: evaluate_p(u0, w0),
        bisection_width: *hi - *lo,
        lo: *lo,
        hi: *hi,
        iterations,
    })
}

/// A verdict change seen by the coarse scan but outside the band nearest the
/// diagonal. Reported unbisected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeBracket {
    pub w0: f64,
    pub lo: f64,
    pub hi: f64,
    pub lo_verdict: Verdict,
    pub hi_verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFailure {
    pub w0: f64,
    /// `None` when the whole scan line is divergent or empty.
    pub side: Option<Side>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BoundaryMap {
    pub points: Vec<BoundaryPoint>,
    pub fringe: Vec<FringeBracket>,
    pub failures: Vec<ScanFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSettings {
    pub tol: f64,
    /// Spacing of the coarse bracketing scan in `u0`.
    pub step: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            step: DEFAULT_SCAN_STEP,
        }
    }
}

/// `n` evenly spaced scan lines on `[lo, hi]`.
pub fn scan_lines(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Default)]
struct LineResult {
    points: Vec<BoundaryPoint>,
    fringe: Vec<FringeBracket>,
    failures: Vec<ScanFailure>,
}

fn map_line(w0: f64, settings: &ScanSettings, p: &Params) -> Result<LineResult> {
    let mut out = LineResult::default();
    let fail = |side, reason: &str| ScanFailure {
        w0,
        side,
        reason: reason.to_string(),
    };

    let scan: Vec<f64> = (1..)
        .map(|k| w0 - k as f64 * settings.step)
        .take_while(|&u0| u0 > 0.0)
        .collect();
    let verdicts = scan
        .iter()
        .map(|&u0| verdict(u0, w0, p))
        .collect::<Result<Vec<_>>>()?;

    let Some(first_bounded) = verdicts.iter().position(|&v| v == Verdict::Bounded) else {
        out.failures
            .push(fail(None, "no bounded scan point in the wedge"));
        return Ok(out);
    };
    if first_bounded > 0 {
        let (mut lo, mut hi) = (scan[first_bounded], scan[first_bounded - 1]);
        out.points.push(bisect_known(
            w0,
            &mut lo,
            &mut hi,
            Verdict::Bounded,
            Side::Upper,
            settings.tol,
            p,
        )?);
    }
    let Some(offset) = verdicts[first_bounded..]
        .iter()
        .position(|&v| v == Verdict::Divergent)
    else {
        out.failures.push(fail(
            Some(Side::Lower),
            "bounded down to the smallest scan point",
        ));
        return Ok(out);
    };
    let first_divergent = first_bounded + offset;
    let (mut lo, mut hi) = (scan[first_divergent], scan[first_divergent - 1]);
    out.points.push(bisect_known(
        w0,
        &mut lo,
        &mut hi,
        Verdict::Divergent,
        Side::Lower,
        settings.tol,
        p,
    )?);

    for k in first_divergent + 1..scan.len() {
        if verdicts[k] != verdicts[k - 1] {
            out.fringe.push(FringeBracket {
                w0,
                lo: scan[k],
                hi: scan[k - 1],
                lo_verdict: verdicts[k],
                hi_verdict: verdicts[k - 1],
            });
        }
    }
    Ok(out)
}

/// Bisected limits of the bounded band nearest the diagonal on every scan
/// line. Lines run in parallel; output is ordered by input line.
pub fn map_boundary(w0_list: &[f64], settings: &ScanSettings, p: &Params) -> Result<BoundaryMap> {
    p.validate()?;
    if !(settings.tol > 0.0 && settings.step > 0.0) {
        return Err(Error::InvalidArgument(
            "scan step and tolerance must be positive".into(),
        ));
    }
    let lines = w0_list
        .par_iter()
        .map(|&w0| map_line(w0, settings, p))
        .collect::<Result<Vec<_>>>()?;
    let mut map = BoundaryMap::default();
    for line in lines {
        map.points.extend(line.points);
        map.fringe.extend(line.fringe);
        map.failures.extend(line.failures);
    }
    Ok(map)
}

/// Check that the verdict flips across `point` at distance `2 * tol`.
pub fn is_locally_sharp(point: &BoundaryPoint, tol: f64, p: &Params) -> Result<bool> {
    let (want_lo, want_hi) = point.side.expected();
    Ok(verdict(point.u0 - 2.0 * tol, point.w0, p)? == want_lo
        && verdict(point.u0 + 2.0 * tol, point.w0, p)? == want_hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub w0: f64,
    pub u0: f64,
    pub side: Side,
    pub p_value: f64,
    /// `p_value - level`.
    pub deviation: f64,
    /// Inside the region around `(0, 1)` where disagreement is expected.
    pub known_discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialComparison {
    pub level: f64,
    pub band: f64,
    pub rows: Vec<ComparisonRow>,
    /// Rows outside the known-discrepancy region.
    pub considered: usize,
    pub within_band: usize,
    pub fraction_within_band: f64,
    /// Indices into `rows` of considered points outside the band.
    pub outliers: Vec<usize>,
}

pub fn in_discrepancy_region(u0: f64, w0: f64) -> bool {
    (u0 - DISCREPANCY_CENTRE.0).hypot(w0 - DISCREPANCY_CENTRE.1) < DISCREPANCY_RADIUS
}

/// How far each limit's potential is from `level`.
pub fn compare_with_potential(
    points: &[BoundaryPoint],
    level: f64,
    band: f64,
) -> Result<PotentialComparison> {
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "no boundary points to compare".into(),
        ));
    }
    let rows: Vec<ComparisonRow> = points
        .iter()
        .map(|b| ComparisonRow {
            w0: b.w0,
            u0: b.u0,
            side: b.side,
            p_value: b.p_value,
            deviation: b.p_value - level,
            known_discrepancy: in_discrepancy_region(b.u0, b.w0),
        })
        .collect();
    let mut considered = 0;
    let mut within_band = 0;
    let mut outliers = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        if r.known_discrepancy {
            continue;
        }
        considered += 1;
        if r.deviation.abs() <= band {
            within_band += 1;
        } else {
            outliers.push(k);
        }
    }
    let fraction_within_band = if considered == 0 {
        0.0
    } else {
        within_band as f64 / considered as f64
    };
    Ok(PotentialComparison {
        level,
        band,
        rows,
        considered,
        within_band,
        fraction_within_band,
        outliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(u0: f64, w0: f64, p_value: f64) -> BoundaryPoint {
        BoundaryPoint {
            w0,
            u0,
            side: Side::Lower,
            p_value,
            bisection_width: 1e-3,
            lo: u0 - 5e-4,
            hi: u0 + 5e-4,
            iterations: 0,
        }
    }

    #[test]
    fn comparison_deviation_and_flags() {
        let pts = [
            point(0.3, 0.8, 0.1),
            point(0.05, 0.98, 0.3),
            point(0.6, 0.95, 0.2),
        ];
        let c = compare_with_potential(&pts, 0.1, 0.05).unwrap();
        assert_eq!(c.rows[0].deviation, 0.0);
        assert!(!c.rows[0].known_discrepancy);
        assert!(c.rows[1].known_discrepancy);
        assert_eq!(c.considered, 2);
        assert_eq!(c.within_band, 1);
        assert_eq!(c.outliers, vec![2]);
        assert_eq!(c.fraction_within_band, 0.5);
    }

    #[test]
    fn comparison_rejects_empty() {
        assert!(compare_with_potential(&[], 0.1, 0.05).is_err());
    }

    #[test]
    fn scan_line_spacing() {
        assert_eq!(scan_lines(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(scan_lines(0.7, 1.1, 1), vec![0.7]);
        assert!(scan_lines(0.7, 1.1, 0).is_empty());
        assert_eq!(scan_lines(0.7, 1.1, 20).len(), 20);
    }

    #[test]
    fn bisection_rejects_bad_tolerance() {
        let p = Params::symmetric();
        assert!(matches!(
            bisect_limit(0.75, (0.125, 0.5), Side::Lower, 0.0, &p),
            Err(Error::InvalidArgument(_))
        ));
    }
}
