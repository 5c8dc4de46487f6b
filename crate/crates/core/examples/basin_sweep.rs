//! Classify a lattice of initial conditions in the wedge 0 < u0 < w0 and
//! check how well 0 < P(u0, w0) < 0.1 predicts boundedness.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example basin_sweep [N] [OUT_SVG]
//! ```
//!
//! `N` is the lattice size per axis over [0, 1.2] (default 41).

use coupled_kg::boundary::in_discrepancy_region;
use coupled_kg::classify::sweep;
use coupled_kg::io::svg::{Layer, PlotKind, PlotSpec};
use coupled_kg::potential::evaluate_p;
use coupled_kg::{Params, Verdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(41);
    let svg = args.next();

    let p = Params::symmetric();
    let result = sweep((0.0, 1.2), (0.0, 1.2), n, n, &p)?;

    let (mut bounded, mut bounded_below, mut in_band, mut in_band_bounded) = (0, 0, 0, 0);
    for (u0, w0, cell) in result.iter() {
        if !(u0 > 0.0 && u0 < w0) || in_discrepancy_region(u0, w0) {
            continue;
        }
        let pv = evaluate_p(u0, w0);
        let is_bounded = cell.verdict() == Some(Verdict::Bounded);
        if is_bounded {
            bounded += 1;
            bounded_below += usize::from(pv < 0.15);
        }
        if pv > 0.005 && pv < 0.08 {
            in_band += 1;
            in_band_bounded += usize::from(is_bounded);
        }
    }
    println!("{n} x {n} lattice on [0, 1.2]^2, wedge cells only, (0, 1) neighbourhood excluded");
    println!("bounded cells with P < 0.15: {bounded_below}/{bounded}");
    println!("cells with 0.005 < P < 0.08 that are bounded: {in_band_bounded}/{in_band}");

    if let Some(path) = svg {
        let spec = PlotSpec::new(
            PlotKind::PhasePlane,
            "bounded (blue) / divergent (sand)",
            (0.0, 1.2),
            (0.0, 1.2),
        )
        .layer(Layer::VerdictMap(result))
        .layer(Layer::Diagonal);
        std::fs::write(&path, spec.render())?;
        println!("wrote {path}");
    }
    Ok(())
}
