//! Bisect the upper and lower limits of the bounded region on 20 scan lines
//! and compare the potential at each limit with the 0.1 level.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example boundary_map [OUT_SVG]
//! ```

use coupled_kg::boundary::{compare_with_potential, map_boundary, scan_lines, ScanSettings};
use coupled_kg::io::svg::{Layer, PlotKind, PlotSpec};
use coupled_kg::potential::sample_grid;
use coupled_kg::Params;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::symmetric();
    let lines = scan_lines(0.7, 1.1, 20);
    let map = map_boundary(&lines, &ScanSettings::default(), &p)?;

    println!(
        "{:>8} {:>10} {:>6} {:>10} {:>10}",
        "w0", "u0", "side", "P", "width"
    );
    for b in &map.points {
        println!(
            "{:>8.5} {:>10.6} {:>6} {:>10.6} {:>10.2e}",
            b.w0,
            b.u0,
            b.side.as_str(),
            b.p_value,
            b.bisection_width
        );
    }
    for f in &map.fringe {
        println!(
            "fringe bracket on w0 = {:.5}: [{:.3}, {:.3}]",
            f.w0, f.lo, f.hi
        );
    }
    for f in &map.failures {
        println!("w0 = {:.5}: {}", f.w0, f.reason);
    }

    let cmp = compare_with_potential(&map.points, 0.1, 0.05)?;
    println!(
        "{} of {} limits away from (0, 1) lie within 0.05 of P = 0.1",
        cmp.within_band, cmp.considered
    );

    if let Some(path) = std::env::args().nth(1) {
        let grid = sample_grid((0.0, 1.3), (0.0, 1.3), 131, 131)?;
        let spec = PlotSpec::new(
            PlotKind::BoundaryOverlay,
            "limits of bounded initial values",
            (0.0, 1.3),
            (0.0, 1.3),
        )
        .layer(Layer::PotentialField { grid, level: 0.1 })
        .layer(Layer::Diagonal)
        .layer(Layer::BoundaryPoints(map.points));
        std::fs::write(&path, spec.render())?;
        println!("wrote {path}");
    }
    Ok(())
}
