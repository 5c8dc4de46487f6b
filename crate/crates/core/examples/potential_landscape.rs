//! The potential P(u, w): closed form against quadrature, the two basins
//! and a contour plot clipped to 0 < P < 0.1.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example potential_landscape [OUT_SVG]
//! ```

use coupled_kg::io::svg::{Layer, PlotKind, PlotSpec};
use coupled_kg::potential::{evaluate_p, evaluate_p_quadrature, locate_minima, sample_grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (u, w) in [(0.8, 0.9), (0.1, 0.9), (0.3, 0.6), (-0.4, 1.2)] {
        let closed = evaluate_p(u, w);
        let quad = evaluate_p_quadrature(u, w);
        println!(
            "P({u:5.2}, {w:5.2}) = {closed:.12}  quadrature diff {:.1e}",
            (closed - quad).abs()
        );
    }

    let grid = sample_grid((-1.5, 1.5), (-1.5, 1.5), 301, 301)?;
    for m in locate_minima(&grid) {
        println!("local minimum at ({:.8}, {:.8}), P = {:.2e}", m.u, m.w, m.p);
    }
    println!(
        "along u = w: P(1) = {:.4}, P(2) = {:.4}",
        evaluate_p(1.0, 1.0),
        evaluate_p(2.0, 2.0)
    );
    println!(
        "along u = -w: P(1) = {:.4}, P(2) = {:.4}",
        evaluate_p(1.0, -1.0),
        evaluate_p(2.0, -2.0)
    );

    if let Some(path) = std::env::args().nth(1) {
        let spec = PlotSpec::new(
            PlotKind::Contour,
            "P(u, w), 0 < P < 0.1",
            (-1.5, 1.5),
            (-1.5, 1.5),
        )
        .layer(Layer::PotentialField { grid, level: 0.1 });
        std::fs::write(&path, spec.render())?;
        println!("wrote {path}");
    }
    Ok(())
}
