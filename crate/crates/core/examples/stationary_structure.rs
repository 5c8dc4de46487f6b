//! Equilibria of the coupled system and the fixed-point curves whose
//! crossings produce the two coupled ones.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example stationary_structure [OUT_SVG]
//! ```

use coupled_kg::io::svg::{Layer, PlotKind, PlotSpec};
use coupled_kg::stationary::{f_g, stationary_points, SearchBox};
use coupled_kg::Params;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = stationary_points(&Params::symmetric(), SearchBox::default(), 32)?;
    println!("{:>12} {:>12}  kind", "u", "w");
    for e in &report.equilibria {
        let (f, g) = f_g(e.u, e.w);
        println!(
            "{:>12.9} {:>12.9}  {:?}  (|f|, |g|) = ({:.1e}, {:.1e})",
            e.u,
            e.w,
            e.kind,
            f.abs(),
            g.abs()
        );
    }
    println!(
        "{} singular Newton seeds skipped",
        report.singular_seeds.len()
    );

    if let Some(path) = std::env::args().nth(1) {
        let spec = PlotSpec::new(
            PlotKind::PhasePlane,
            "fixed-point curves",
            (-2.0, 2.0),
            (-2.0, 2.0),
        )
        .layer(Layer::FixedPointCurves)
        .layer(Layer::Equilibria(report.equilibria));
        std::fs::write(&path, spec.render())?;
        println!("wrote {path}");
    }
    Ok(())
}
