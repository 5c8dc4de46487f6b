//! Integrate the four reference initial conditions and report how each one
//! ends: two stay bounded through t = 1024, two escape in opposite
//! directions.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example trajectories [OUT_DIR]
//! ```
//!
//! With `OUT_DIR`, each trajectory is also written as `t,u,w,ut,wt` CSV and
//! drawn as an orbit in the `(u, w)` plane.

use std::path::PathBuf;

use coupled_kg::io::svg::{Layer, PlotKind, PlotSpec};
use coupled_kg::io::table::trajectory_csv;
use coupled_kg::{integrate, Classification, Params, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    if let Some(dir) = &out {
        std::fs::create_dir_all(dir)?;
    }
    let p = Params::symmetric();
    println!(
        "step = {}, horizon = {}, escape radius = {}",
        p.step, p.horizon, p.escape_radius
    );
    println!(
        "{:>6} {:>6}  {:<9} {:>10} {:>4} {:>8}",
        "u0", "w0", "verdict", "escape t", "quad", "max amp"
    );

    for (u0, w0) in [
        (0.125, 0.750),
        (0.025, 0.750),
        (0.800, 0.900),
        (0.100, 0.900),
    ] {
        let tr = integrate(&State::at_rest(u0, w0), &p, p.default_stride())?;
        let c = Classification::from_trajectory(&tr);
        println!(
            "{u0:>6.3} {w0:>6.3}  {:<9} {:>10} {:>4} {:>8.4}",
            format!("{:?}", c.verdict),
            c.escape_time
                .map(|t| format!("{t:.4}"))
                .unwrap_or_else(|| "-".into()),
            c.escape_quadrant.map(|q| q.as_str()).unwrap_or("-"),
            c.max_amplitude
        );

        if let Some(dir) = &out {
            let stem = format!("orbit_{u0:.3}_{w0:.3}");
            std::fs::write(dir.join(format!("{stem}.csv")), trajectory_csv(&tr.samples))?;
            let spec = PlotSpec::new(
                PlotKind::PhasePlane,
                format!("(u0, w0) = ({u0:.3}, {w0:.3}), 0 <= t <= {}", tr.last().t),
                (-1.5, 1.5),
                (-1.5, 1.5),
            )
            .layer(Layer::InvariantLines)
            .layer(Layer::Orbit {
                points: tr.samples.iter().map(|s| (s.u, s.w)).collect(),
                color: "#333333".into(),
            });
            std::fs::write(dir.join(format!("{stem}.svg")), spec.render())?;
        }
    }
    Ok(())
}
