//! Validate the fixed-step integrator against what is known exactly:
//! closed-form growth on the anti-diagonal, conserved energies on the other
//! invariant lines, fourth-order step-halving convergence and a
//! velocity-Verlet cross-check.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example integrator_checks
//! ```

use coupled_kg::dynamics::{integrate, integrate_endpoint, InvariantLine, Params, Scheme, State};

fn max_error(a: &[State], b: &[State]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            (x.u - y.u)
                .abs()
                .max((x.w - y.w).abs())
                .max((x.ut - y.ut).abs())
                .max((x.wt - y.wt).abs())
        })
        .fold(0.0, f64::max)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::symmetric();

    // u = -w: u_tt = u, so u(t) = u0 cosh t until escape.
    let tr = integrate(&State::at_rest(0.5, -0.5), &p, 1)?;
    let worst = tr
        .samples
        .iter()
        .map(|s| (s.u - 0.5 * s.t.cosh()).abs() / (0.5 * s.t.cosh()))
        .fold(0.0, f64::max);
    println!(
        "anti-diagonal: escape at t = {:.5} (exact acosh(20) = {:.5}), max rel. error vs cosh = {worst:.2e}",
        tr.escape_time.unwrap_or(f64::NAN),
        20f64.acosh()
    );

    for line in [
        InvariantLine::UAxis,
        InvariantLine::WAxis,
        InvariantLine::Diagonal,
    ] {
        let (u0, w0) = line.point(0.5);
        let tr = integrate(&State::at_rest(u0, w0), &p, 64)?;
        let e0 = {
            let (x, xt) = line.project(&tr.samples[0]);
            line.energy(x, xt)
        };
        let (drift, off_line) = tr.samples.iter().fold((0.0f64, 0.0f64), |(d, o), s| {
            let (x, xt) = line.project(s);
            (
                d.max((line.energy(x, xt) - e0).abs()),
                o.max(line.deviation(s)),
            )
        });
        println!(
            "{line:?}: energy {e0:.6}, max drift {drift:.2e} over t <= {}, max distance from line {off_line:.1e}",
            p.horizon
        );
    }

    let base = p.with_horizon(32.0);
    let h = 1.0 / 16.0;
    let coarse = integrate(&State::at_rest(0.8, 0.9), &base.with_step(h), 1)?;
    let fine = integrate(&State::at_rest(0.8, 0.9), &base.with_step(h / 2.0), 2)?;
    let reference = integrate(&State::at_rest(0.8, 0.9), &base.with_step(h / 4.0), 4)?;
    let (e1, e2) = (
        max_error(&coarse.samples, &reference.samples),
        max_error(&fine.samples, &reference.samples),
    );
    println!(
        "step halving: error {e1:.3e} -> {e2:.3e}, factor {:.2}",
        e1 / e2
    );

    let short = p.with_horizon(10.0).with_step(1.0 / 1024.0);
    let rk = integrate_endpoint(&State::at_rest(0.8, 0.9), &short)?;
    let vv = integrate_endpoint(
        &State::at_rest(0.8, 0.9),
        &short.with_scheme(Scheme::VelocityVerlet),
    )?;
    println!(
        "RK4 vs velocity Verlet at t = 10: |du| = {:.2e}, |dw| = {:.2e}",
        (rk.state.u - vv.state.u).abs(),
        (rk.state.w - vv.state.w).abs()
    );
    Ok(())
}
