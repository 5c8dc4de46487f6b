use coupled_kg::dynamics::{integrate, InvariantLine, Params, Scheme, State, Trajectory};
use proptest::prelude::*;

fn sym() -> Params {
    Params::symmetric()
}

fn run(u0: f64, w0: f64, p: &Params, stride: usize) -> Trajectory {
    integrate(&State::at_rest(u0, w0), p, stride).unwrap()
}

fn max_component_error(a: &[State], b: &[State]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            assert!((x.t - y.t).abs() < 1e-12);
            (x.u - y.u)
                .abs()
                .max((x.w - y.w).abs())
                .max((x.ut - y.ut).abs())
                .max((x.wt - y.wt).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn anti_diagonal_follows_cosh_until_escape() {
    let tr = run(0.5, -0.5, &sym(), 1);
    assert!(tr.terminated_early());
    for s in &tr.samples {
        let exact = 0.5 * s.t.cosh();
        assert!((s.u - exact).abs() <= 1e-6 * exact, "t = {}", s.t);
        assert!((s.u + s.w).abs() < 1e-9);
    }
}

#[test]
fn bounded_case_runs_to_horizon() {
    let tr = run(0.8, 0.9, &sym(), 256);
    assert!(!tr.terminated_early());
    assert_eq!(tr.last().t, 1024.0);
}

#[test]
fn divergent_case_leaves_through_mixed_sign_quadrant() {
    let tr = run(0.125, 0.75, &sym(), 256);
    assert!(tr.terminated_early());
    let last = tr.last();
    assert!(last.u * last.w < 0.0);
}

#[test]
fn invariant_lines_are_preserved() {
    let p = sym();
    for line in InvariantLine::ALL {
        for &x in &[0.3, 0.5, 0.9] {
            let (u0, w0) = line.point(x);
            let tr = run(u0, w0, &p, 64);
            for s in &tr.samples {
                assert!(line.deviation(s) < 1e-9, "{line:?} x0 = {x} t = {}", s.t);
            }
        }
    }
}

#[test]
fn reduced_energy_drift_over_full_horizon() {
    let p = sym();
    for line in [
        InvariantLine::UAxis,
        InvariantLine::WAxis,
        InvariantLine::Diagonal,
    ] {
        for &x in &[0.5, 0.9, 1.2] {
            let (u0, w0) = line.point(x);
            let tr = run(u0, w0, &p, 16);
            assert!(!tr.terminated_early(), "{line:?} from {x} escaped");
            let (x0, xt0) = line.project(&tr.samples[0]);
            let e0 = line.energy(x0, xt0);
            for s in &tr.samples {
                let (x, xt) = line.project(s);
                let drift = (line.energy(x, xt) - e0).abs();
                assert!(drift <= 1e-6 * e0.abs().max(1.0), "{line:?} drift {drift}");
            }
        }
    }
}

#[test]
fn anti_diagonal_energy_is_conserved_until_escape() {
    let tr = run(0.5, -0.5, &sym(), 1);
    let line = InvariantLine::AntiDiagonal;
    let e0 = line.energy(0.5, 0.0);
    for s in &tr.samples {
        let (x, xt) = line.project(s);
        assert!((line.energy(x, xt) - e0).abs() <= 1e-6 * e0.abs().max(1.0));
    }
}

#[test]
fn rk4_step_halving_shows_fourth_order() {
    let base = sym().with_horizon(32.0);
    let h = 1.0 / 16.0;
    let coarse = run(0.8, 0.9, &base.with_step(h), 1);
    let fine = run(0.8, 0.9, &base.with_step(h / 2.0), 2);
    let reference = run(0.8, 0.9, &base.with_step(h / 4.0), 4);
    let e1 = max_component_error(&coarse.samples, &reference.samples);
    let e2 = max_component_error(&fine.samples, &reference.samples);
    assert!(e1 / e2 >= 12.0, "factor {}", e1 / e2);
}

#[test]
fn verlet_step_halving_shows_second_order() {
    let base = sym().with_horizon(8.0).with_scheme(Scheme::VelocityVerlet);
    let h = 1.0 / 32.0;
    let coarse = run(0.8, 0.9, &base.with_step(h), 1);
    let fine = run(0.8, 0.9, &base.with_step(h / 2.0), 2);
    let reference = run(0.8, 0.9, &base.with_step(h / 4.0), 4);
    let ratio = max_component_error(&coarse.samples, &reference.samples)
        / max_component_error(&fine.samples, &reference.samples);
    // 2^2 * (1 - 1/16) / (1 - 1/4) = 5 for an exact second-order scheme.
    assert!(ratio > 3.5 && ratio < 6.5, "ratio {ratio}");
}

#[test]
fn integration_is_bit_reproducible() {
    let a = run(0.3, 0.85, &sym(), 32);
    let b = run(0.3, 0.85, &sym(), 32);
    assert_eq!(a, b);
}

#[test]
fn time_reversal_returns_to_start() {
    let p = sym().with_horizon(16.0);
    for &(u0, w0) in &[(0.8, 0.9), (0.1, 0.9), (-0.6, -0.75), (0.3, 0.7)] {
        let fwd = run(u0, w0, &p, 4096);
        assert!(!fwd.terminated_early());
        let mid = fwd.last();
        let back_start = State::new(0.0, mid.u, mid.w, -mid.ut, -mid.wt);
        let back = integrate(&back_start, &p, 4096).unwrap();
        let end = back.last();
        let err = (end.u - u0)
            .abs()
            .max((end.w - w0).abs())
            .max(end.ut.abs())
            .max(end.wt.abs());
        assert!(err < 1e-5, "({u0}, {w0}) reversal error {err}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exchange_symmetry(u0 in -1.0f64..1.0, w0 in -1.0f64..1.0) {
        let p = sym().with_horizon(64.0);
        let a = run(u0, w0, &p, 64);
        let b = run(w0, u0, &p, 64);
        prop_assert_eq!(a.samples.len(), b.samples.len());
        for (x, y) in a.samples.iter().zip(&b.samples) {
            let m = y.exchanged();
            prop_assert!((x.u - m.u).abs() < 1e-9 && (x.w - m.w).abs() < 1e-9);
            prop_assert!((x.ut - m.ut).abs() < 1e-9 && (x.wt - m.wt).abs() < 1e-9);
        }
    }

    #[test]
    fn negation_symmetry(u0 in -1.0f64..1.0, w0 in -1.0f64..1.0) {
        let p = sym().with_horizon(64.0);
        let a = run(u0, w0, &p, 64);
        let b = run(-u0, -w0, &p, 64);
        prop_assert_eq!(a.samples.len(), b.samples.len());
        for (x, y) in a.samples.iter().zip(&b.samples) {
            let m = y.negated();
            prop_assert!((x.u - m.u).abs() < 1e-9 && (x.w - m.w).abs() < 1e-9);
            prop_assert!((x.ut - m.ut).abs() < 1e-9 && (x.wt - m.wt).abs() < 1e-9);
        }
    }

    #[test]
    fn escape_sample_is_outside_radius(u0 in -1.0f64..1.0, w0 in -1.0f64..1.0) {
        let p = sym().with_horizon(64.0);
        let tr = run(u0, w0, &p, 64);
        if tr.terminated_early() {
            prop_assert!(tr.last().amplitude() >= p.escape_radius);
            prop_assert_eq!(tr.escape_time, Some(tr.last().t));
        } else {
            prop_assert!(tr.max_amplitude < p.escape_radius);
        }
        for pair in tr.samples.windows(2) {
            prop_assert!(pair[1].t > pair[0].t);
        }
    }
}
