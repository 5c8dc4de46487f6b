use coupled_kg::dynamics::{integrate, Params, State};
use coupled_kg::potential::{
    endpoints, evaluate_p, evaluate_p_quadrature, locate_minima, sample_grid,
};
use coupled_kg::stationary::{
    f_g, stationary_points, Branch, CurveAxis, Equilibrium, EquilibriumKind, FixedPointCurve,
    SearchBox,
};
use proptest::prelude::*;

const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn same_set(a: &[Equilibrium], b: &[Equilibrium]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| {
            b.iter()
                .any(|y| (x.u - y.u).hypot(x.w - y.w) < 1e-8 && x.kind == y.kind)
        })
}

#[test]
fn root_locus_on_random_parameters() {
    // Deterministic sweep of 1000 parameter values in [-5, 5].
    for k in 0..1000 {
        let s = -5.0 + 10.0 * (k as f64 + 0.5) / 1000.0;
        for branch in [Branch::Plus, Branch::Minus] {
            let u = FixedPointCurve::new(CurveAxis::UOfW, branch).eval(s);
            let (f, _) = f_g(u, s);
            assert!(f.abs() < 1e-10, "f residual {f} at w = {s}");
            let w = FixedPointCurve::new(CurveAxis::WOfU, branch).eval(s);
            let (_, g) = f_g(s, w);
            assert!(g.abs() < 1e-10, "g residual {g} at u = {s}");
        }
    }
}

#[test]
fn equilibrium_set_independent_of_seed_lattice() {
    let p = Params::symmetric();
    let sets: Vec<_> = [16, 32, 64]
        .iter()
        .map(|&n| {
            stationary_points(&p, SearchBox::default(), n)
                .unwrap()
                .equilibria
        })
        .collect();
    assert!(same_set(&sets[0], &sets[1]));
    assert!(same_set(&sets[1], &sets[2]));
}

#[test]
fn equilibrium_set_is_symmetric() {
    let rep = stationary_points(&Params::symmetric(), SearchBox::default(), 32).unwrap();
    let has = |u: f64, w: f64| {
        rep.equilibria
            .iter()
            .any(|e| (e.u - u).hypot(e.w - w) < 1e-8)
    };
    for e in &rep.equilibria {
        assert!(has(e.w, e.u), "exchange image of {e:?} missing");
        assert!(has(-e.u, -e.w), "negation image of {e:?} missing");
        let (f, g) = f_g(e.u, e.w);
        assert!(f.abs() < 1e-12 && g.abs() < 1e-12);
    }
    let coupled: Vec<_> = rep.of_kind(EquilibriumKind::CoupledNontrivial).collect();
    assert_eq!(coupled.len(), 2);
    assert!(coupled
        .iter()
        .any(|e| (e.u - R).abs() < 1e-12 && (e.w - R).abs() < 1e-12));
    assert!(coupled
        .iter()
        .any(|e| (e.u + R).abs() < 1e-12 && (e.w + R).abs() < 1e-12));
}

#[test]
fn equilibria_are_integrator_fixed_points() {
    let p = Params::symmetric().with_horizon(100.0);
    let rep = stationary_points(&p, SearchBox::default(), 32).unwrap();
    for e in &rep.equilibria {
        let tr = integrate(&State::at_rest(e.u, e.w), &p, 256).unwrap();
        for s in &tr.samples {
            assert!(
                (s.u - e.u).abs() < 1e-6 && (s.w - e.w).abs() < 1e-6,
                "{e:?} drifted to ({}, {}) at t = {}",
                s.u,
                s.w,
                s.t
            );
        }
    }
}

#[test]
fn minima_agree_with_coupled_equilibria() {
    let grid = sample_grid((-1.5, 1.5), (-1.5, 1.5), 301, 301).unwrap();
    let minima = locate_minima(&grid);
    let rep = stationary_points(&Params::symmetric(), SearchBox::default(), 32).unwrap();
    let coupled: Vec<_> = rep.of_kind(EquilibriumKind::CoupledNontrivial).collect();
    assert_eq!(minima.len(), coupled.len());
    for (m, e) in minima.iter().zip(coupled) {
        assert!((m.u - e.u).abs() < 1e-5 && (m.w - e.w).abs() < 1e-5);
    }
}

#[test]
fn coarse_grid_still_finds_two_minima() {
    let grid = sample_grid((-1.5, 1.5), (-1.5, 1.5), 101, 101).unwrap();
    assert_eq!(locate_minima(&grid).len(), 2);
}

#[test]
fn quadrature_oracle_for_fixed_points() {
    // The force is cubic along each straight leg, so Simpson agrees to roundoff.
    for &(u, w) in &[(0.3, 0.6), (0.8, 0.9), (0.1, 0.9), (-1.2, 0.4), (1.9, -1.7)] {
        let a = evaluate_p(u, w);
        let b = evaluate_p_quadrature(u, w);
        assert!((a - b).abs() < 1e-10, "({u}, {w}): {a} vs {b}");
    }
}

#[test]
fn potential_is_continuous_across_anti_diagonal() {
    assert_eq!(endpoints(0.5 + 1e-9, -0.5).branch, Branch::Plus);
    assert_eq!(endpoints(0.5 - 1e-9, -0.5).branch, Branch::Minus);
    // Both branches evaluate to 71/192 at (0.5, -0.5).
    assert!((evaluate_p(0.5, -0.5) - 71.0 / 192.0).abs() < 1e-15);
    let above = evaluate_p(0.5 + 1e-9, -0.5);
    let below = evaluate_p(0.5 - 1e-9, -0.5);
    assert!((above - below).abs() < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_form_matches_line_integrals(u in -2.0f64..2.0, w in -2.0f64..2.0) {
        prop_assume!((u + w).abs() > 1e-3);
        prop_assert!((evaluate_p(u, w) - evaluate_p_quadrature(u, w)).abs() < 1e-8);
    }

    #[test]
    fn potential_exchange_symmetry(u in -3.0f64..3.0, w in -3.0f64..3.0) {
        prop_assert!((evaluate_p(u, w) - evaluate_p(w, u)).abs() < 1e-12 * (1.0 + evaluate_p(u, w).abs()));
    }

    #[test]
    fn potential_negation_symmetry(u in -3.0f64..3.0, w in -3.0f64..3.0) {
        prop_assume!(u + w != 0.0);
        prop_assert!((evaluate_p(-u, -w) - evaluate_p(u, w)).abs() < 1e-12 * (1.0 + evaluate_p(u, w).abs()));
    }
}
