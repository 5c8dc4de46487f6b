use coupled_kg::boundary::{
    bisect_limit, compare_with_potential, is_locally_sharp, map_boundary, scan_lines, ScanSettings,
    Side, DEFAULT_TOL,
};
use coupled_kg::classify::{classify_many, classify_one, sweep, Cell, Quadrant, Verdict};
use coupled_kg::potential::evaluate_p;
use coupled_kg::{Error, Params};

fn sym() -> Params {
    Params::symmetric()
}

#[test]
fn reference_initial_values() {
    let p = sym();
    let a = classify_one(0.125, 0.75, &p).unwrap();
    assert_eq!(a.verdict, Verdict::Divergent);
    assert_eq!(a.escape_quadrant, Some(Quadrant::PM));
    let b = classify_one(0.025, 0.75, &p).unwrap();
    assert_eq!(b.verdict, Verdict::Divergent);
    assert_eq!(b.escape_quadrant, Some(Quadrant::MP));
    for &(u0, w0) in &[(0.8, 0.9), (0.1, 0.9)] {
        let c = classify_one(u0, w0, &p).unwrap();
        assert_eq!(c.verdict, Verdict::Bounded, "({u0}, {w0})");
        assert_eq!(c.escape_time, None);
        assert_eq!(c.escape_quadrant, None);
        assert!(c.max_amplitude < p.escape_radius);
    }
}

#[test]
fn verdicts_stable_under_escape_radius() {
    for &(u0, w0) in &[(0.125, 0.75), (0.025, 0.75), (0.8, 0.9), (0.1, 0.9)] {
        let base = classify_one(u0, w0, &sym()).unwrap().verdict;
        for r in [5.0, 100.0] {
            let v = classify_one(u0, w0, &sym().with_escape_radius(r))
                .unwrap()
                .verdict;
            assert_eq!(v, base, "({u0}, {w0}) at R = {r}");
        }
    }
}

#[test]
fn origin_is_bounded_with_zero_amplitude() {
    let c = classify_one(0.0, 0.0, &sym()).unwrap();
    assert_eq!(c.verdict, Verdict::Bounded);
    assert_eq!(c.max_amplitude, 0.0);
}

#[test]
fn anti_diagonal_always_diverges() {
    let p = sym();
    let pts: Vec<_> = (1..=10)
        .map(|k| (0.1 * k as f64, -0.1 * k as f64))
        .collect();
    for (cell, &(u0, _)) in classify_many(&pts, &p).unwrap().iter().zip(&pts) {
        let c = cell.classification().unwrap();
        assert_eq!(c.verdict, Verdict::Divergent);
        assert_eq!(c.escape_quadrant, Some(Quadrant::PM));
        // u = u0 cosh t reaches the radius at acosh(R / u0), up to one step.
        let t = c.escape_time.unwrap();
        let expect = (p.escape_radius / u0).acosh();
        assert!(
            t >= expect - 1e-9 && t <= expect + p.step + 1e-9,
            "u0 = {u0}"
        );
    }
}

#[test]
fn diagonal_is_bounded() {
    let pts: Vec<_> = (1..=12).map(|k| (0.1 * k as f64, 0.1 * k as f64)).collect();
    for cell in classify_many(&pts, &sym()).unwrap() {
        assert_eq!(cell.verdict(), Some(Verdict::Bounded));
    }
}

#[test]
fn symmetric_images_share_verdicts_and_map_quadrants() {
    let p = sym();
    for &(u0, w0) in &[(0.125, 0.75), (0.025, 0.75), (0.3, 0.6), (0.8, 0.9)] {
        let c = classify_one(u0, w0, &p).unwrap();
        let x = classify_one(w0, u0, &p).unwrap();
        let n = classify_one(-u0, -w0, &p).unwrap();
        assert_eq!(c.verdict, x.verdict);
        assert_eq!(c.verdict, n.verdict);
        assert_eq!(
            c.escape_quadrant.map(Quadrant::exchanged),
            x.escape_quadrant
        );
        assert_eq!(c.escape_quadrant.map(Quadrant::negated), n.escape_quadrant);
    }
}

#[test]
fn first_quadrant_escapes_use_mixed_sign_quadrants() {
    let result = sweep((0.0, 1.2), (0.0, 1.2), 21, 21, &sym()).unwrap();
    let mut divergent = 0;
    for (_, _, cell) in result.iter() {
        match cell {
            Cell::Classified(c) if !c.is_bounded() => {
                divergent += 1;
                assert!(matches!(
                    c.escape_quadrant,
                    Some(Quadrant::PM | Quadrant::MP)
                ));
            }
            Cell::Classified(_) => {}
            Cell::Fault { t } => panic!("fault at t = {t}"),
        }
    }
    assert!(divergent > 0);
    assert_eq!(result.get(0, 0).verdict(), Some(Verdict::Bounded));
}

#[test]
fn bisection_meets_tolerance_in_predicted_iterations() {
    let b = bisect_limit(0.75, (0.125, 0.5), Side::Lower, DEFAULT_TOL, &sym()).unwrap();
    let expect = (0.375f64 / DEFAULT_TOL).log2().ceil() as u32;
    assert_eq!(b.iterations, expect);
    assert!(b.bisection_width <= DEFAULT_TOL);
    assert!(b.lo <= b.u0 && b.u0 <= b.hi);
    assert_eq!(
        classify_one(b.lo, 0.75, &sym()).unwrap().verdict,
        Verdict::Divergent
    );
    assert_eq!(
        classify_one(b.hi, 0.75, &sym()).unwrap().verdict,
        Verdict::Bounded
    );
    assert!((b.u0 - 0.2044677734375).abs() < 1e-12);
    assert!((b.p_value - evaluate_p(b.u0, 0.75)).abs() < 1e-15);
}

#[test]
fn bisection_rejects_bad_input() {
    let p = sym();
    // Both endpoints are bounded; u0 = 0 sits on the invariant w-axis.
    let e = bisect_limit(0.9, (0.0, 0.1), Side::Lower, 1e-3, &p).unwrap_err();
    assert!(matches!(e, Error::BracketInvalid { .. }));
    assert_eq!(e.exit_code(), 4);
    let e = bisect_limit(0.9, (0.05, 0.1), Side::Lower, 0.0, &p).unwrap_err();
    assert!(matches!(e, Error::InvalidArgument(_)));
    let e = bisect_limit(0.75, (0.125, 0.5), Side::Upper, 1e-3, &p).unwrap_err();
    assert!(matches!(e, Error::InvalidArgument(_)));
    assert!(bisect_limit(0.9, (0.05, 0.1), Side::Lower, 1e-3, &p).is_ok());
}

#[test]
fn boundary_map_regression() {
    let p = sym();
    let lines = scan_lines(0.7, 1.1, 20);
    let map = map_boundary(&lines, &ScanSettings::default(), &p).unwrap();
    assert_eq!(map.points.len(), 27);
    assert!(map.points.len() <= 2 * lines.len());
    assert!(map.points.iter().all(|b| b.bisection_width <= DEFAULT_TOL));
    assert_eq!(map.failures.len(), 2);
    let find = |w0: f64, side: Side| {
        map.points
            .iter()
            .find(|b| (b.w0 - w0).abs() < 1e-12 && b.side == side)
            .unwrap()
            .u0
    };
    let pinned = [
        (lines[0], Side::Lower, 0.26445312499999996),
        (lines[4], Side::Lower, 0.15178865131578945),
        (lines[10], Side::Upper, 0.8163856907894738),
        (lines[10], Side::Lower, 0.08747944078947367),
        (lines[15], Side::Upper, 0.6263363486842106),
        (lines[18], Side::Lower, 0.16293174342105263),
    ];
    for (w0, side, u0) in pinned {
        assert!((find(w0, side) - u0).abs() < 1e-12, "w0 = {w0} {side:?}");
    }

    let cmp = compare_with_potential(&map.points, 0.1, 0.05).unwrap();
    assert_eq!(cmp.rows.len(), map.points.len());
    assert!(cmp.fraction_within_band >= 0.8);
    assert!(compare_with_potential(&[], 0.1, 0.05).is_err());
}

#[test]
fn local_sharpness_is_reported() {
    // Sharpness is a property of the map, not a requirement: count only.
    let p = sym();
    let map = map_boundary(&scan_lines(0.7, 0.8, 3), &ScanSettings::default(), &p).unwrap();
    let sharp = map
        .points
        .iter()
        .filter(|b| is_locally_sharp(b, DEFAULT_TOL, &p).unwrap())
        .count();
    println!("locally sharp: {sharp} of {}", map.points.len());
    assert!(!map.points.is_empty());
}
