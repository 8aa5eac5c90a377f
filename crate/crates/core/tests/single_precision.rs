use planar_tangent::fixtures::{make_fixture, FixtureParams};
use planar_tangent::porosity::beta_ladder;
use planar_tangent::{
    con_a, cone_convergence_report, dichotomy_probe, strong_equiv_probe, Classification, ConvergenceVerdict,
    EquivalenceVerdict, Point32, Ray32, ScaleLadder32,
};

#[test]
fn square_corner_in_f32() {
    let f = make_fixture::<f32>("square-at-corner", &FixtureParams::default()).unwrap();
    let cone = con_a(&f.set, f.marked).unwrap();
    let arcs = cone.arcs.circular_arcs();
    assert_eq!(arcs.len(), 1);
    assert!(arcs[0].0.abs() < 1e-5 && (arcs[0].1 - std::f32::consts::FRAC_PI_2).abs() < 1e-5);

    let ladder = ScaleLadder32::new(1.0, 0.5, 8).unwrap();
    let blow = cone_convergence_report(&f.set, f.marked, &ladder, 1.0, 1024).unwrap();
    assert_eq!(blow.verdict, ConvergenceVerdict::Converges);
    let eq = strong_equiv_probe(&f.set, &cone.to_set(), f.marked, &ladder, 256).unwrap();
    assert_eq!(eq.verdict, EquivalenceVerdict::Equivalent);
}

#[test]
fn geometric_violation_in_f32() {
    let f = make_fixture::<f32>("geometric-radial", &FixtureParams::default()).unwrap();
    let v = dichotomy_probe(
        &f.set,
        Point32::origin(),
        &Ray32::new(Point32::origin(), 0.0),
        &beta_ladder(6),
        &ScaleLadder32::new(1.0, 0.5, 10).unwrap(),
    )
    .unwrap();
    assert!(matches!(v.classification, Classification::Violation(x) if (x - 0.5).abs() < 0.05));
}
