use std::time::Instant;

use planar_tangent::acceptance::{run_acceptance, DEFAULT_SEED};
use planar_tangent::{strong_equiv_probe, Point, ScaleLadder};

/// The one check that cannot hold: for two rays sharing a vertex every
/// point of one lies within `t` of the other, so `ε/t ≤ 1` while the target
/// is `√2`.
const UNATTAINABLE: (usize, &str) = (4, "two-rays ratio");

#[test]
fn acceptance_suite() {
    let start = Instant::now();
    let report = run_acceptance(DEFAULT_SEED).unwrap();
    for line in report.lines() {
        println!("{line}");
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("elapsed {elapsed:.1}s");
    assert_eq!(report.criteria.len(), 10);
    for c in &report.criteria {
        for check in c.failures() {
            assert_eq!(
                (c.id, check.name.as_str()),
                UNATTAINABLE,
                "criterion {} {}: {}",
                c.id,
                c.name,
                check.detail
            );
        }
    }
    assert!(elapsed < 60.0);
}

#[test]
fn two_rays_ratio_is_one() {
    let (z, y) = planar_tangent::acceptance::two_rays();
    let report = strong_equiv_probe(&z, &y, Point::origin(), &ScaleLadder::new(1.0, 0.5, 12).unwrap(), 1024).unwrap();
    for row in &report.rows {
        assert!((row.ratio - 1.0).abs() < 1e-12, "ratio {}", row.ratio);
    }
}

#[test]
fn same_seed_same_artifacts() {
    let a = planar_tangent::acceptance::run_selected(3, |id| id == 5 || id == 8).unwrap();
    let b = planar_tangent::acceptance::run_selected(3, |id| id == 5 || id == 8).unwrap();
    assert_eq!(a.artifacts, b.artifacts);
    assert_eq!(a.criteria.len(), 2);
}
