//! The acceptance suite: ten named criteria, each a list of checks, plus
//! the CSV artifacts they produce.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, SQRT_2, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angular::AngularSet;
use crate::blowup::{cone_convergence_report, sequence_cluster_directions, ConvergenceVerdict};
use crate::cone::{con_a, conv_a};
use crate::equiv::{strong_equiv_probe, EquivalenceVerdict};
use crate::error::Result;
use crate::fixtures::{densify, geometric_radii, make_fixture, random_convex_polygon, Fixture, FixtureParams, NAMES};
use crate::geometry::{Point, Ray, RigidMotion};
use crate::interval::IntervalSet;
use crate::ladder::ScaleLadder;
use crate::porosity::{beta_ladder, dichotomy_probe, dichotomy_probe_with_resolution, porosity_estimate, Classification};
use crate::report::{fmt_f64, Table};
use crate::set_model::{PlanarSet, Polygon};

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "[{status}] {:>2} {}: {passed}/{} checks", self.id, self.name, self.checks.len())?;
        for c in self.failures() {
            write!(f, "; failed {} ({})", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// A named CSV produced by the suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub artifacts: Vec<Artifact>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionResult::passed)
    }

    pub fn lines(&self) -> Vec<String> {
        self.criteria.iter().map(|c| c.to_string()).collect()
    }

    pub fn summary(&self) -> Table {
        let mut t = Table::new(&["id", "criterion", "check", "passed", "detail"]);
        for c in &self.criteria {
            for k in &c.checks {
                t.push(vec![
                    c.id.to_string(),
                    c.name.to_string(),
                    k.name.clone(),
                    u8::from(k.passed).to_string(),
                    k.detail.replace(',', ";"),
                ]);
            }
        }
        t
    }
}

pub const CRITERIA: [&str; 10] = [
    "cone-correctness",
    "convexity-collapse",
    "blowup-convergence",
    "strong-equivalence",
    "porosity-oracle",
    "dichotomy",
    "closure-invariance",
    "cluster-lab",
    "rigid-motion-equivariance",
    "determinism",
];

/// Runs every criterion in order.
pub fn run_acceptance(seed: u64) -> Result<AcceptanceReport> {
    run_selected(seed, |_| true)
}

/// Runs the criteria whose id satisfies `select`.
pub fn run_selected(seed: u64, select: impl Fn(usize) -> bool) -> Result<AcceptanceReport> {
    let mut criteria = Vec::new();
    let mut artifacts = Vec::new();
    type Suite = fn(u64, &mut Vec<Artifact>) -> Result<Vec<Check>>;
    let suites: [Suite; 10] = [
        cone_correctness,
        convexity_collapse,
        blowup_convergence,
        strong_equivalence,
        porosity_oracle,
        dichotomy,
        closure_invariance,
        cluster_lab,
        rigid_motion,
        determinism,
    ];
    for (i, suite) in suites.iter().enumerate() {
        let id = i + 1;
        if !select(id) {
            continue;
        }
        let checks = suite(seed, &mut artifacts)?;
        criteria.push(CriterionResult {
            id,
            name: CRITERIA[i],
            checks,
        });
    }
    Ok(AcceptanceReport {
        seed,
        criteria,
        artifacts,
    })
}

fn fixture(name: &str) -> Result<Fixture<f64>> {
    make_fixture(name, &FixtureParams::default())
}

/// Catalog fixtures documented as starlike at their marked point.
pub fn starlike_fixtures() -> Result<Vec<Fixture<f64>>> {
    let mut out = Vec::new();
    for name in NAMES {
        let f = fixture(name)?;
        if f.expected.starlike {
            out.push(f);
        }
    }
    Ok(out)
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn max_arc_error(got: &AngularSet<f64>, want: &AngularSet<f64>) -> f64 {
    if got.is_full() || want.is_full() {
        return if got.is_full() == want.is_full() { 0.0 } else { f64::INFINITY };
    }
    let (g, w) = (got.circular_arcs(), want.circular_arcs());
    if g.len() != w.len() {
        return f64::INFINITY;
    }
    g.iter()
        .zip(&w)
        .map(|(&(gs, ge), &(ws, we))| circular_gap(gs, ws).max(circular_gap(ge, we)))
        .fold(0.0, f64::max)
}

/// Directions `atan2(x², x)` of boundary points of the parabola region at
/// `x = 2^-k`, together with the `y`-axis: the closure of their angles.
fn parabola_sweep_arcs() -> AngularSet<f64> {
    let mut lo = FRAC_PI_2;
    for k in 0..=60 {
        let x = 0.5f64.powi(k);
        lo = lo.min((x * x).atan2(x));
    }
    AngularSet::ccw_between(lo, FRAC_PI_2)
}

fn arcs_csv(name: &str, arcs: &AngularSet<f64>, table: &mut Table) {
    for (s, e) in arcs.circular_arcs() {
        table.push(vec![name.to_string(), fmt_f64(s), fmt_f64(e)]);
    }
    if arcs.is_full() {
        table.push(vec![name.to_string(), "0".into(), fmt_f64(TAU)]);
    }
}

fn cone_correctness(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut table = Table::new(&["fixture", "start", "end"]);
    for name in ["real-halfline", "full-plane", "sector", "square-at-corner", "parabola-star-region"] {
        let f = fixture(name)?;
        let got = con_a(&f.set, f.marked)?;
        let want = if name == "parabola-star-region" {
            parabola_sweep_arcs()
        } else {
            f.expected.cone.arcs.clone()
        };
        let err = max_arc_error(&got.arcs, &want);
        checks.push(Check::new(name, err <= 1e-6, format!("max endpoint error {}", fmt_f64(err))));
        arcs_csv(name, &got.arcs, &mut table);
    }
    artifacts.push(Artifact {
        name: "cone_arcs".into(),
        csv: table.to_csv(),
    });
    Ok(checks)
}

fn convexity_collapse(seed: u64, _artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let mut mismatches = Vec::new();
    let mut vertices = 0;
    for i in 0..50u64 {
        let poly: Polygon<f64> = random_convex_polygon(seed.wrapping_mul(1000).wrapping_add(i), 12)?;
        let set = PlanarSet::Polygon(poly.clone());
        for &v in poly.vertices() {
            vertices += 1;
            let con = con_a(&set, v)?;
            let conv = conv_a(&set, v)?;
            if con.arcs != conv.arcs {
                mismatches.push(format!("polygon {i} vertex ({}, {})", fmt_f64(v.x), fmt_f64(v.y)));
            }
        }
    }
    let detail = match mismatches.first() {
        None => format!("{vertices} vertices identical"),
        Some(m) => format!("{} mismatches, first at {m}", mismatches.len()),
    };
    Ok(vec![Check::new("50 seeded convex polygons", mismatches.is_empty(), detail)])
}

fn blowup_convergence(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let ladder = ScaleLadder::new(1.0, 0.5, 12)?;
    let mut checks = Vec::new();
    for f in starlike_fixtures()? {
        let report = cone_convergence_report(&f.set, f.marked, &ladder, 1.0, 4096)?;
        let last = report.rows.last().expect("depth ≥ 4").d_h;
        checks.push(Check::new(
            f.name.clone(),
            report.verdict == ConvergenceVerdict::Converges && last <= 0.02,
            format!("{}, finest d_H {}", report.verdict, fmt_f64(last)),
        ));
        artifacts.push(Artifact {
            name: format!("blowup_{}", f.name),
            csv: report.to_csv(),
        });
    }
    let annulus = fixture("annulus")?;
    let report = cone_convergence_report(&annulus.set, annulus.marked, &ladder, 1.0, 4096)?;
    checks.push(Check::new(
        "annulus",
        report.verdict == ConvergenceVerdict::Diverges,
        report.verdict.to_string(),
    ));
    artifacts.push(Artifact {
        name: "blowup_annulus".into(),
        csv: report.to_csv(),
    });
    Ok(checks)
}

/// Target value of `ε/t` for the two-rays pair.
pub const TWO_RAYS_TARGET: f64 = SQRT_2;
pub const TWO_RAYS_TOL: f64 = 0.01;

/// Rays at angles 0 and π/2 from the origin.
pub fn two_rays() -> (PlanarSet<f64>, PlanarSet<f64>) {
    let o = Point::origin();
    (
        PlanarSet::cone(o, AngularSet::point(0.0)),
        PlanarSet::cone(o, AngularSet::point(FRAC_PI_2)),
    )
}

fn strong_equivalence(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let ladder = ScaleLadder::new(1.0, 0.5, 12)?;
    let n = 1024;
    let mut checks = Vec::new();
    for f in starlike_fixtures()? {
        let cone = con_a(&f.set, f.marked)?.to_set();
        let report = strong_equiv_probe(&f.set, &cone, f.marked, &ladder, n)?;
        let last = report.rows.last().expect("depth ≥ 4").ratio;
        checks.push(Check::new(
            f.name.clone(),
            report.verdict == EquivalenceVerdict::Equivalent && last <= 0.05,
            format!("{}, final ε/t {}", report.verdict, fmt_f64(last)),
        ));
        artifacts.push(Artifact {
            name: format!("equiv_{}", f.name),
            csv: report.to_csv(),
        });
    }
    let (z, y) = two_rays();
    let report = strong_equiv_probe(&z, &y, Point::origin(), &ladder, n)?;
    checks.push(Check::new(
        "two-rays verdict",
        report.verdict == EquivalenceVerdict::NotEquivalent,
        report.verdict.to_string(),
    ));
    let worst = report
        .rows
        .iter()
        .map(|r| (r.ratio - TWO_RAYS_TARGET).abs())
        .fold(0.0, f64::max);
    let ratios: Vec<String> = {
        let mut v: Vec<String> = report.rows.iter().map(|r| fmt_f64(r.ratio)).collect();
        v.dedup();
        v
    };
    checks.push(Check::new(
        "two-rays ratio",
        worst <= TWO_RAYS_TOL,
        format!(
            "ε/t = {} at every scale, target {} ± {}",
            ratios.join("/"),
            fmt_f64(TWO_RAYS_TARGET),
            fmt_f64(TWO_RAYS_TOL)
        ),
    ));
    artifacts.push(Artifact {
        name: "equiv_two_rays".into(),
        csv: report.to_csv(),
    });
    Ok(checks)
}

/// Largest `l(0, h, A)/h` over every `h` in `[h_lo, h_hi]` for a finite
/// union of intervals: the ratio is piecewise monotone between gap
/// endpoints, so checking those `h` suffices.
pub fn gap_scan_sup(a: &IntervalSet<f64>, h_lo: f64, h_hi: f64) -> f64 {
    let mut hs = vec![h_lo, h_hi];
    for iv in a.intervals() {
        for e in [iv.lo, iv.hi] {
            if e > h_lo && e < h_hi {
                hs.push(e);
            }
        }
    }
    hs.iter().map(|&h| a.longest_gap(0.0, h) / h).fold(0.0, f64::max)
}

fn porosity_oracle(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let ladder = ScaleLadder::<f64>::new(1.0, 0.5, 12)?;
    let a = geometric_radii(0.25, 0.5)?;
    let est = porosity_estimate(&a, 0.0, &ladder, 4)?;
    let h_hi = ladder.scale(ladder.depth() - 4);
    let h_lo = ladder.finest() * ladder.q().powf(7.0f64 / 8.0);
    let oracle = gap_scan_sup(&a, h_lo, h_hi);
    artifacts.push(Artifact {
        name: "porosity_geometric".into(),
        csv: est.table().to_csv(),
    });
    let full = porosity_estimate(&IntervalSet::half_line(0.0), 0.0, &ladder, 4)?.estimate;
    let point = porosity_estimate(&IntervalSet::point(0.0), 0.0, &ladder, 4)?.estimate;
    Ok(vec![
        Check::new(
            "geometric set",
            (est.estimate - 0.5).abs() <= 0.02 && (est.estimate - oracle).abs() <= 0.02,
            format!("estimate {}, gap-scan oracle {}", fmt_f64(est.estimate), fmt_f64(oracle)),
        ),
        Check::new("half-line", full == 0.0, format!("estimate {}", fmt_f64(full))),
        Check::new("point", point == 1.0, format!("estimate {}", fmt_f64(point))),
    ])
}

/// Rays `kπ/8`, `k = 0..=16`.
pub fn dichotomy_rays() -> Vec<f64> {
    (0..=16).map(|k| k as f64 * FRAC_PI_8).collect()
}

fn dichotomy(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let h_ladder = ScaleLadder::new(1.0, 0.5, 16)?;
    let betas = beta_ladder::<f64>(10);
    let mut checks = Vec::new();
    let mut table = Table::new(&["fixture", "ray", "classification"]);
    for f in starlike_fixtures()? {
        let mut bad = Vec::new();
        for theta in dichotomy_rays() {
            let v = dichotomy_probe(&f.set, f.marked, &Ray::new(f.marked, theta), &betas, &h_ladder)?;
            if v.classification.is_violation() {
                bad.push(format!("ray {} gave {}", fmt_f64(theta), v.classification));
            }
            table.push(vec![f.name.clone(), fmt_f64(theta), v.classification.to_string()]);
        }
        let detail = if bad.is_empty() {
            "17 rays, no violation".to_string()
        } else {
            bad.join("; ")
        };
        checks.push(Check::new(f.name.clone(), bad.is_empty(), detail));
    }
    let g = fixture("geometric-radial")?;
    let v = dichotomy_probe(&g.set, g.marked, &Ray::new(g.marked, 0.0), &betas, &h_ladder)?;
    let ok = matches!(v.classification, Classification::Violation(x) if (x - 0.5).abs() <= 0.05);
    checks.push(Check::new("geometric-radial along its ray", ok, v.classification.to_string()));
    artifacts.push(Artifact {
        name: "dichotomy_rays".into(),
        csv: table.to_csv(),
    });
    artifacts.push(Artifact {
        name: "dichotomy_geometric".into(),
        csv: v.to_csv(),
    });
    Ok(checks)
}

/// Grid pitch of the densified samples.
pub const DENSE_MESH: f64 = 1e-3;
/// Radius of the densified disk about the marked point.
pub const DENSE_RADIUS: f64 = 0.5;

fn closure_invariance(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let h_ladder = ScaleLadder::new(1.0, 0.5, 5)?;
    let betas = beta_ladder::<f64>(5);
    let resolution = 2.0 * DENSE_MESH;
    let rays: Vec<f64> = (0..16).map(|k| k as f64 * FRAC_PI_8).collect();
    let mut checks = Vec::new();
    let mut table = Table::new(&["fixture", "ray", "exact", "densified"]);
    for name in NAMES {
        let f = fixture(name)?;
        let dense = densify(&f.set, f.marked, DENSE_MESH, DENSE_RADIUS);
        let mut bad = Vec::new();
        for &theta in &rays {
            let l = Ray::new(f.marked, theta);
            let exact = dichotomy_probe_with_resolution(&f.set, f.marked, &l, &betas, &h_ladder, resolution)?;
            let sampled = dichotomy_probe_with_resolution(&dense, f.marked, &l, &betas, &h_ladder, resolution)?;
            if !exact.classification.same_kind(&sampled.classification) {
                bad.push(format!(
                    "ray {}: {} vs {}",
                    fmt_f64(theta),
                    exact.classification,
                    sampled.classification
                ));
            }
            table.push(vec![
                name.to_string(),
                fmt_f64(theta),
                exact.classification.to_string(),
                sampled.classification.to_string(),
            ]);
        }
        let detail = if bad.is_empty() {
            format!("{} rays agree", rays.len())
        } else {
            bad.join("; ")
        };
        checks.push(Check::new(*name, bad.is_empty(), detail));
    }
    artifacts.push(Artifact {
        name: "closure_invariance".into(),
        csv: table.to_csv(),
    });
    Ok(checks)
}

fn cluster_lab(_seed: u64, artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let report = sequence_cluster_directions(0.3, 0.9, &ScaleLadder::new(1.0, 0.5, 12)?)?;
    let target = 2.0 * 0.3f64.sin();
    artifacts.push(Artifact {
        name: "cluster".into(),
        csv: report.to_csv(),
    });
    Ok(vec![
        Check::new(
            "two clusters",
            report.clusters.len() == 2,
            format!("{} clusters", report.clusters.len()),
        ),
        Check::new(
            "separation",
            (report.separation - target).abs() <= 1e-6,
            format!("separation {}, target {}", fmt_f64(report.separation), fmt_f64(target)),
        ),
    ])
}

/// Fixtures whose blow-up rows are compared under rigid motions.
pub const MOTION_FIXTURES: [&str; 4] = ["square-at-corner", "sector", "convex-polygon-at-vertex", "annulus"];

/// `count` seeded rotations in `[0, 2π)` with translations in `[−5, 5]²`.
pub fn random_motions(seed: u64, count: usize) -> Vec<RigidMotion<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rotation = rng.gen_range(0.0..TAU);
            let translation = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            RigidMotion::new(rotation, translation)
        })
        .collect()
}

fn rigid_motion(seed: u64, _artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let ladder = ScaleLadder::new(1.0, 0.5, 12)?;
    let motions = random_motions(seed, 20);
    let mut checks = Vec::new();
    for name in MOTION_FIXTURES {
        let f = fixture(name)?;
        let base = cone_convergence_report(&f.set, f.marked, &ladder, 1.0, 4096)?;
        let mut worst: f64 = 0.0;
        for m in &motions {
            let moved = cone_convergence_report(&f.set.transformed(m), m.apply(f.marked), &ladder, 1.0, 4096)?;
            for (r, s) in base.rows.iter().zip(&moved.rows) {
                worst = worst.max((r.d_h - s.d_h).abs());
            }
        }
        checks.push(Check::new(
            name,
            worst <= 1e-9,
            format!("max row difference {} over 20 motions", fmt_f64(worst)),
        ));
    }
    Ok(checks)
}

/// CSV artifacts from one representative run of every analysis.
pub fn determinism_artifacts(seed: u64) -> Result<Vec<Artifact>> {
    let mut out = Vec::new();
    let ladder = ScaleLadder::new(1.0, 0.5, 12)?;
    let params = FixtureParams {
        seed,
        ..FixtureParams::default()
    };
    let poly: Fixture<f64> = make_fixture("convex-polygon-at-vertex", &params)?;
    let cone = con_a(&poly.set, poly.marked)?;
    let mut arcs = Table::new(&["fixture", "start", "end"]);
    arcs_csv(&poly.name, &cone.arcs, &mut arcs);
    out.push(Artifact {
        name: "cone".into(),
        csv: arcs.to_csv(),
    });
    out.push(Artifact {
        name: "blowup".into(),
        csv: cone_convergence_report(&poly.set, poly.marked, &ladder, 1.0, 4096)?.to_csv(),
    });
    out.push(Artifact {
        name: "equiv".into(),
        csv: strong_equiv_probe(&poly.set, &cone.to_set(), poly.marked, &ladder, 1024)?.to_csv(),
    });
    let g = fixture("geometric-radial")?;
    out.push(Artifact {
        name: "dichotomy".into(),
        csv: dichotomy_probe(&g.set, g.marked, &Ray::new(g.marked, 0.0), &beta_ladder(10), &ladder)?.to_csv(),
    });
    out.push(Artifact {
        name: "porosity".into(),
        csv: porosity_estimate(&geometric_radii(0.25, 0.5)?, 0.0, &ladder, 4)?.table().to_csv(),
    });
    out.push(Artifact {
        name: "cluster".into(),
        csv: sequence_cluster_directions(0.3, 0.9, &ladder)?.to_csv(),
    });
    Ok(out)
}

fn determinism(seed: u64, _artifacts: &mut Vec<Artifact>) -> Result<Vec<Check>> {
    let first = determinism_artifacts(seed)?;
    let second = determinism_artifacts(seed)?;
    Ok(first
        .iter()
        .zip(&second)
        .map(|(a, b)| {
            let same = a.csv.as_bytes() == b.csv.as_bytes();
            Check::new(
                a.name.clone(),
                same,
                format!("{} bytes, {}", a.csv.len(), if same { "identical" } else { "differ" }),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_scan_finds_geometric_ratio() {
        let a = geometric_radii(0.25, 0.5).unwrap();
        assert!((gap_scan_sup(&a, 1e-4, 1.0) - 0.5).abs() < 1e-12);
        assert_eq!(gap_scan_sup(&IntervalSet::half_line(0.0), 1e-3, 1.0), 0.0);
    }

    #[test]
    fn arc_error_handles_wrap() {
        let a = AngularSet::from_ccw(-0.1, 0.2);
        let b = AngularSet::from_ccw(TAU - 0.1, 0.2);
        assert!(max_arc_error(&a, &b) < 1e-12);
        assert_eq!(max_arc_error(&AngularSet::full(), &a), f64::INFINITY);
    }

    #[test]
    fn motions_are_seeded() {
        assert_eq!(random_motions(3, 5), random_motions(3, 5));
        assert_ne!(random_motions(3, 5), random_motions(4, 5));
    }
}
