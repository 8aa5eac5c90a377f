//! Blow-ups `(X − a)/t`, their Hausdorff convergence to `Con_a(X)`, and the
//! two-direction sequence cluster lab.

use std::fmt;

use crate::cone::{con_a, ConeDescriptor};
use crate::error::Result;
use crate::geometry::{hausdorff_distance, Point, PointSample};
use crate::ladder::ScaleLadder;
use crate::report::{fmt_num, Table};
use crate::scalar::Scalar;
use crate::set_model::{sample_arcs, sphere_arcs, PlanarSet};

pub const TOL_CONVERGES: f64 = 0.02;
pub const TOL_DIVERGES: f64 = 0.1;
pub const VERDICT_WINDOW: usize = 3;
/// Candidates closer than this form one cluster.
pub const CLUSTER_TOL: f64 = 1e-9;

/// Polar lattice used for blow-up samples: `m` radial levels and `N`
/// angular steps (the multiple of 8 at or above `2πm`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    pub levels: usize,
    pub angular: usize,
}

impl Lattice {
    pub fn for_samples(n: usize) -> Self {
        let levels = ((n as f64 / std::f64::consts::TAU).sqrt().ceil() as usize).max(1);
        let raw = std::f64::consts::TAU * levels as f64;
        let angular = (((raw / 8.0).ceil() as usize).max(1)) * 8;
        Lattice { levels, angular }
    }

    /// Covering radius of the lattice in `D_R`.
    pub fn mesh<T: Scalar>(&self, radius: T) -> T {
        let dr = radius / T::of(self.levels as f64);
        let dth = T::two_pi() / T::of(self.angular as f64);
        (dr + radius * dth) / T::of(2.0)
    }
}

/// Sample of `{(z − a)/t : z ∈ X, |z − a| ≤ R·t}` on the polar lattice for
/// `n` points: the origin plus, on each level `r_i = R·i/m`, the rescaled
/// sphere of radius `r_i·t` sampled with angular spacing `2π/N`.
pub fn blowup_at_scale<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    t: T,
    radius: T,
    n: usize,
) -> Result<PointSample<T>> {
    let lattice = Lattice::for_samples(n);
    let spacing = T::two_pi() / T::of(lattice.angular as f64);
    let mut points = vec![Point::origin()];
    for i in 1..=lattice.levels {
        let r = radius * T::of(i as f64) / T::of(lattice.levels as f64);
        let arcs = match x {
            PlanarSet::FiniteSample { points: cloud, band } => {
                let hits = cloud
                    .iter()
                    .filter(|p| (p.dist(a) - r * t).abs() <= *band && **p != a)
                    .map(|&p| (p - a) * (T::one() / t));
                points.extend(hits);
                continue;
            }
            _ => sphere_arcs(x, a, r * t).arcs,
        };
        points.extend(sample_arcs(&arcs, Point::origin(), r, spacing));
    }
    Ok(PointSample::new(points, lattice.mesh(radius)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

impl fmt::Display for ConvergenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvergenceVerdict::Converges => "converges",
            ConvergenceVerdict::Diverges => "diverges",
            ConvergenceVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T> {
    pub t: T,
    pub d_h: T,
    pub bound: T,
    pub ratio: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<T> {
    pub cone: ConeDescriptor<T>,
    /// Ordered by decreasing `t`.
    pub rows: Vec<ConvergenceRow<T>>,
    pub verdict: ConvergenceVerdict,
    pub radius: T,
}

impl<T: Scalar> ConvergenceReport<T> {
    pub fn table(&self) -> Table {
        let mut table = Table::new(&["t", "d_h", "bound", "ratio"]);
        for r in &self.rows {
            table.push(vec![fmt_num(r.t), fmt_num(r.d_h), fmt_num(r.bound), fmt_num(r.ratio)]);
        }
        table
    }

    pub fn to_csv(&self) -> String {
        self.table().to_csv()
    }

    /// Two whitespace-separated columns `t d_H` for gnuplot.
    pub fn to_gnuplot(&self) -> String {
        let mut out = String::from("# t d_H\n");
        for r in &self.rows {
            out.push_str(&format!("{} {}\n", fmt_num(r.t), fmt_num(r.d_h)));
        }
        out
    }
}

/// Converges when the raw `d_H` of the finest rows is at most `0.02·R`;
/// diverges when `d_H` minus its bound stays above `0.1·R` on them.
pub fn classify_convergence<T: Scalar>(rows: &[ConvergenceRow<T>], radius: T) -> ConvergenceVerdict {
    let tail = &rows[rows.len().saturating_sub(VERDICT_WINDOW)..];
    if tail.iter().all(|r| r.d_h <= T::of(TOL_CONVERGES) * radius) {
        ConvergenceVerdict::Converges
    } else if tail.iter().all(|r| r.d_h - r.bound > T::of(TOL_DIVERGES) * radius) {
        ConvergenceVerdict::Diverges
    } else {
        ConvergenceVerdict::Inconclusive
    }
}

/// Hausdorff distance between each blow-up and the identically sampled
/// `Con_a(X) ∩ D_R`.
pub fn cone_convergence_report<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    ladder: &ScaleLadder<T>,
    radius: T,
    n: usize,
) -> Result<ConvergenceReport<T>> {
    ladder.require_depth(4)?;
    let cone = con_a(x, a)?;
    let cone_sample = blowup_at_scale(&cone.to_set(), a, T::one(), radius, n)?;
    let mut rows = Vec::with_capacity(ladder.depth());
    for t in ladder.scales() {
        let blow = blowup_at_scale(x, a, t, radius, n)?;
        let d = hausdorff_distance(&blow, &cone_sample)?;
        rows.push(ConvergenceRow {
            t,
            d_h: d.value,
            bound: d.error_bound,
            ratio: d.value / t,
        });
    }
    let verdict = classify_convergence(&rows, radius);
    Ok(ConvergenceReport {
        cone,
        rows,
        verdict,
        radius,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport<T> {
    /// `"odd"` and `"even"`.
    pub tags: Vec<&'static str>,
    /// Limit of `z_n / r_n` along each tagged subsequence.
    pub candidates: Vec<Point<T>>,
    /// Distinct limits after merging candidates within [`CLUSTER_TOL`].
    pub clusters: Vec<Point<T>>,
    /// `(i, j, |c_i − c_j|)` over pairs of candidates.
    pub separations: Vec<(usize, usize, T)>,
    pub separation: T,
}

impl<T: Scalar> ClusterReport<T> {
    pub fn table(&self) -> Table {
        let mut table = Table::new(&["subsequence", "x", "y", "cluster", "separation"]);
        for (k, (tag, c)) in self.tags.iter().zip(&self.candidates).enumerate() {
            let cluster = self
                .clusters
                .iter()
                .position(|q| q.dist(*c) <= T::of(CLUSTER_TOL))
                .unwrap_or(k);
            table.push(vec![
                tag.to_string(),
                fmt_num(c.x),
                fmt_num(c.y),
                cluster.to_string(),
                fmt_num(self.separation),
            ]);
        }
        table
    }

    pub fn to_csv(&self) -> String {
        self.table().to_csv()
    }
}

/// Sequence `z_n = r_n·e^{iθ_odd}` for odd `n` and `r_n·e^{iθ_even}` for
/// even `n`, with `r_n` the ladder scales (`n` counted from 1). Each
/// subsequence of `z_n / r_n` has its own limit.
pub fn sequence_cluster_directions<T: Scalar>(
    theta_odd: T,
    theta_even: T,
    ladder: &ScaleLadder<T>,
) -> Result<ClusterReport<T>> {
    ladder.require_depth(4)?;
    let mut last_odd = None;
    let mut last_even = None;
    for (k, r) in ladder.scales().into_iter().enumerate() {
        let n = k + 1;
        let theta = if n % 2 == 1 { theta_odd } else { theta_even };
        let z = Point::polar(r, theta);
        let normalized = z * (T::one() / r);
        if n % 2 == 1 {
            last_odd = Some(normalized);
        } else {
            last_even = Some(normalized);
        }
    }
    let candidates = vec![
        last_odd.expect("depth ≥ 4 has odd terms"),
        last_even.expect("depth ≥ 4 has even terms"),
    ];
    let mut clusters: Vec<Point<T>> = Vec::new();
    for &c in &candidates {
        if !clusters.iter().any(|q| q.dist(c) <= T::of(CLUSTER_TOL)) {
            clusters.push(c);
        }
    }
    let separation = Point::polar(T::one(), theta_odd).dist(Point::polar(T::one(), theta_even));
    let separations = vec![(0, 1, candidates[0].dist(candidates[1]))];
    Ok(ClusterReport {
        tags: vec!["odd", "even"],
        candidates,
        clusters,
        separations,
        separation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::AngularSet;
    use crate::interval::IntervalSet;
    use std::f64::consts::PI;

    #[test]
    fn lattice_for_4096() {
        let l = Lattice::for_samples(4096);
        assert_eq!(l.levels, 26);
        assert_eq!(l.angular, 168);
    }

    #[test]
    fn half_line_blowup_is_exact() {
        let s = blowup_at_scale(&PlanarSet::RealHalfLine, Point::origin(), 0.1, 1.0, 4096).unwrap();
        assert_eq!(s.points[0], Point::origin());
        assert_eq!(s.len(), 27);
        let report =
            cone_convergence_report(&PlanarSet::RealHalfLine, Point::origin(), &ScaleLadder::default(), 1.0, 4096)
                .unwrap();
        assert!(report.rows.iter().all(|r| r.d_h == 0.0));
        assert_eq!(report.verdict, ConvergenceVerdict::Converges);
    }

    #[test]
    fn annulus_diverges() {
        let annulus = PlanarSet::RadialProduct {
            vertex: Point::origin(),
            radii: IntervalSet::new([(0.0, 0.0), (0.5, 1.0)]).unwrap(),
            arcs: AngularSet::full(),
        };
        let report =
            cone_convergence_report(&annulus, Point::origin(), &ScaleLadder::default(), 1.0, 4096).unwrap();
        assert_eq!(report.verdict, ConvergenceVerdict::Diverges);
        assert_eq!(report.rows.last().unwrap().d_h, 1.0);
    }

    #[test]
    fn clusters() {
        let l = ScaleLadder::default();
        let same = sequence_cluster_directions(0.4, 0.4, &l).unwrap();
        assert_eq!(same.clusters.len(), 1);
        assert_eq!(same.separation, 0.0);
        let two = sequence_cluster_directions(0.3, 0.9, &l).unwrap();
        assert_eq!(two.clusters.len(), 2);
        assert!((two.separation - 2.0 * 0.3f64.sin()).abs() < 1e-12);
        let anti = sequence_cluster_directions(0.0, PI, &l).unwrap();
        assert!((anti.separation - 2.0).abs() < 1e-15);
    }
}
