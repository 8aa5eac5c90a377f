//! Sphere defects `ε_a(t, Z, Y)` and the multi-scale strong-equivalence probe.

use std::fmt;

use crate::error::Result;
use crate::geometry::Point;
use crate::ladder::ScaleLadder;
use crate::report::{fmt_num, Table};
use crate::scalar::Scalar;
use crate::set_model::{sphere_sample, PlanarSet};

/// Ratio below which the finest rows count as equivalent.
pub const TOL_EQUIVALENT: f64 = 0.05;
/// Ratio above which the finest rows count as not equivalent.
pub const TOL_NOT_EQUIVALENT: f64 = 0.2;
/// Number of finest rows inspected by the verdict.
pub const VERDICT_WINDOW: usize = 3;

/// `sup_{z ∈ S_t^Z} dist(z, Y)` with its error bound. `empty_sphere`
/// records that `S_t^Z` was empty and the value 0 is the empty supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereDefect<T> {
    pub value: T,
    pub error_bound: T,
    pub empty_sphere: bool,
}

pub fn epsilon_one_sided<T: Scalar>(
    t: T,
    z: &PlanarSet<T>,
    y: &PlanarSet<T>,
    a: Point<T>,
    n: usize,
) -> Result<SphereDefect<T>> {
    let sample = sphere_sample(z, a, t, n)?;
    if sample.is_empty() {
        return Ok(SphereDefect {
            value: T::zero(),
            error_bound: T::zero(),
            empty_sphere: true,
        });
    }
    let mut value = T::zero();
    let mut dist_err = T::zero();
    for &p in &sample.points {
        let d = y.nearest_distance(p)?;
        value = value.max(d.value);
        dist_err = dist_err.max(d.error_bound);
    }
    Ok(SphereDefect {
        value,
        error_bound: sample.mesh + dist_err,
        empty_sphere: false,
    })
}

/// `ε_a(t) = ε_a(t, Z, Y) ∨ ε_a(t, Y, Z)`.
pub fn epsilon_sym<T: Scalar>(
    t: T,
    z: &PlanarSet<T>,
    y: &PlanarSet<T>,
    a: Point<T>,
    n: usize,
) -> Result<SphereDefect<T>> {
    let zy = epsilon_one_sided(t, z, y, a, n)?;
    let yz = epsilon_one_sided(t, y, z, a, n)?;
    Ok(combine(&zy, &yz))
}

fn combine<T: Scalar>(zy: &SphereDefect<T>, yz: &SphereDefect<T>) -> SphereDefect<T> {
    SphereDefect {
        value: zy.value.max(yz.value),
        error_bound: zy.error_bound.max(yz.error_bound),
        empty_sphere: zy.empty_sphere || yz.empty_sphere,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivalenceVerdict::Equivalent => "equivalent",
            EquivalenceVerdict::NotEquivalent => "not-equivalent",
            EquivalenceVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceRow<T> {
    pub t: T,
    pub eps_zy: T,
    pub eps_yz: T,
    pub eps: T,
    pub ratio: T,
    pub bound: T,
    pub empty_sphere: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<T> {
    /// Ordered by decreasing `t`.
    pub rows: Vec<EquivalenceRow<T>>,
    pub verdict: EquivalenceVerdict,
    /// Least-squares slope of `log(ε/t)` against `log t` over rows where `ε`
    /// exceeds its error bound; `None` with fewer than two such rows.
    pub slope: Option<T>,
}

impl<T: Scalar> EquivalenceReport<T> {
    pub fn table(&self) -> Table {
        let mut table = Table::new(&["t", "eps_zy", "eps_yz", "eps", "ratio", "bound", "empty_sphere_flag"]);
        for r in &self.rows {
            table.push(vec![
                fmt_num(r.t),
                fmt_num(r.eps_zy),
                fmt_num(r.eps_yz),
                fmt_num(r.eps),
                fmt_num(r.ratio),
                fmt_num(r.bound),
                u8::from(r.empty_sphere).to_string(),
            ]);
        }
        table
    }

    pub fn to_csv(&self) -> String {
        self.table().to_csv()
    }
}

/// Verdict over the finest rows: equivalent when every ratio is at most
/// [`TOL_EQUIVALENT`] and the relative error bound is below half of it;
/// not equivalent when every ratio minus its relative bound exceeds
/// [`TOL_NOT_EQUIVALENT`].
pub fn classify_rows<T: Scalar>(rows: &[EquivalenceRow<T>]) -> EquivalenceVerdict {
    let tail = &rows[rows.len().saturating_sub(VERDICT_WINDOW)..];
    let tol_eq = T::of(TOL_EQUIVALENT);
    let tol_ne = T::of(TOL_NOT_EQUIVALENT);
    let half = T::of(0.5);
    if tail.iter().all(|r| r.ratio <= tol_eq && r.bound / r.t < tol_eq * half) {
        EquivalenceVerdict::Equivalent
    } else if tail.iter().all(|r| r.ratio - r.bound / r.t > tol_ne) {
        EquivalenceVerdict::NotEquivalent
    } else {
        EquivalenceVerdict::Inconclusive
    }
}

fn fit_slope<T: Scalar>(rows: &[EquivalenceRow<T>]) -> Option<T> {
    let pts: Vec<(T, T)> = rows
        .iter()
        .filter(|r| r.eps > r.bound && r.ratio > T::zero())
        .map(|r| (r.t.ln(), r.ratio.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = T::of(pts.len() as f64);
    let mx = pts.iter().fold(T::zero(), |s, p| s + p.0) / n;
    let my = pts.iter().fold(T::zero(), |s, p| s + p.1) / n;
    let sxx = pts.iter().fold(T::zero(), |s, p| s + (p.0 - mx) * (p.0 - mx));
    let sxy = pts.iter().fold(T::zero(), |s, p| s + (p.0 - mx) * (p.1 - my));
    (sxx > T::zero()).then(|| sxy / sxx)
}

/// Rows of `ε_a(t)` over the ladder and the resulting verdict.
pub fn strong_equiv_probe<T: Scalar>(
    z: &PlanarSet<T>,
    y: &PlanarSet<T>,
    a: Point<T>,
    ladder: &ScaleLadder<T>,
    n: usize,
) -> Result<EquivalenceReport<T>> {
    ladder.require_depth(4)?;
    let mut rows = Vec::with_capacity(ladder.depth());
    for t in ladder.scales() {
        let zy = epsilon_one_sided(t, z, y, a, n)?;
        let yz = epsilon_one_sided(t, y, z, a, n)?;
        let both = combine(&zy, &yz);
        rows.push(EquivalenceRow {
            t,
            eps_zy: zy.value,
            eps_yz: yz.value,
            eps: both.value,
            ratio: both.value / t,
            bound: both.error_bound,
            empty_sphere: both.empty_sphere,
        });
    }
    let verdict = classify_rows(&rows);
    let slope = fit_slope(&rows);
    Ok(EquivalenceReport { rows, verdict, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::AngularSet;
    use crate::error::Error;
    use crate::set_model::Polygon;
    use std::f64::consts::FRAC_PI_2;

    fn o() -> Point<f64> {
        Point::origin()
    }

    fn square() -> PlanarSet<f64> {
        PlanarSet::Polygon(
            Polygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn plane_against_line() {
        let e = epsilon_one_sided(0.25, &PlanarSet::FullPlane, &PlanarSet::RealLine, o(), 64).unwrap();
        assert_eq!(e.value, 0.25);
        let back = epsilon_one_sided(0.25, &PlanarSet::RealLine, &PlanarSet::FullPlane, o(), 64).unwrap();
        assert_eq!(back.value, 0.0);
    }

    #[test]
    fn identical_sets_have_zero_defect() {
        let report = strong_equiv_probe(&square(), &square(), o(), &ScaleLadder::default(), 256).unwrap();
        assert!(report.rows.iter().all(|r| r.eps == 0.0));
        assert_eq!(report.verdict, EquivalenceVerdict::Equivalent);
        assert_eq!(report.slope, None);
    }

    #[test]
    fn symmetric_in_arguments() {
        let quarter = PlanarSet::cone(o(), AngularSet::from_ccw(0.0, FRAC_PI_2));
        let a = epsilon_sym(2f64.powi(-8), &square(), &quarter, o(), 512).unwrap();
        let b = epsilon_sym(2f64.powi(-8), &quarter, &square(), o(), 512).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn orthogonal_rays_are_not_equivalent() {
        let z = PlanarSet::cone(o(), AngularSet::point(0.0));
        let y = PlanarSet::cone(o(), AngularSet::point(FRAC_PI_2));
        let report = strong_equiv_probe(&z, &y, o(), &ScaleLadder::default(), 256).unwrap();
        assert_eq!(report.verdict, EquivalenceVerdict::NotEquivalent);
        for r in &report.rows {
            assert!((r.ratio - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_sphere_is_flagged() {
        let tiny = PlanarSet::Polygon(
            Polygon::new(vec![Point::new(0.0, 0.0), Point::new(0.1, 0.0), Point::new(0.0, 0.1)]).unwrap(),
        );
        let e = epsilon_one_sided(1.0, &tiny, &PlanarSet::FullPlane, o(), 64).unwrap();
        assert!(e.empty_sphere);
        assert_eq!(e.value, 0.0);
    }

    #[test]
    fn shallow_ladder_rejected() {
        let l = ScaleLadder::new(1.0, 0.5, 3).unwrap();
        assert!(matches!(
            strong_equiv_probe(&square(), &square(), o(), &l, 64),
            Err(Error::ShallowLadder { .. })
        ));
    }
}
