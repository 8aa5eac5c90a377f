//! Spheres `S_t = {z ∈ X : |z − a| = t}` as angular sets, and their samples.

use super::PlanarSet;
use crate::angular::AngularSet;
use crate::error::{Error, Result};
use crate::geometry::{angle_of, normalize_angle, Point, PointSample};
use crate::scalar::Scalar;

/// Directions `θ` with `a + r·e^{iθ} ∈ X`, plus the angular uncertainty of
/// that description (0 when exact).
#[derive(Debug, Clone, PartialEq)]
pub struct SphereArcs<T> {
    pub arcs: AngularSet<T>,
    pub angle_err: T,
}

impl<T: Scalar> SphereArcs<T> {
    fn exact(arcs: AngularSet<T>) -> Self {
        SphereArcs {
            arcs,
            angle_err: T::zero(),
        }
    }
}

/// Angular scan resolution for variants without a closed-form sphere.
const SCAN_STEPS: usize = 8192;

enum Boundary<T> {
    Segment(Point<T>, Point<T>),
    Ray(Point<T>, T),
    Line(Point<T>, T),
    Circle(Point<T>, T),
    Vertex(Point<T>),
}

/// Exact sphere for every analytic variant; the star region seen from a
/// point other than its center falls back to a fine angular scan.
pub fn sphere_arcs<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, r: T) -> SphereArcs<T> {
    if let Some(arcs) = x.cone_at(a) {
        return SphereArcs::exact(arcs);
    }
    match x {
        PlanarSet::FiniteSample { points, band } => {
            let hits = points
                .iter()
                .filter(|p| (p.dist(a) - r).abs() <= *band && **p != a)
                .filter_map(|&p| angle_of(p, a).ok())
                .map(|t| (t, T::zero()));
            SphereArcs {
                arcs: AngularSet::from_ccw_arcs(hits),
                angle_err: *band / r,
            }
        }
        PlanarSet::StarRegion(star) if star.center() == a => SphereArcs::exact(star.sphere_arcs(r)),
        PlanarSet::StarRegion(_) => scan(x, a, r),
        PlanarSet::RadialProduct {
            vertex,
            radii,
            arcs,
        } if *vertex == a => {
            let tol = T::tol() * (T::one() + r);
            let hit = radii
                .intervals()
                .iter()
                .any(|iv| r >= iv.lo - tol && r <= iv.hi + tol);
            SphereArcs::exact(if hit { arcs.clone() } else { AngularSet::empty() })
        }
        _ => SphereArcs::exact(by_crossings(x, a, r, &boundary_of(x))),
    }
}

fn boundary_of<T: Scalar>(x: &PlanarSet<T>) -> Vec<Boundary<T>> {
    let o = Point::origin();
    match x {
        PlanarSet::Polygon(poly) => poly.edges().map(|(p, q)| Boundary::Segment(p, q)).collect(),
        PlanarSet::ConeSet { vertex, arcs } => {
            let mut out: Vec<_> = arcs
                .endpoints()
                .into_iter()
                .map(|t| Boundary::Ray(*vertex, t))
                .collect();
            out.push(Boundary::Vertex(*vertex));
            out
        }
        PlanarSet::RadialProduct {
            vertex,
            radii,
            arcs,
        } => {
            let mut out = Vec::new();
            let ends = arcs.endpoints();
            for iv in radii.intervals() {
                for &t in &ends {
                    let u = Point::polar(T::one(), t);
                    let start = *vertex + u * iv.lo;
                    if iv.hi.is_finite() {
                        out.push(Boundary::Segment(start, *vertex + u * iv.hi));
                    } else {
                        out.push(Boundary::Ray(start, t));
                    }
                }
                if iv.lo > T::zero() {
                    out.push(Boundary::Circle(*vertex, iv.lo));
                }
                if iv.hi.is_finite() && iv.hi > T::zero() {
                    out.push(Boundary::Circle(*vertex, iv.hi));
                }
            }
            out.push(Boundary::Vertex(*vertex));
            out
        }
        PlanarSet::HalfPlane | PlanarSet::RealLine => vec![Boundary::Line(o, T::zero())],
        PlanarSet::RealHalfLine => vec![Boundary::Ray(o, T::zero()), Boundary::Vertex(o)],
        _ => Vec::new(),
    }
}

fn line_crossings<T: Scalar>(p: Point<T>, dir: T, a: Point<T>, r: T, s_min: T, s_max: T, out: &mut Vec<T>) {
    let u = Point::polar(T::one(), dir);
    let w = p - a;
    let b = u.dot(w);
    let c = w.norm_sq() - r * r;
    let mut disc = b * b - c;
    if disc < T::zero() {
        if disc > -T::tol() * r * r {
            disc = T::zero();
        } else {
            return;
        }
    }
    let sq = disc.sqrt();
    for s in [-b - sq, -b + sq] {
        if s >= s_min - T::tol() * (T::one() + s_max.abs().min(r)) && s <= s_max + T::tol() * (T::one() + r) {
            if let Ok(t) = angle_of(p + u * s, a) {
                out.push(t);
            }
        }
    }
}

fn crossings<T: Scalar>(b: &Boundary<T>, a: Point<T>, r: T, out: &mut Vec<T>) {
    match *b {
        Boundary::Segment(p, q) => {
            let len = p.dist(q);
            if let Ok(dir) = angle_of(q, p) {
                line_crossings(p, dir, a, r, T::zero(), len, out);
            }
        }
        Boundary::Ray(p, dir) => line_crossings(p, dir, a, r, T::zero(), T::infinity(), out),
        Boundary::Line(p, dir) => {
            line_crossings(p, dir, a, r, T::neg_infinity(), T::infinity(), out)
        }
        Boundary::Circle(c, rho) => {
            let d = c.dist(a);
            if d == T::zero() || d > r + rho || d < (r - rho).abs() {
                return;
            }
            let toward = (c.y - a.y).atan2(c.x - a.x);
            let cos_half = ((r * r + d * d - rho * rho) / (T::of(2.0) * r * d))
                .max(-T::one())
                .min(T::one());
            let half = cos_half.acos();
            out.push(normalize_angle(toward - half));
            out.push(normalize_angle(toward + half));
        }
        Boundary::Vertex(p) => {
            if (p.dist(a) - r).abs() <= T::tol() * (T::one() + r) {
                if let Ok(t) = angle_of(p, a) {
                    out.push(t);
                }
            }
        }
    }
}

/// Splits the circle at boundary crossings and classifies each piece by
/// its midpoint; isolated member crossings become degenerate arcs.
fn by_crossings<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, r: T, boundary: &[Boundary<T>]) -> AngularSet<T> {
    let mut cuts = Vec::new();
    for b in boundary {
        crossings(b, a, r, &mut cuts);
    }
    let on_circle = |t: T| a + Point::polar(r, t);
    if cuts.is_empty() {
        return if x.contains(on_circle(T::zero())) {
            AngularSet::full()
        } else {
            AngularSet::empty()
        };
    }
    cuts.sort_by(|p, q| p.partial_cmp(q).expect("finite angles"));
    cuts.dedup_by(|p, q| (*p - *q).abs() <= T::tol());
    let n = cuts.len();
    let mut pieces = Vec::new();
    for i in 0..n {
        let s = cuts[i];
        let e = if i + 1 < n { cuts[i + 1] } else { cuts[0] + T::two_pi() };
        if x.contains(on_circle((s + e) / T::of(2.0))) {
            pieces.push((s, e - s));
        } else if x.contains(on_circle(s)) {
            pieces.push((s, T::zero()));
        }
    }
    AngularSet::from_ccw_arcs(pieces)
}

fn scan<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, r: T) -> SphereArcs<T> {
    let step = T::two_pi() / T::of(SCAN_STEPS as f64);
    let hits = (0..SCAN_STEPS).filter_map(|k| {
        let t = step * T::of(k as f64);
        x.contains(a + Point::polar(r, t)).then_some((t, T::zero()))
    });
    SphereArcs {
        arcs: AngularSet::from_ccw_arcs_with_tol(hits, step * T::of(1.5)),
        angle_err: step,
    }
}

/// Points of `center + radius·e^{iθ}` for `θ` spread over `arcs` with
/// angular spacing at most `spacing`. Each contiguous arc is split into
/// equal steps anchored at its own start.
pub fn sample_arcs<T: Scalar>(arcs: &AngularSet<T>, center: Point<T>, radius: T, spacing: T) -> Vec<Point<T>> {
    let mut out = Vec::new();
    let slack = T::of(1e-9);
    if arcs.is_full() {
        let k = ((T::two_pi() / spacing) - slack).ceil().max(T::one());
        let n = k.to_usize().unwrap_or(1);
        for j in 0..n {
            out.push(center + Point::polar(radius, T::two_pi() * T::of(j as f64) / k));
        }
        return out;
    }
    for (s, e) in arcs.circular_arcs() {
        let w = e - s;
        let k = (w / spacing - slack).ceil().max(T::zero());
        let n = k.to_usize().unwrap_or(0);
        if n == 0 {
            out.push(center + Point::polar(radius, s));
            continue;
        }
        for j in 0..=n {
            out.push(center + Point::polar(radius, s + w * T::of(j as f64) / k));
        }
    }
    out
}

/// Sample of the sphere `S_t^X` about `a`. Analytic variants give points of
/// `X` with mesh `t·2π/n`; point clouds return every point in the band
/// `| |p − a| − t | ≤ band`. An empty sphere yields an empty sample.
pub fn sphere_sample<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, t: T, n: usize) -> Result<PointSample<T>> {
    if !(t > T::zero()) || n == 0 {
        return Err(Error::Degenerate(format!("sphere needs t > 0 and n ≥ 1 (t = {t}, n = {n})")));
    }
    if let PlanarSet::FiniteSample { points, band } = x {
        let hits: Vec<_> = points
            .iter()
            .copied()
            .filter(|p| *p != a && (p.dist(a) - t).abs() <= *band)
            .collect();
        if hits.is_empty() {
            return Err(Error::UnsupportedVariant(format!(
                "no sample point within band {band} of the sphere of radius {t}"
            )));
        }
        return Ok(PointSample::new(hits, *band));
    }
    let spacing = T::two_pi() / T::of(n as f64);
    let sa = sphere_arcs(x, a, t);
    let points = sample_arcs(&sa.arcs, a, t, spacing);
    Ok(PointSample::new(points, t * (spacing + sa.angle_err)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalSet;
    use crate::set_model::Polygon;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    #[test]
    fn full_plane_four_points() {
        let s = sphere_sample(&PlanarSet::FullPlane, p(0.0, 0.0), 1.0, 4).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.mesh <= FRAC_PI_2 + 1e-15);
        for q in &s.points {
            assert!((q.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn half_line_sphere_is_one_point() {
        let s = sphere_sample(&PlanarSet::RealHalfLine, p(0.0, 0.0), 0.5, 16).unwrap();
        assert_eq!(s.points, vec![p(0.5, 0.0)]);
    }

    #[test]
    fn line_sphere_off_origin() {
        let arcs = sphere_arcs(&PlanarSet::RealLine, p(1.0, 0.0), 2.0).arcs;
        assert!(arcs.contains(0.0));
        assert!(arcs.contains(PI));
        assert!((arcs.measure()).abs() < 1e-12);
    }

    #[test]
    fn half_plane_sphere_above_axis() {
        let arcs = sphere_arcs(&PlanarSet::HalfPlane, p(0.0, 0.5), 1.0).arcs;
        // sin θ ≥ −1/2
        assert!(arcs.contains(0.0));
        assert!(arcs.contains(7.0 * PI / 6.0 - 1e-9));
        assert!(!arcs.contains(1.5 * PI));
        assert!((arcs.measure() - (2.0 * PI - 2.0 * PI / 3.0)).abs() < 1e-9);
    }

    #[test]
    fn polygon_sphere_from_interior_point() {
        let sq = PlanarSet::Polygon(
            Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap(),
        );
        assert!(sphere_arcs(&sq, p(0.5, 0.5), 0.3).arcs.is_full());
        let corner = sphere_arcs(&sq, p(0.0, 0.0), 0.5).arcs;
        assert_eq!(corner.arcs().len(), 1);
        assert!(corner.arcs()[0].lo.abs() < 1e-12);
        assert!((corner.arcs()[0].hi - FRAC_PI_2).abs() < 1e-12);
        assert!(sphere_arcs(&sq, p(0.0, 0.0), 2.0).arcs.is_empty());
    }

    #[test]
    fn radial_product_off_vertex() {
        let annulus = PlanarSet::RadialProduct {
            vertex: p(0.0, 0.0),
            radii: IntervalSet::new([(0.5, 1.0)]).unwrap(),
            arcs: AngularSet::full(),
        };
        let arcs = sphere_arcs(&annulus, p(0.75, 0.0), 0.1).arcs;
        assert!(arcs.is_full());
        let arcs = sphere_arcs(&annulus, p(0.75, 0.0), 0.5).arcs;
        assert!(!arcs.contains(0.0));
        assert!(arcs.contains(FRAC_PI_2));
    }

    #[test]
    fn finite_sample_band() {
        let cloud = PlanarSet::finite(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 2.0)], 0.05);
        let s = sphere_sample(&cloud, p(0.0, 0.0), 1.02, 8).unwrap();
        assert_eq!(s.points, vec![p(1.0, 0.0)]);
        assert!(matches!(
            sphere_sample(&cloud, p(0.0, 0.0), 1.5, 8),
            Err(Error::UnsupportedVariant(_))
        ));
    }

    #[test]
    fn arcs_sample_includes_endpoints() {
        let arcs = AngularSet::from_ccw(0.2, 0.5);
        let pts = sample_arcs(&arcs, p(0.0, 0.0), 1.0, 0.1);
        assert_eq!(pts.len(), 6);
        assert!((pts[5].y.atan2(pts[5].x) - 0.7).abs() < 1e-15);
    }
}
