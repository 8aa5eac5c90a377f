//! Direction sets, the smallest closed cone `Con_a(X)`, the smallest closed
//! convex cone `Conv_a(X)` and exact distances to cones.

use std::fmt;

use crate::angular::AngularSet;
use crate::error::{Error, Result};
use crate::geometry::{angle_of, dist_to_ray, Point, Ray};
use crate::ladder::ScaleLadder;
use crate::scalar::Scalar;
use crate::set_model::{sphere_sample, PlanarSet, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeClass {
    Point,
    Ray,
    /// Single arc of width `< π`.
    Sector,
    HalfPlane,
    Line,
    Plane,
    GeneralUnion,
}

impl fmt::Display for ConeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeClass::Point => "point",
            ConeClass::Ray => "ray",
            ConeClass::Sector => "sector",
            ConeClass::HalfPlane => "half-plane",
            ConeClass::Line => "line",
            ConeClass::Plane => "plane",
            ConeClass::GeneralUnion => "general-union",
        })
    }
}

/// Width tolerance for telling sectors, half-planes and lines apart.
fn class_tol<T: Scalar>() -> T {
    T::tol().sqrt() * T::of(1e-3)
}

fn antipodal<T: Scalar>(s: T, t: T) -> bool {
    let d = (t - s).abs();
    (d - T::PI()).abs() <= class_tol()
}

/// Class of the closed cone with direction set `arcs`.
pub fn classify<T: Scalar>(arcs: &AngularSet<T>) -> ConeClass {
    if arcs.is_empty() {
        return ConeClass::Point;
    }
    if arcs.is_full() {
        return ConeClass::Plane;
    }
    let tol = class_tol::<T>();
    let pieces = arcs.circular_arcs();
    match pieces.as_slice() {
        [(s, e)] => {
            let w = *e - *s;
            if w <= tol {
                ConeClass::Ray
            } else if w < T::PI() - tol {
                ConeClass::Sector
            } else if w <= T::PI() + tol {
                ConeClass::HalfPlane
            } else {
                ConeClass::GeneralUnion
            }
        }
        [(s1, e1), (s2, e2)] if *e1 - *s1 <= tol && *e2 - *s2 <= tol && antipodal(*s1, *s2) => {
            ConeClass::Line
        }
        _ => ConeClass::GeneralUnion,
    }
}

/// Closed cone `{vertex + r·e^{iθ} : r ≥ 0, θ ∈ arcs}` with its class.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeDescriptor<T> {
    pub vertex: Point<T>,
    pub arcs: AngularSet<T>,
    pub class: ConeClass,
}

impl<T: Scalar> ConeDescriptor<T> {
    /// Fails when `class` does not match the arcs.
    pub fn new(vertex: Point<T>, arcs: AngularSet<T>, class: ConeClass) -> Result<Self> {
        let actual = classify(&arcs);
        if actual != class {
            return Err(Error::Invariant(format!(
                "cone declared {class} but its arcs form a {actual}"
            )));
        }
        Ok(ConeDescriptor { vertex, arcs, class })
    }

    pub fn from_arcs(vertex: Point<T>, arcs: AngularSet<T>) -> Self {
        let class = classify(&arcs);
        ConeDescriptor { vertex, arcs, class }
    }

    pub fn point(vertex: Point<T>) -> Self {
        Self::from_arcs(vertex, AngularSet::empty())
    }

    pub fn to_set(&self) -> PlanarSet<T> {
        PlanarSet::cone(self.vertex, self.arcs.clone())
    }

    pub fn distance(&self, z: Point<T>) -> T {
        cone_distance(self, z)
    }
}

impl<T: Scalar> From<ConeDescriptor<T>> for PlanarSet<T> {
    fn from(c: ConeDescriptor<T>) -> Self {
        PlanarSet::cone(c.vertex, c.arcs)
    }
}

/// Exact distance from `z` to a cone.
pub fn cone_distance<T: Scalar>(c: &ConeDescriptor<T>, z: Point<T>) -> T {
    cone_distance_to_arcs(c.vertex, &c.arcs, z)
}

pub fn cone_distance_to_arcs<T: Scalar>(vertex: Point<T>, arcs: &AngularSet<T>, z: Point<T>) -> T {
    if arcs.is_full() {
        return T::zero();
    }
    let r = z.dist(vertex);
    if arcs.is_empty() {
        return r;
    }
    if r <= T::tol() {
        return T::zero();
    }
    match angle_of(z, vertex) {
        Ok(t) if arcs.contains(t) => T::zero(),
        _ => arcs
            .endpoints()
            .into_iter()
            .map(|t| dist_to_ray(z, &Ray::new(vertex, t)))
            .fold(r, T::min),
    }
}

/// Directions of the closed segment `[p, q]` seen from `a`.
fn segment_directions<T: Scalar>(a: Point<T>, p: Point<T>, q: Point<T>) -> AngularSet<T> {
    let u = p - a;
    let v = q - a;
    let tol = T::tol();
    let at_p = u.norm() <= tol;
    let at_q = v.norm() <= tol;
    let single = |w: Point<T>| AngularSet::point(w.y.atan2(w.x));
    if at_p && at_q {
        return AngularSet::empty();
    }
    if at_p {
        return single(v);
    }
    if at_q {
        return single(u);
    }
    let cr = u.cross(v);
    if cr.abs() <= tol * u.norm() * v.norm() {
        // collinear with a: the segment is seen along one or two directions
        return single(u).union(&single(v));
    }
    let (tp, tq) = (u.y.atan2(u.x), v.y.atan2(v.x));
    if cr > T::zero() {
        AngularSet::ccw_between(tp, tq)
    } else {
        AngularSet::ccw_between(tq, tp)
    }
}

/// Exact direction set of a polygon from one of its points: the full circle
/// from the interior, otherwise the union of the edges' shadows.
fn polygon_directions<T: Scalar>(poly: &Polygon<T>, a: Point<T>) -> AngularSet<T> {
    if poly.boundary_distance(a) > T::tol() * (T::one() + a.norm()) {
        return AngularSet::full();
    }
    poly.edges()
        .map(|(p, q)| segment_directions(a, p, q))
        .fold(AngularSet::empty(), |acc, s| acc.union(&s))
}

/// Exact closed direction set, for the variants that admit one.
fn exact_directions<T: Scalar>(x: &PlanarSet<T>, a: Point<T>) -> Option<AngularSet<T>> {
    if let Some(arcs) = x.cone_at(a) {
        return Some(arcs);
    }
    match x {
        PlanarSet::StarRegion(star) if star.center() == a => Some(star.support()),
        PlanarSet::RadialProduct {
            vertex,
            radii,
            arcs,
        } if *vertex == a => {
            let reaches_out = radii.intervals().iter().any(|iv| iv.hi > T::zero());
            Some(if reaches_out { arcs.clone() } else { AngularSet::empty() })
        }
        PlanarSet::FiniteSample { points, .. } => Some(AngularSet::from_ccw_arcs_with_tol(
            points
                .iter()
                .filter(|p| p.dist(a) > T::tol())
                .filter_map(|&p| angle_of(p, a).ok())
                .map(|t| (t, T::zero())),
            T::zero(),
        )),
        PlanarSet::Polygon(poly) => Some(polygon_directions(poly, a)),
        _ => None,
    }
}

const SUPPORT_SAMPLES: usize = 1024;

/// Directions of sphere samples over every scale in `window`, padded by
/// `pad` plus the per-scale angular mesh and closed across gaps smaller
/// than twice the padding. Variants with an exact direction set return it
/// unpadded.
pub fn angular_support<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    window: &ScaleLadder<T>,
    pad: T,
) -> Result<AngularSet<T>> {
    let arcs = match exact_directions(x, a) {
        Some(arcs) => arcs,
        None => sampled_support(x, a, window, pad)?,
    };
    if arcs.is_empty() {
        return Err(Error::Degenerate("the set has no point other than the marked point".into()));
    }
    Ok(arcs)
}

fn sampled_support<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    window: &ScaleLadder<T>,
    pad: T,
) -> Result<AngularSet<T>> {
    let mut out = AngularSet::empty();
    for t in window.scales() {
        let sample = match sphere_sample(x, a, t, SUPPORT_SAMPLES) {
            Ok(s) => s,
            Err(Error::UnsupportedVariant(_)) => continue,
            Err(e) => return Err(e),
        };
        if sample.is_empty() {
            continue;
        }
        let angle_mesh = (sample.mesh / t).max(T::of(1e-9));
        let p = angle_mesh + pad;
        let dirs = AngularSet::from_ccw_arcs(
            sample
                .points
                .iter()
                .filter_map(|&z| angle_of(z, a).ok())
                .map(|th| (th - p, p + p)),
        );
        out = out.union(&dirs).close_gaps(p + p);
    }
    Ok(out)
}

/// Scales used when the direction set has to be sampled: every octave from
/// the extent of the set (or `2^10` when unbounded) down 48 octaves.
fn global_window<T: Scalar>(x: &PlanarSet<T>, a: Point<T>) -> ScaleLadder<T> {
    let top = x.extent_from(a).unwrap_or_else(|| T::of(1024.0));
    ScaleLadder::new(top.max(T::tol()), T::of(0.5), 48).expect("valid ladder")
}

fn require_member<T: Scalar>(x: &PlanarSet<T>, a: Point<T>) -> Result<()> {
    if x.contains(a) {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "marked point ({}, {}) is not a member of the set",
            a.x, a.y
        )))
    }
}

/// Smallest closed cone with vertex `a` containing `X`: the cone over the
/// closure of all directions `arg(z − a)`, `z ∈ X \ {a}`. `X = {a}` gives
/// the point cone.
pub fn con_a<T: Scalar>(x: &PlanarSet<T>, a: Point<T>) -> Result<ConeDescriptor<T>> {
    require_member(x, a)?;
    match angular_support(x, a, &global_window(x, a), T::zero()) {
        Ok(arcs) => Ok(ConeDescriptor::from_arcs(a, arcs)),
        Err(Error::Degenerate(_)) => Ok(ConeDescriptor::point(a)),
        Err(e) => Err(e),
    }
}

/// Convex hull cone of a direction set.
pub fn convex_hull_arcs<T: Scalar>(arcs: &AngularSet<T>) -> AngularSet<T> {
    let Some((start, width)) = arcs.enclosing_arc() else {
        return AngularSet::empty();
    };
    let tol = class_tol::<T>();
    let pieces = arcs.circular_arcs();
    if width > T::PI() + tol {
        return AngularSet::full();
    }
    if width < T::PI() - tol {
        if pieces.len() == 1 {
            return arcs.clone();
        }
        return AngularSet::ccw_between(start, start + width);
    }
    if classify(arcs) == ConeClass::Line {
        return arcs.clone();
    }
    if pieces.len() == 1 {
        return arcs.clone();
    }
    AngularSet::ccw_between(start, start + width)
}

/// Smallest closed convex cone with vertex `a` containing `X`.
pub fn conv_a<T: Scalar>(x: &PlanarSet<T>, a: Point<T>) -> Result<ConeDescriptor<T>> {
    let con = con_a(x, a)?;
    Ok(ConeDescriptor::from_arcs(a, convex_hull_arcs(&con.arcs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalSet;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn square() -> PlanarSet<f64> {
        PlanarSet::Polygon(Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap())
    }

    #[test]
    fn classification() {
        assert_eq!(classify::<f64>(&AngularSet::empty()), ConeClass::Point);
        assert_eq!(classify(&AngularSet::point(1.0)), ConeClass::Ray);
        assert_eq!(classify(&AngularSet::from_ccw(6.0, 1.0)), ConeClass::Sector);
        assert_eq!(classify(&AngularSet::from_ccw(1.0, PI)), ConeClass::HalfPlane);
        assert_eq!(classify(&AngularSet::from_ccw_arcs([(0.5, 0.0), (0.5 + PI, 0.0)])), ConeClass::Line);
        assert_eq!(classify::<f64>(&AngularSet::full()), ConeClass::Plane);
        assert_eq!(classify(&AngularSet::from_ccw(0.0, 4.0)), ConeClass::GeneralUnion);
        assert!(ConeDescriptor::new(p(0.0, 0.0), AngularSet::point(0.0), ConeClass::Sector).is_err());
    }

    #[test]
    fn cone_of_cones_and_fixtures() {
        let sector = PlanarSet::cone(p(0.0, 0.0), AngularSet::from_ccw(0.3, 0.9));
        let c = con_a(&sector, p(0.0, 0.0)).unwrap();
        assert_eq!(c.arcs, AngularSet::from_ccw(0.3, 0.9));
        assert_eq!(c.class, ConeClass::Sector);
        assert_eq!(con_a(&PlanarSet::RealHalfLine, p(0.0, 0.0)).unwrap().class, ConeClass::Ray);
        assert_eq!(con_a(&PlanarSet::<f64>::FullPlane, p(0.0, 0.0)).unwrap().class, ConeClass::Plane);
    }

    #[test]
    fn square_corner_is_quarter() {
        let c = con_a(&square(), p(0.0, 0.0)).unwrap();
        assert_eq!(c.arcs.arcs().len(), 1);
        assert_eq!(c.arcs.arcs()[0].lo, 0.0);
        assert_eq!(c.arcs.arcs()[0].hi, FRAC_PI_2);
        assert_eq!(conv_a(&square(), p(0.0, 0.0)).unwrap().arcs, c.arcs);
        assert!(con_a(&square(), p(0.5, 0.5)).unwrap().arcs.is_full());
        let edge = con_a(&square(), p(0.5, 0.0)).unwrap();
        assert_eq!(edge.class, ConeClass::HalfPlane);
    }

    #[test]
    fn segment_gives_a_ray() {
        let seg = PlanarSet::RadialProduct {
            vertex: p(0.0, 0.0),
            radii: IntervalSet::new([(0.0, 1.0)]).unwrap(),
            arcs: AngularSet::point(0.7),
        };
        let c = con_a(&seg, p(0.0, 0.0)).unwrap();
        assert_eq!(c.class, ConeClass::Ray);
        assert_eq!(c.arcs, AngularSet::point(0.7));
    }

    #[test]
    fn point_set_is_point_cone() {
        let single = PlanarSet::finite(vec![p(1.0, 1.0)], 0.0);
        assert_eq!(con_a(&single, p(1.0, 1.0)).unwrap().class, ConeClass::Point);
        assert!(matches!(
            angular_support(&single, p(1.0, 1.0), &ScaleLadder::default(), 0.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn convex_cones_of_point_clouds() {
        let three = PlanarSet::finite(vec![p(0.0, 0.0), p(1.0, 0.0), p(-1.0, 0.0), p(0.0, 1.0)], 0.0);
        let c = conv_a(&three, p(0.0, 0.0)).unwrap();
        assert_eq!(c.class, ConeClass::HalfPlane);
        assert!(c.arcs.contains(FRAC_PI_2));
        assert!(!c.arcs.contains(1.5 * PI));
        let roots: Vec<_> = (0..3).map(|k| Point::polar(1.0, 2.0 * PI * k as f64 / 3.0)).chain([p(0.0, 0.0)]).collect();
        assert_eq!(conv_a(&PlanarSet::finite(roots, 0.0), p(0.0, 0.0)).unwrap().class, ConeClass::Plane);
        let pair = PlanarSet::finite(vec![p(0.0, 0.0), p(1.0, 1.0), p(-2.0, -2.0)], 0.0);
        assert_eq!(conv_a(&pair, p(0.0, 0.0)).unwrap().class, ConeClass::Line);
    }

    #[test]
    fn distances() {
        let quarter = ConeDescriptor::from_arcs(p(0.0, 0.0), AngularSet::from_ccw(0.0, FRAC_PI_2));
        assert_eq!(cone_distance(&quarter, p(0.2, 0.3)), 0.0);
        assert!((cone_distance(&quarter, p(-1.0, -1.0)) - SQRT_2).abs() < 1e-15);
        let ray = ConeDescriptor::from_arcs(p(0.0, 0.0), AngularSet::point(0.0));
        assert_eq!(cone_distance(&ray, p(0.0, 1.0)), 1.0);
        assert_eq!(cone_distance(&ConeDescriptor::point(p(0.0, 0.0)), p(3.0, 4.0)), 5.0);
    }

    #[test]
    fn off_vertex_cone_is_sampled() {
        let ray = PlanarSet::cone(p(1.0, 0.0), AngularSet::point(FRAC_PI_2));
        let c = con_a(&ray, p(0.0, 0.0));
        // the origin is not on this ray
        assert!(c.is_err());
        let c = con_a(&ray, p(1.0, 0.5)).unwrap();
        assert!(c.arcs.contains(FRAC_PI_2));
        assert!(c.arcs.contains(1.5 * PI));
        assert!(!c.arcs.contains(0.0));
    }
}
