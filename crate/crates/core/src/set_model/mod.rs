//! Planar sets with a marked point: membership, spheres `S_t`, nearest
//! distance, a sampled starlikeness verifier and the JSON set-spec format.

mod polygon;
mod sphere;
mod spec;
mod star;
mod starlike;

pub use polygon::{convex_hull, segments_intersect, Polygon};
pub use sphere::{sample_arcs, sphere_arcs, sphere_sample, SphereArcs};
pub use spec::{parse_line_spec, parse_set_spec, serialize_line_spec, serialize_set_spec, LineSpec};
pub use star::StarRegion;
pub use starlike::{starlike_check, StarlikeCheck};

use crate::angular::AngularSet;
use crate::cone::cone_distance_to_arcs;
use crate::error::{Error, Result};
use crate::geometry::{angle_of, dist_to_ray, Estimate, Point, Ray, RigidMotion};
use crate::interval::IntervalSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum PlanarSet<T> {
    /// Finite point cloud; spheres are read off a tolerance band of width `band`.
    FiniteSample { points: Vec<Point<T>>, band: T },
    Polygon(Polygon<T>),
    StarRegion(StarRegion<T>),
    /// Closed cone `{vertex + r·e^{iθ} : r ≥ 0, θ ∈ arcs}`.
    ConeSet { vertex: Point<T>, arcs: AngularSet<T> },
    /// `{vertex + r·e^{iθ} : r ∈ radii, θ ∈ arcs}`.
    RadialProduct {
        vertex: Point<T>,
        radii: IntervalSet<T>,
        arcs: AngularSet<T>,
    },
    /// `{y ≥ 0}`.
    HalfPlane,
    FullPlane,
    /// The x-axis.
    RealLine,
    /// `{(x, 0) : x ≥ 0}`.
    RealHalfLine,
}

/// A set together with its marked point `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedSet<T> {
    pub set: PlanarSet<T>,
    pub marked: Point<T>,
}

impl<T: Scalar> MarkedSet<T> {
    /// Checks that the marked point belongs to the set.
    pub fn new(set: PlanarSet<T>, marked: Point<T>) -> Result<Self> {
        if !marked.is_finite() {
            return Err(Error::Invariant("marked point is not finite".into()));
        }
        if !set.contains(marked) {
            return Err(Error::Invariant(format!(
                "marked point ({}, {}) is not a member of the set",
                marked.x, marked.y
            )));
        }
        Ok(MarkedSet { set, marked })
    }

    pub fn transformed(&self, motion: &RigidMotion<T>) -> Self {
        MarkedSet {
            set: self.set.transformed(motion),
            marked: motion.apply(self.marked),
        }
    }
}

fn loose_tol<T: Scalar>(z: Point<T>) -> T {
    T::tol() * (T::one() + z.norm())
}

impl<T: Scalar> PlanarSet<T> {
    pub fn cone(vertex: Point<T>, arcs: AngularSet<T>) -> Self {
        PlanarSet::ConeSet { vertex, arcs }
    }

    pub fn finite(points: Vec<Point<T>>, band: T) -> Self {
        PlanarSet::FiniteSample { points, band }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            PlanarSet::FiniteSample { .. } => "finite_sample",
            PlanarSet::Polygon(_) => "polygon",
            PlanarSet::StarRegion(_) => "star_region",
            PlanarSet::ConeSet { .. } => "cone",
            PlanarSet::RadialProduct { .. } => "radial_product",
            PlanarSet::HalfPlane => "half_plane",
            PlanarSet::FullPlane => "full_plane",
            PlanarSet::RealLine => "real_line",
            PlanarSet::RealHalfLine => "real_half_line",
        }
    }

    /// Set membership. Exact up to rounding tolerance for the analytic
    /// variants; for point clouds, equality within `1e−12`.
    pub fn contains(&self, z: Point<T>) -> bool {
        match self {
            PlanarSet::FiniteSample { points, .. } => {
                points.iter().any(|&p| p.dist(z) <= T::tol())
            }
            PlanarSet::Polygon(poly) => poly.contains(z),
            PlanarSet::StarRegion(star) => star.contains(z),
            PlanarSet::ConeSet { vertex, arcs } => {
                z.dist(*vertex) <= T::tol() || angle_of(z, *vertex).map_or(true, |t| arcs.contains(t))
            }
            PlanarSet::RadialProduct {
                vertex,
                radii,
                arcs,
            } => {
                let r = z.dist(*vertex);
                let tol = loose_tol(z - *vertex);
                let radial_ok = radii
                    .intervals()
                    .iter()
                    .any(|iv| r >= iv.lo - tol && r <= iv.hi + tol);
                if r <= tol && radii.contains(T::zero()) {
                    true
                } else {
                    radial_ok && angle_of(z, *vertex).is_ok_and(|t| arcs.contains(t))
                }
            }
            PlanarSet::HalfPlane => z.y >= -loose_tol(z),
            PlanarSet::FullPlane => true,
            PlanarSet::RealLine => z.y.abs() <= loose_tol(z),
            PlanarSet::RealHalfLine => z.y.abs() <= loose_tol(z) && z.x >= -loose_tol(z),
        }
    }

    /// Distance to the set with an error bound; exact (bound 0) for every
    /// variant except the interpolated star region.
    pub fn nearest_distance(&self, z: Point<T>) -> Result<Estimate<T>> {
        Ok(match self {
            PlanarSet::FiniteSample { points, .. } => {
                if points.is_empty() {
                    return Err(Error::EmptySet);
                }
                Estimate::exact(points.iter().map(|&p| p.dist(z)).fold(T::infinity(), T::min))
            }
            PlanarSet::Polygon(poly) => Estimate::exact(poly.distance(z)),
            PlanarSet::StarRegion(star) => star.distance(z),
            PlanarSet::ConeSet { vertex, arcs } => {
                Estimate::exact(cone_distance_to_arcs(*vertex, arcs, z))
            }
            PlanarSet::RadialProduct {
                vertex,
                radii,
                arcs,
            } => {
                if radii.is_empty() || (arcs.is_empty() && !radii.contains(T::zero())) {
                    return Err(Error::EmptySet);
                }
                Estimate::exact(radial_product_distance(*vertex, radii, arcs, z))
            }
            PlanarSet::HalfPlane => Estimate::exact((-z.y).max(T::zero())),
            PlanarSet::FullPlane => Estimate::exact(T::zero()),
            PlanarSet::RealLine => Estimate::exact(z.y.abs()),
            PlanarSet::RealHalfLine => {
                Estimate::exact(dist_to_ray(z, &Ray::new(Point::origin(), T::zero())))
            }
        })
    }

    /// When the set is a closed cone with vertex `a`, its direction set.
    pub fn cone_at(&self, a: Point<T>) -> Option<AngularSet<T>> {
        let on_axis = a.y.abs() <= loose_tol(a);
        match self {
            PlanarSet::ConeSet { vertex, arcs } if *vertex == a => Some(arcs.clone()),
            PlanarSet::RadialProduct {
                vertex,
                radii,
                arcs,
            } if *vertex == a
                && radii.intervals().len() == 1
                && radii.intervals()[0].lo == T::zero()
                && radii.intervals()[0].hi == T::infinity() =>
            {
                Some(arcs.clone())
            }
            PlanarSet::FullPlane => Some(AngularSet::full()),
            PlanarSet::HalfPlane if on_axis => Some(AngularSet::from_ccw(T::zero(), T::PI())),
            PlanarSet::RealLine if on_axis => {
                Some(AngularSet::from_ccw_arcs([(T::zero(), T::zero()), (T::PI(), T::zero())]))
            }
            PlanarSet::RealHalfLine if a.norm() <= loose_tol(a) => Some(AngularSet::point(T::zero())),
            _ => None,
        }
    }

    /// Sup of `|z − a|` over the set, `None` when unbounded.
    pub fn extent_from(&self, a: Point<T>) -> Option<T> {
        let far = |it: &mut dyn Iterator<Item = Point<T>>| it.map(|p| p.dist(a)).fold(T::zero(), T::max);
        match self {
            PlanarSet::FiniteSample { points, .. } => Some(far(&mut points.iter().copied())),
            PlanarSet::Polygon(poly) => Some(far(&mut poly.vertices().iter().copied())),
            PlanarSet::StarRegion(star) => Some(star.center().dist(a) + star.max_radius()),
            PlanarSet::ConeSet { vertex, arcs } => {
                if arcs.is_empty() {
                    Some(vertex.dist(a))
                } else {
                    None
                }
            }
            PlanarSet::RadialProduct {
                vertex,
                radii,
                arcs,
            } => {
                let top = radii.intervals().last().map_or(T::zero(), |iv| iv.hi);
                if arcs.is_empty() {
                    Some(vertex.dist(a))
                } else if top.is_finite() {
                    Some(vertex.dist(a) + top)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Image of the set under a rigid motion. The axis-aligned fixtures
    /// become the equivalent cones.
    pub fn transformed(&self, m: &RigidMotion<T>) -> Self {
        let rot = m.rotation;
        let origin = m.apply(Point::origin());
        match self {
            PlanarSet::FiniteSample { points, band } => PlanarSet::FiniteSample {
                points: points.iter().map(|&p| m.apply(p)).collect(),
                band: *band,
            },
            PlanarSet::Polygon(poly) => PlanarSet::Polygon(poly.map(|p| m.apply(p))),
            PlanarSet::StarRegion(star) => {
                PlanarSet::StarRegion(star.transformed(rot, m.apply(star.center())))
            }
            PlanarSet::ConeSet { vertex, arcs } => PlanarSet::ConeSet {
                vertex: m.apply(*vertex),
                arcs: arcs.rotated(rot),
            },
            PlanarSet::RadialProduct {
                vertex,
                radii,
                arcs,
            } => PlanarSet::RadialProduct {
                vertex: m.apply(*vertex),
                radii: radii.clone(),
                arcs: arcs.rotated(rot),
            },
            PlanarSet::FullPlane => PlanarSet::FullPlane,
            PlanarSet::HalfPlane => PlanarSet::cone(origin, AngularSet::from_ccw(rot, T::PI())),
            PlanarSet::RealLine => PlanarSet::cone(
                origin,
                AngularSet::from_ccw_arcs([(rot, T::zero()), (rot + T::PI(), T::zero())]),
            ),
            PlanarSet::RealHalfLine => PlanarSet::cone(origin, AngularSet::point(rot)),
        }
    }
}

/// Exact distance to a radial product. Each (radius interval × arc) piece
/// is a polar rectangle whose nearest point to `z` lies on a radial edge
/// unless `z`'s direction is inside the arc.
fn radial_product_distance<T: Scalar>(
    vertex: Point<T>,
    radii: &IntervalSet<T>,
    arcs: &AngularSet<T>,
    z: Point<T>,
) -> T {
    let d = z - vertex;
    let r = d.norm();
    let mut best = T::infinity();
    if radii.contains(T::zero()) {
        best = r;
    }
    if arcs.is_empty() {
        return best;
    }
    let inside_dir = r > T::zero() && angle_of(z, vertex).is_ok_and(|t| arcs.contains(t));
    let edges = arcs.endpoints();
    for iv in radii.intervals() {
        if inside_dir || arcs.is_full() {
            let radial = if r < iv.lo {
                iv.lo - r
            } else if r > iv.hi {
                r - iv.hi
            } else {
                T::zero()
            };
            best = best.min(radial);
        }
        for &theta in &edges {
            let u = Point::polar(T::one(), theta);
            let s = d.dot(u).max(iv.lo).min(iv.hi);
            best = best.min(d.dist(u * s));
        }
    }
    best
}
