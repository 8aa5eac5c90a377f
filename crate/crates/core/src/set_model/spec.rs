//! JSON set-spec documents.
//!
//! ```json
//! {"variant": "cone", "marked_point": [0, 0], "vertex": [0, 0], "arcs": [[0, 1.5708]]}
//! ```
//!
//! Angles are radians, points are `[x, y]` pairs and radii intervals are
//! `[lo, hi]` pairs where `hi` may be `null` for `+∞`. `marked_point` is
//! optional; it defaults to the vertex or center for cones and star
//! regions, the origin for the model spaces, and the first listed point for
//! polygons and point clouds. A radial product defaults to its vertex when
//! `0` is a radius and otherwise to its innermost point along its first
//! direction.

use serde::{Deserialize, Serialize};

use super::{MarkedSet, PlanarSet, Polygon, StarRegion};
use crate::angular::AngularSet;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::interval::{Interval, IntervalSet};
use crate::scalar::Scalar;

type Pair = [f64; 2];

const LINE_VARIANT: &str = "interval_set";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marked_point: Option<Pair>,
    #[serde(flatten)]
    body: Body,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum Body {
    FiniteSample {
        points: Vec<Pair>,
        band: f64,
    },
    Polygon {
        vertices: Vec<Pair>,
    },
    StarRegion {
        center: Pair,
        theta_start: f64,
        theta_span: f64,
        radii: Vec<f64>,
    },
    Cone {
        vertex: Pair,
        arcs: Vec<Pair>,
    },
    RadialProduct {
        vertex: Pair,
        radii: Vec<(f64, Option<f64>)>,
        arcs: Vec<Pair>,
    },
    HalfPlane,
    FullPlane,
    RealLine,
    RealHalfLine,
}

/// One-dimensional set `A ⊆ ℝ⁺` with the base point `x` of a porosity scan.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSpec<T> {
    pub set: IntervalSet<T>,
    pub base_point: T,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineDocument {
    variant: String,
    intervals: Vec<(f64, Option<f64>)>,
    #[serde(default)]
    base_point: f64,
}

fn point<T: Scalar>(p: Pair) -> Result<Point<T>> {
    let q = Point::new(T::of(p[0]), T::of(p[1]));
    if q.is_finite() {
        Ok(q)
    } else {
        Err(Error::Schema("point coordinates must be finite".into()))
    }
}

fn pair<T: Scalar>(p: Point<T>) -> Pair {
    [p.x.as_f64(), p.y.as_f64()]
}

fn arcs<T: Scalar>(raw: &[Pair]) -> Result<AngularSet<T>> {
    AngularSet::from_arcs(raw.iter().map(|a| (T::of(a[0]), T::of(a[1]))))
        .ok_or_else(|| Error::Schema("arcs must be finite [lo, hi] pairs with lo ≤ hi".into()))
}

fn arcs_out<T: Scalar>(set: &AngularSet<T>) -> Vec<Pair> {
    if set.is_full() {
        return vec![[0.0, std::f64::consts::TAU]];
    }
    set.arcs().iter().map(|a| [a.lo.as_f64(), a.hi.as_f64()]).collect()
}

fn radii<T: Scalar>(raw: &[(f64, Option<f64>)]) -> Result<IntervalSet<T>> {
    IntervalSet::new(
        raw.iter()
            .map(|&(lo, hi)| (T::of(lo), hi.map_or(T::infinity(), T::of))),
    )
}

fn radii_out<T: Scalar>(set: &IntervalSet<T>) -> Vec<(f64, Option<f64>)> {
    set.intervals()
        .iter()
        .map(|iv: &Interval<T>| (iv.lo.as_f64(), iv.hi.is_finite().then(|| iv.hi.as_f64())))
        .collect()
}

/// The vertex when it belongs to the radial product, otherwise the member
/// at the smallest radius along the first direction.
fn nearest_member<T: Scalar>(v: Point<T>, radii: &IntervalSet<T>, arcs: &AngularSet<T>) -> Point<T> {
    let first_dir = if arcs.is_full() { Some(T::zero()) } else { arcs.arcs().first().map(|a| a.lo) };
    match (radii.inf(), first_dir) {
        (Some(r), Some(theta)) if r > T::zero() => v + Point::polar(r, theta),
        _ => v,
    }
}

fn build<T: Scalar>(body: &Body) -> Result<(PlanarSet<T>, Point<T>)> {
    let origin = Point::origin();
    Ok(match body {
        Body::FiniteSample { points, band } => {
            let pts = points.iter().map(|&p| point(p)).collect::<Result<Vec<_>>>()?;
            if !(band.is_finite() && *band >= 0.0) {
                return Err(Error::Invariant(format!("band {band} must be finite and ≥ 0")));
            }
            let first = *pts
                .first()
                .ok_or_else(|| Error::Invariant("finite sample has no points".into()))?;
            (PlanarSet::finite(pts, T::of(*band)), first)
        }
        Body::Polygon { vertices } => {
            let vs = vertices.iter().map(|&p| point(p)).collect::<Result<Vec<_>>>()?;
            let poly = Polygon::new(vs)?;
            let first = poly.vertices()[0];
            (PlanarSet::Polygon(poly), first)
        }
        Body::StarRegion {
            center,
            theta_start,
            theta_span,
            radii,
        } => {
            let c = point(*center)?;
            let star = StarRegion::new(
                c,
                T::of(*theta_start),
                T::of(*theta_span),
                radii.iter().map(|&r| T::of(r)).collect(),
            )?;
            (PlanarSet::StarRegion(star), c)
        }
        Body::Cone { vertex, arcs: a } => {
            let v = point(*vertex)?;
            (PlanarSet::cone(v, arcs(a)?), v)
        }
        Body::RadialProduct {
            vertex,
            radii: r,
            arcs: a,
        } => {
            let v = point(*vertex)?;
            let radii = radii(r)?;
            let arcs = arcs(a)?;
            let mark = nearest_member(v, &radii, &arcs);
            (PlanarSet::RadialProduct { vertex: v, radii, arcs }, mark)
        }
        Body::HalfPlane => (PlanarSet::HalfPlane, origin),
        Body::FullPlane => (PlanarSet::FullPlane, origin),
        Body::RealLine => (PlanarSet::RealLine, origin),
        Body::RealHalfLine => (PlanarSet::RealHalfLine, origin),
    })
}

fn body_of<T: Scalar>(set: &PlanarSet<T>) -> Body {
    match set {
        PlanarSet::FiniteSample { points, band } => Body::FiniteSample {
            points: points.iter().map(|&p| pair(p)).collect(),
            band: band.as_f64(),
        },
        PlanarSet::Polygon(poly) => Body::Polygon {
            vertices: poly.vertices().iter().map(|&p| pair(p)).collect(),
        },
        PlanarSet::StarRegion(star) => Body::StarRegion {
            center: pair(star.center()),
            theta_start: star.theta_start().as_f64(),
            theta_span: star.theta_span().as_f64(),
            radii: star.radii().iter().map(|r| r.as_f64()).collect(),
        },
        PlanarSet::ConeSet { vertex, arcs } => Body::Cone {
            vertex: pair(*vertex),
            arcs: arcs_out(arcs),
        },
        PlanarSet::RadialProduct {
            vertex,
            radii,
            arcs,
        } => Body::RadialProduct {
            vertex: pair(*vertex),
            radii: radii_out(radii),
            arcs: arcs_out(arcs),
        },
        PlanarSet::HalfPlane => Body::HalfPlane,
        PlanarSet::FullPlane => Body::FullPlane,
        PlanarSet::RealLine => Body::RealLine,
        PlanarSet::RealHalfLine => Body::RealHalfLine,
    }
}

fn schema(e: serde_json::Error) -> Error {
    Error::Schema(e.to_string())
}

/// Parses a set-spec document and validates every invariant, including
/// membership of the marked point.
pub fn parse_set_spec<T: Scalar>(json: &str) -> Result<MarkedSet<T>> {
    let doc: Document = serde_json::from_str(json).map_err(schema)?;
    let (set, default_mark) = build::<T>(&doc.body)?;
    let marked = match doc.marked_point {
        Some(p) => point(p)?,
        None => default_mark,
    };
    MarkedSet::new(set, marked)
}

pub fn serialize_set_spec<T: Scalar>(marked: &MarkedSet<T>) -> String {
    let doc = Document {
        marked_point: Some(pair(marked.marked)),
        body: body_of(&marked.set),
    };
    serde_json::to_string_pretty(&doc).expect("set spec serializes")
}

pub fn parse_line_spec<T: Scalar>(json: &str) -> Result<LineSpec<T>> {
    let doc: LineDocument = serde_json::from_str(json).map_err(schema)?;
    if doc.variant != LINE_VARIANT {
        return Err(Error::Schema(format!(
            "unknown variant `{}`, expected `{LINE_VARIANT}`",
            doc.variant
        )));
    }
    let set = radii(&doc.intervals)?;
    let base_point = T::of(doc.base_point);
    if !base_point.is_finite() || base_point < T::zero() {
        return Err(Error::Invariant(format!("base point {} must be finite and ≥ 0", doc.base_point)));
    }
    Ok(LineSpec { set, base_point })
}

pub fn serialize_line_spec<T: Scalar>(spec: &LineSpec<T>) -> String {
    let doc = LineDocument {
        variant: LINE_VARIANT.into(),
        intervals: radii_out(&spec.set),
        base_point: spec.base_point.as_f64(),
    };
    serde_json::to_string_pretty(&doc).expect("line spec serializes")
}
