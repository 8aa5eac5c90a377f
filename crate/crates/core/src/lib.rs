//! Local conical structure of planar sets at a marked point: smallest
//! closed (convex) cones, sector radii sets and porosity, sphere-defect
//! equivalence probes and blow-up convergence reports.
//!
//! Everything is generic over the [`Scalar`] type (`f32` or `f64`); the
//! `*64` and `*32` aliases fix it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod angular;
pub mod blowup;
pub mod cone;
pub mod equiv;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod interval;
pub mod ladder;
pub mod porosity;
pub mod report;
pub mod scalar;
pub mod set_model;

pub use angular::{AngularSet, Arc};
pub use blowup::{
    blowup_at_scale, cone_convergence_report, sequence_cluster_directions, ClusterReport, ConvergenceReport,
    ConvergenceVerdict,
};
pub use cone::{angular_support, con_a, cone_distance, conv_a, ConeClass, ConeDescriptor};
pub use equiv::{epsilon_one_sided, epsilon_sym, strong_equiv_probe, EquivalenceReport, EquivalenceVerdict};
pub use error::{Error, Result};
pub use fixtures::{make_fixture, Fixture, FixtureParams};
pub use geometry::{
    angle_of, dist_to_ray, dist_to_segment, hausdorff_distance, Estimate, Point, PointSample, Ray, RigidMotion,
};
pub use interval::{Interval, IntervalSet};
pub use ladder::ScaleLadder;
pub use porosity::{
    dichotomy_probe, longest_gap, porosity_estimate, radii_set, Classification, DichotomyVerdict, PorosityEstimate,
    RadiiSet,
};
pub use scalar::Scalar;
pub use set_model::{parse_set_spec, sphere_sample, starlike_check, MarkedSet, PlanarSet, Polygon, StarRegion};

pub type Point64 = Point<f64>;
pub type Ray64 = Ray<f64>;
pub type PlanarSet64 = PlanarSet<f64>;
pub type MarkedSet64 = MarkedSet<f64>;
pub type AngularSet64 = AngularSet<f64>;
pub type IntervalSet64 = IntervalSet<f64>;
pub type ScaleLadder64 = ScaleLadder<f64>;
pub type ConeDescriptor64 = ConeDescriptor<f64>;

pub type Point32 = Point<f32>;
pub type Ray32 = Ray<f32>;
pub type PlanarSet32 = PlanarSet<f32>;
pub type MarkedSet32 = MarkedSet<f32>;
pub type AngularSet32 = AngularSet<f32>;
pub type IntervalSet32 = IntervalSet<f32>;
pub type ScaleLadder32 = ScaleLadder<f32>;
pub type ConeDescriptor32 = ConeDescriptor<f32>;
