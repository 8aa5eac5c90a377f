//! Named planar sets with known cones and dichotomy behaviour.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angular::AngularSet;
use crate::cone::ConeDescriptor;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::interval::IntervalSet;
use crate::scalar::Scalar;
use crate::set_model::{convex_hull, PlanarSet, Polygon, StarRegion};

pub const NAMES: &[&str] = &[
    "real-line",
    "real-halfline",
    "full-plane",
    "half-plane",
    "sector",
    "square-at-corner",
    "convex-polygon-at-vertex",
    "parabola-star-region",
    "annulus",
    "geometric-radial",
    "ray",
];

/// Tunable constructor parameters; the defaults give the catalog entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixtureParams {
    /// Sector bounds.
    pub theta1: f64,
    pub theta2: f64,
    /// Geometric-radial ratio and inner fraction.
    pub q: f64,
    pub c: f64,
    /// Seed and point count of the random convex polygon.
    pub seed: u64,
    pub polygon_points: usize,
    /// Direction of the `ray` fixture.
    pub theta: f64,
    /// Radial samples of the parabola region.
    pub star_samples: usize,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            theta1: 0.3,
            theta2: 1.2,
            q: 0.25,
            c: 0.5,
            seed: 5,
            polygon_points: 12,
            theta: 0.0,
            star_samples: 1025,
        }
    }
}

/// Behaviour of the dichotomy probe along `ray` at the marked point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedViolation {
    pub ray: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expectations<T> {
    pub cone: ConeDescriptor<T>,
    pub starlike: bool,
    /// `Some` when some ray is known to give a violation.
    pub violation: Option<ExpectedViolation>,
    /// Where the expected data comes from.
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture<T> {
    pub name: String,
    pub set: PlanarSet<T>,
    pub marked: Point<T>,
    pub expected: Expectations<T>,
}

pub fn make_fixture<T: Scalar>(name: &str, params: &FixtureParams) -> Result<Fixture<T>> {
    let o = Point::origin();
    let quarter = || AngularSet::from_ccw(T::zero(), T::FRAC_PI_2());
    let cone = |arcs: AngularSet<T>| ConeDescriptor::from_arcs(o, arcs);
    let (set, marked, exp) = match name {
        "real-line" => (
            PlanarSet::RealLine,
            o,
            expect(
                cone(AngularSet::from_ccw_arcs([(T::zero(), T::zero()), (T::PI(), T::zero())])),
                true,
                "closed cone: equals its own cone",
            ),
        ),
        "real-halfline" => (
            PlanarSet::RealHalfLine,
            o,
            expect(cone(AngularSet::point(T::zero())), true, "closed cone: equals its own cone"),
        ),
        "full-plane" => (
            PlanarSet::FullPlane,
            o,
            expect(cone(AngularSet::full()), true, "closed cone: equals its own cone"),
        ),
        "half-plane" => (
            PlanarSet::HalfPlane,
            o,
            expect(cone(AngularSet::from_ccw(T::zero(), T::PI())), true, "closed cone: equals its own cone"),
        ),
        "sector" => {
            let (t1, t2) = (T::of(params.theta1), T::of(params.theta2));
            if !(t2 >= t1) {
                return Err(Error::Invariant(format!("sector needs θ1 ≤ θ2, got {t1} > {t2}")));
            }
            let arcs = AngularSet::from_ccw(t1, t2 - t1);
            (
                PlanarSet::cone(o, arcs.clone()),
                o,
                expect(cone(arcs), true, "closed convex cone: equals its own cone"),
            )
        }
        "square-at-corner" => (
            PlanarSet::Polygon(unit_square()?),
            o,
            expect(cone(quarter()), true, "axis-aligned corner"),
        ),
        "convex-polygon-at-vertex" => {
            let poly = random_convex_polygon::<T>(params.seed, params.polygon_points)?;
            let v = poly.vertices()[0];
            let n = poly.vertices().len();
            let next = poly.vertices()[1] - v;
            let prev = poly.vertices()[n - 1] - v;
            let arcs = AngularSet::ccw_between(next.y.atan2(next.x), prev.y.atan2(prev.x));
            (
                PlanarSet::Polygon(poly),
                v,
                Expectations {
                    cone: ConeDescriptor::from_arcs(v, arcs),
                    starlike: true,
                    violation: None,
                    source: "edge directions at the vertex of a counterclockwise convex polygon",
                },
            )
        }
        "parabola-star-region" => (
            PlanarSet::StarRegion(parabola_region(params.star_samples)?),
            o,
            expect(
                cone(quarter()),
                true,
                "angle sweep over fine samples at scales 2^-k: infimum angle tends to 0",
            ),
        ),
        "annulus" => (
            PlanarSet::RadialProduct {
                vertex: o,
                radii: IntervalSet::new([(T::zero(), T::zero()), (T::of(0.5), T::one())])?,
                arcs: AngularSet::full(),
            },
            o,
            expect(cone(AngularSet::full()), false, "every direction occurs; segments cross the hole"),
        ),
        "geometric-radial" => {
            let radii = geometric_radii(T::of(params.q), T::of(params.c))?;
            (
                PlanarSet::RadialProduct {
                    vertex: o,
                    radii,
                    arcs: AngularSet::point(T::zero()),
                },
                o,
                Expectations {
                    cone: cone(AngularSet::point(T::zero())),
                    starlike: false,
                    violation: Some(ExpectedViolation {
                        ray: 0.0,
                        value: 1.0 - params.q / params.c,
                    }),
                    source: "exhaustive gap scan: the ratio (c − q)/c is attained at h = c·q^k",
                },
            )
        }
        "ray" => {
            let arcs = AngularSet::point(T::of(params.theta));
            (
                PlanarSet::cone(o, arcs.clone()),
                o,
                expect(cone(arcs), true, "closed cone: equals its own cone"),
            )
        }
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(Fixture {
        name: name.to_string(),
        set,
        marked,
        expected: exp,
    })
}

fn expect<T: Scalar>(cone: ConeDescriptor<T>, starlike: bool, source: &'static str) -> Expectations<T> {
    Expectations {
        cone,
        starlike,
        violation: None,
        source,
    }
}

pub fn unit_square<T: Scalar>() -> Result<Polygon<T>> {
    let (z, one) = (T::zero(), T::one());
    Polygon::new(vec![
        Point::new(z, z),
        Point::new(one, z),
        Point::new(one, one),
        Point::new(z, one),
    ])
}

/// Radial function of `{0 ≤ x ≤ 1, x² ≤ y ≤ 1}` seen from the origin.
pub fn parabola_rho<T: Scalar>(theta: T) -> T {
    if theta <= T::zero() {
        T::zero()
    } else if theta <= T::FRAC_PI_4() {
        theta.sin() / (theta.cos() * theta.cos())
    } else {
        T::one() / theta.sin()
    }
}

/// The region between `y = x²` and `y = 1` over `[0, 1]`, sampled on
/// `samples` directions spanning `[0, π/2]`.
pub fn parabola_region<T: Scalar>(samples: usize) -> Result<StarRegion<T>> {
    StarRegion::from_fn(Point::origin(), T::zero(), T::FRAC_PI_2(), samples, parabola_rho)
}

/// `{0} ∪ ⋃_k [c·q^k, q^k]`, `k = 0..25`.
pub fn geometric_radii<T: Scalar>(q: T, c: T) -> Result<IntervalSet<T>> {
    if !(q > T::zero() && q < c && c < T::one()) {
        return Err(Error::Invariant(format!("geometric radii need 0 < q < c < 1, got q = {q}, c = {c}")));
    }
    let pieces = (0..25).map(|k| {
        let top = q.powi(k);
        (c * top, top)
    });
    IntervalSet::new(std::iter::once((T::zero(), T::zero())).chain(pieces))
}

/// Convex hull of `points` seeded uniform points in `[−1, 1]²`,
/// counterclockwise.
pub fn random_convex_polygon<T: Scalar>(seed: u64, points: usize) -> Result<Polygon<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Point<T>> = (0..points.max(3))
        .map(|_| Point::new(T::of(rng.gen_range(-1.0..1.0)), T::of(rng.gen_range(-1.0..1.0))))
        .collect();
    Polygon::new(convex_hull(&pts))
}

/// Grid points of pitch `mesh` in the disk of `radius` about `a` that lie
/// in `X`, as a point cloud with band `mesh`.
pub fn densify<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, mesh: T, radius: T) -> PlanarSet<T> {
    let steps = (radius / mesh).floor().to_i64().unwrap_or(0);
    let mut pts = Vec::new();
    for i in -steps..=steps {
        for j in -steps..=steps {
            let d = Point::new(mesh * T::of(i as f64), mesh * T::of(j as f64));
            if d.norm() <= radius {
                let z = a + d;
                if x.contains(z) {
                    pts.push(z);
                }
            }
        }
    }
    PlanarSet::finite(pts, mesh)
}
