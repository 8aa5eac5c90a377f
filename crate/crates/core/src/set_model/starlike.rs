use super::{sphere_sample, PlanarSet};
use crate::geometry::Point;
use crate::scalar::Scalar;

/// Outcome of [`starlike_check`]. A counterexample `(b, t)` means
/// `b ∈ X` but `a + t·(b − a) ∉ X`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarlikeCheck<T> {
    pub starlike: bool,
    pub counterexample: Option<(Point<T>, T)>,
}

const MAX_WITNESSES_PER_SPHERE: usize = 1024;
const MAX_LEVEL: u32 = 24;

/// Sampled, one-sided test that `[a, b] ⊆ X` for every member `b`.
///
/// Witnesses `b` are taken from spheres about `a` at radii stepping down
/// from the extent of `X` (1 for unbounded sets) by `mesh`, farthest first;
/// point clouds use their own points. Segment parameters are tried in
/// dyadic order `1/2, 1/4, 3/4, 1/8, …` down to pitch `mesh / |b − a|`.
pub fn starlike_check<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, mesh: T) -> StarlikeCheck<T> {
    let pass = StarlikeCheck {
        starlike: true,
        counterexample: None,
    };
    if !(mesh > T::zero()) {
        return pass;
    }
    if let PlanarSet::FiniteSample { points, .. } = x {
        for &b in points {
            if let Some(t) = first_gap(x, a, b, mesh) {
                return fail(b, t);
            }
        }
        return pass;
    }
    let extent = x.extent_from(a).unwrap_or(T::one());
    let mut r = extent;
    while r > mesh / T::of(2.0) {
        let n = (T::two_pi() * r / mesh)
            .ceil()
            .to_usize()
            .unwrap_or(MAX_WITNESSES_PER_SPHERE)
            .clamp(8, MAX_WITNESSES_PER_SPHERE);
        if let Ok(sample) = sphere_sample(x, a, r, n) {
            for &b in &sample.points {
                if let Some(t) = first_gap(x, a, b, mesh) {
                    return fail(b, t);
                }
            }
        }
        r = r - mesh;
    }
    pass
}

fn fail<T: Scalar>(b: Point<T>, t: T) -> StarlikeCheck<T> {
    StarlikeCheck {
        starlike: false,
        counterexample: Some((b, t)),
    }
}

fn first_gap<T: Scalar>(x: &PlanarSet<T>, a: Point<T>, b: Point<T>, mesh: T) -> Option<T> {
    let len = a.dist(b);
    if len == T::zero() {
        return None;
    }
    let pitch = mesh / len;
    let mut level = 1u32;
    loop {
        let denom = T::of(f64::from(1u32 << level));
        let step = T::one() / denom;
        for j in (1..(1u32 << level)).step_by(2) {
            let t = T::of(f64::from(j)) * step;
            if !x.contains(a + (b - a) * t) {
                return Some(t);
            }
        }
        if step <= pitch || level >= MAX_LEVEL {
            return None;
        }
        level += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::AngularSet;
    use crate::interval::IntervalSet;
    use crate::set_model::Polygon;

    #[test]
    fn cones_and_squares_are_starlike() {
        let sector = PlanarSet::cone(Point::origin(), AngularSet::from_ccw(0.3, 0.9));
        assert!(starlike_check(&sector, Point::origin(), 0.05).starlike);
        let sq = PlanarSet::Polygon(
            Polygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ])
            .unwrap(),
        );
        assert!(starlike_check(&sq, Point::origin(), 0.05).starlike);
    }

    #[test]
    fn annulus_fails_at_a_quarter() {
        let annulus = PlanarSet::RadialProduct {
            vertex: Point::origin(),
            radii: IntervalSet::new([(0.0, 0.0), (0.5, 1.0)]).unwrap(),
            arcs: AngularSet::full(),
        };
        let check = starlike_check(&annulus, Point::origin(), 0.01);
        assert!(!check.starlike);
        assert_eq!(check.counterexample.unwrap().1, 0.25);
    }

    #[test]
    fn l_shape_fails_from_far_corner() {
        let l_shape = PlanarSet::Polygon(
            Polygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 1.0),
                Point::new(1.0, 1.0),
                Point::new(1.0, 2.0),
                Point::new(0.0, 2.0),
            ])
            .unwrap(),
        );
        assert!(!starlike_check(&l_shape, Point::new(2.0, 0.0), 0.02).starlike);
        assert!(starlike_check(&l_shape, Point::new(0.0, 0.0), 0.02).starlike);
    }
}
