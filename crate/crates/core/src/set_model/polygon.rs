use crate::error::{Error, Result};
use crate::geometry::{dist_to_segment, Point};
use crate::scalar::Scalar;

/// Closed simple polygon (boundary plus interior).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polygon<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Invariant(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invariant("polygon vertex is not finite".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::Invariant(format!("polygon edge {i} has zero length")));
            }
        }
        let poly = Polygon { vertices };
        if poly.signed_area().abs() <= T::tol() * poly.scale() * poly.scale() {
            return Err(Error::Invariant("polygon has zero area".into()));
        }
        if !poly.is_simple() {
            return Err(Error::Invariant("polygon is not simple".into()));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> T {
        let twice = self
            .edges()
            .fold(T::zero(), |acc, (p, q)| acc + p.cross(q));
        twice / T::of(2.0)
    }

    fn scale(&self) -> T {
        self.vertices
            .iter()
            .fold(T::one(), |acc, v| acc.max(v.x.abs()).max(v.y.abs()))
    }

    fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        let edges: Vec<_> = self.edges().collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (p1, q1) = edges[i];
                let (p2, q2) = edges[j];
                if adjacent {
                    // adjacent edges may only share their common vertex
                    let shared = if j == i + 1 { q1 } else { p1 };
                    let (other_a, other_b) = if j == i + 1 { (p1, q2) } else { (q1, p2) };
                    let d1 = shared - other_a;
                    let d2 = other_b - shared;
                    if d1.cross(d2).abs() <= T::tol() * d1.norm() * d2.norm() && d1.dot(d2) < T::zero() {
                        return false;
                    }
                } else if segments_intersect(p1, q1, p2, q2) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        let mut sign = T::zero();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            let cr = (b - a).cross(c - b);
            if cr.abs() <= T::tol() {
                continue;
            }
            if sign == T::zero() {
                sign = cr.signum();
            } else if cr.signum() != sign {
                return false;
            }
        }
        true
    }

    pub fn boundary_distance(&self, z: Point<T>) -> T {
        self.edges()
            .map(|(p, q)| dist_to_segment(z, p, q))
            .fold(T::infinity(), T::min)
    }

    /// Even-odd interior test; boundary points count as inside.
    pub fn contains(&self, z: Point<T>) -> bool {
        let tol = T::tol() * (T::one() + z.norm());
        if self.boundary_distance(z) <= tol {
            return true;
        }
        let mut inside = false;
        for (p, q) in self.edges() {
            if (p.y > z.y) != (q.y > z.y) {
                let x_cross = p.x + (z.y - p.y) / (q.y - p.y) * (q.x - p.x);
                if z.x < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn distance(&self, z: Point<T>) -> T {
        if self.contains(z) {
            T::zero()
        } else {
            self.boundary_distance(z)
        }
    }

    pub fn index_of_vertex(&self, z: Point<T>) -> Option<usize> {
        self.vertices.iter().position(|&v| v == z)
    }

    /// Ear-clipping triangulation; triangles are counterclockwise.
    pub fn triangulate(&self) -> Vec<[Point<T>; 3]> {
        let mut idx: Vec<Point<T>> = self.vertices.clone();
        if self.signed_area() < T::zero() {
            idx.reverse();
        }
        let mut out = Vec::with_capacity(idx.len().saturating_sub(2));
        while idx.len() > 3 {
            let n = idx.len();
            let mut clipped = false;
            for i in 0..n {
                let a = idx[(i + n - 1) % n];
                let b = idx[i];
                let c = idx[(i + 1) % n];
                if (b - a).cross(c - b) <= T::zero() {
                    continue;
                }
                let blocked = idx.iter().enumerate().any(|(k, &p)| {
                    k != i && k != (i + n - 1) % n && k != (i + 1) % n && p != a && p != b && p != c && in_triangle(p, a, b, c)
                });
                if !blocked {
                    out.push([a, b, c]);
                    idx.remove(i);
                    clipped = true;
                    break;
                }
            }
            if !clipped {
                // only collinear corners remain clippable; dropping one keeps the region
                let n = idx.len();
                let pos = (0..n).find(|&i| {
                    let a = idx[(i + n - 1) % n];
                    let b = idx[i];
                    let c = idx[(i + 1) % n];
                    (b - a).cross(c - b).abs() <= T::tol() * (b - a).norm() * (c - b).norm()
                });
                match pos {
                    Some(i) => {
                        idx.remove(i);
                    }
                    None => break,
                }
            }
        }
        if idx.len() == 3 {
            out.push([idx[0], idx[1], idx[2]]);
        }
        out
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        Polygon {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
        }
    }
}

fn in_triangle<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>, c: Point<T>) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 >= T::zero() && d2 >= T::zero() && d3 >= T::zero()
}

fn orient<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> T {
    (b - a).cross(c - a)
}

fn on_segment<T: Scalar>(p: Point<T>, q: Point<T>, z: Point<T>) -> bool {
    z.x >= p.x.min(q.x) && z.x <= p.x.max(q.x) && z.y >= p.y.min(q.y) && z.y <= p.y.max(q.y)
}

/// Closed segment intersection test.
pub fn segments_intersect<T: Scalar>(p1: Point<T>, q1: Point<T>, p2: Point<T>, q2: Point<T>) -> bool {
    let o1 = orient(p1, q1, p2);
    let o2 = orient(p1, q1, q2);
    let o3 = orient(p2, q2, p1);
    let o4 = orient(p2, q2, q1);
    let z = T::zero();
    if ((o1 > z && o2 < z) || (o1 < z && o2 > z)) && ((o3 > z && o4 < z) || (o3 < z && o4 > z)) {
        return true;
    }
    (o1 == z && on_segment(p1, q1, p2))
        || (o2 == z && on_segment(p1, q1, q2))
        || (o3 == z && on_segment(p2, q2, p1))
        || (o4 == z && on_segment(p2, q2, q1))
}

/// Andrew's monotone chain; returns the hull counterclockwise without
/// collinear points.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point<T>> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point<T>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero()
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn square() -> Polygon<f64> {
        Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn rejects_degenerate_polygons() {
        assert!(matches!(Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0)]), Err(Error::Invariant(_))));
        assert!(Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]).is_err());
        // bow tie
        assert!(Polygon::new(vec![p(0.0, 0.0), p(1.0, 1.0), p(1.0, 0.0), p(0.0, 1.0)]).is_err());
    }

    #[test]
    fn square_membership_and_distance() {
        let s = square();
        assert!(s.contains(p(0.5, 0.5)));
        assert!(s.contains(p(0.0, 0.3)));
        assert!(s.contains(p(1.0, 1.0)));
        assert!(!s.contains(p(1.5, 0.5)));
        assert_eq!(s.distance(p(2.0, 0.5)), 1.0);
        assert!(s.is_convex());
    }

    #[test]
    fn triangulation_covers_area() {
        let l_shape = Polygon::new(vec![
            p(0.0, 0.0),
            p(2.0, 0.0),
            p(2.0, 1.0),
            p(1.0, 1.0),
            p(1.0, 2.0),
            p(0.0, 2.0),
        ])
        .unwrap();
        assert!(!l_shape.is_convex());
        let tris = l_shape.triangulate();
        assert_eq!(tris.len(), 4);
        let area: f64 = tris
            .iter()
            .map(|[a, b, c]| (*b - *a).cross(*c - *a) / 2.0)
            .sum();
        assert!((area - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = vec![p(0.0, 0.0), p(1.0, 0.0), p(0.5, 0.5), p(1.0, 1.0), p(0.0, 1.0), p(0.5, 0.0)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
    }
}
