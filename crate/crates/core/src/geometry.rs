//! Planar primitives: points, rays, distances and sampled Hausdorff distance.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    /// `r·e^{iθ}`.
    pub fn polar(r: T, theta: T) -> Self {
        Point::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(self) -> T {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn norm_sq(self) -> T {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    pub fn dist(self, other: Self) -> T {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn rotate(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::of(self.x.as_f64()), U::of(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

/// Normalizes an angle into `[0, 2π)`. Values within tolerance of `2π` map to 0.
pub fn normalize_angle<T: Scalar>(theta: T) -> T {
    let two_pi = T::two_pi();
    let mut t = theta % two_pi;
    if t < T::zero() {
        t = t + two_pi;
    }
    if t >= two_pi - T::tol() {
        t = T::zero();
    }
    t
}

/// Argument of `z − a`, normalized to `[0, 2π)`.
pub fn angle_of<T: Scalar>(z: Point<T>, a: Point<T>) -> Result<T> {
    let d = z - a;
    if d.x == T::zero() && d.y == T::zero() {
        return Err(Error::Degenerate("angle of a point relative to itself".into()));
    }
    Ok(normalize_angle(d.y.atan2(d.x)))
}

/// Closed ray `{vertex + s·e^{iθ} : s ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray<T> {
    pub vertex: Point<T>,
    direction: T,
}

impl<T: Scalar> Ray<T> {
    pub fn new(vertex: Point<T>, direction: T) -> Self {
        Ray {
            vertex,
            direction: normalize_angle(direction),
        }
    }

    /// The ray `l_a(b)`: starts at `a` and passes through `b`.
    pub fn through(a: Point<T>, b: Point<T>) -> Result<Self> {
        Ok(Ray::new(a, angle_of(b, a)?))
    }

    pub fn direction(&self) -> T {
        self.direction
    }

    pub fn unit(&self) -> Point<T> {
        Point::polar(T::one(), self.direction)
    }

    pub fn at(&self, s: T) -> Point<T> {
        self.vertex + self.unit() * s
    }
}

/// Exact distance from `z` to the closed ray `l`.
pub fn dist_to_ray<T: Scalar>(z: Point<T>, l: &Ray<T>) -> T {
    let d = z - l.vertex;
    let u = l.unit();
    let s = d.dot(u);
    if s <= T::zero() {
        d.norm()
    } else {
        d.cross(u).abs()
    }
}

/// Exact distance from `z` to the closed segment `[p, q]`.
pub fn dist_to_segment<T: Scalar>(z: Point<T>, p: Point<T>, q: Point<T>) -> T {
    let pq = q - p;
    let len_sq = pq.norm_sq();
    if len_sq == T::zero() {
        return z.dist(p);
    }
    let s = ((z - p).dot(pq) / len_sq).max(T::zero()).min(T::one());
    z.dist(p + pq * s)
}

/// A value together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Estimate<T> {
    pub value: T,
    pub error_bound: T,
}

impl<T: Scalar> Estimate<T> {
    pub fn exact(value: T) -> Self {
        Estimate {
            value,
            error_bound: T::zero(),
        }
    }

    pub fn new(value: T, error_bound: T) -> Self {
        Estimate { value, error_bound }
    }
}

/// Finite point set standing in for a shape. `mesh` bounds the Hausdorff
/// distance between the sample and the shape it was drawn from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSample<T> {
    pub points: Vec<Point<T>>,
    pub mesh: T,
}

impl<T: Scalar> PointSample<T> {
    pub fn new(points: Vec<Point<T>>, mesh: T) -> Self {
        PointSample { points, mesh }
    }

    pub fn exact(points: Vec<Point<T>>) -> Self {
        PointSample::new(points, T::zero())
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        PointSample::new(self.points.iter().map(|&p| f(p)).collect(), self.mesh)
    }
}

/// Sampled Hausdorff distance. The error bound is `mesh(A) + mesh(B)`.
pub fn hausdorff_distance<T: Scalar>(a: &PointSample<T>, b: &PointSample<T>) -> Result<Estimate<T>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let d = directed_hausdorff(&a.points, &b.points).max(directed_hausdorff(&b.points, &a.points));
    Ok(Estimate::new(d, a.mesh + b.mesh))
}

/// Brute-force reference for [`hausdorff_distance`].
pub fn hausdorff_distance_brute<T: Scalar>(
    a: &PointSample<T>,
    b: &PointSample<T>,
) -> Result<Estimate<T>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let d = directed_brute(&a.points, &b.points).max(directed_brute(&b.points, &a.points));
    Ok(Estimate::new(d, a.mesh + b.mesh))
}

/// `sup_{p∈from} inf_{q∈to} |p − q|` over nonempty point lists.
pub fn directed_hausdorff<T: Scalar>(from: &[Point<T>], to: &[Point<T>]) -> T {
    if from.len() * to.len() <= 4096 {
        return directed_brute(from, to);
    }
    let grid = BucketGrid::build(to);
    from.iter()
        .map(|&p| grid.nearest(p, to))
        .fold(T::zero(), T::max)
}

fn directed_brute<T: Scalar>(from: &[Point<T>], to: &[Point<T>]) -> T {
    from.iter()
        .map(|&p| {
            to.iter()
                .map(|&q| p.dist(q))
                .fold(T::infinity(), T::min)
        })
        .fold(T::zero(), T::max)
}

/// Uniform bucket grid over a point list. Nearest-point queries visit rings
/// of cells outward and stop once no unvisited cell can beat the best
/// distance; results equal the brute-force minimum.
struct BucketGrid<T> {
    min: Point<T>,
    cell: T,
    nx: i64,
    ny: i64,
    starts: Vec<usize>,
    order: Vec<usize>,
}

impl<T: Scalar> BucketGrid<T> {
    fn build(points: &[Point<T>]) -> Self {
        let mut min = points[0];
        let mut max = points[0];
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        let w = (max.x - min.x).max(T::zero());
        let h = (max.y - min.y).max(T::zero());
        let n = T::of(points.len() as f64);
        let span = w.max(h);
        let mut cell = ((w * h) / n).sqrt().max(span / n.sqrt() / T::of(4.0));
        if !(cell > T::zero()) {
            cell = T::one();
        }
        let nx = ((w / cell).floor().to_i64().unwrap_or(0) + 1).min(1 << 20);
        let ny = ((h / cell).floor().to_i64().unwrap_or(0) + 1).min(1 << 20);
        let idx = |p: &Point<T>| -> usize {
            let i = ((p.x - min.x) / cell).floor().to_i64().unwrap_or(0).clamp(0, nx - 1);
            let j = ((p.y - min.y) / cell).floor().to_i64().unwrap_or(0).clamp(0, ny - 1);
            (j * nx + i) as usize
        };
        let cells = (nx * ny) as usize;
        let mut counts = vec![0usize; cells + 1];
        for p in points {
            counts[idx(p) + 1] += 1;
        }
        for c in 0..cells {
            counts[c + 1] += counts[c];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut order = vec![0usize; points.len()];
        for (k, p) in points.iter().enumerate() {
            let c = idx(p);
            order[fill[c]] = k;
            fill[c] += 1;
        }
        BucketGrid {
            min,
            cell,
            nx,
            ny,
            starts,
            order,
        }
    }

    fn nearest(&self, p: Point<T>, points: &[Point<T>]) -> T {
        let ci = ((p.x - self.min.x) / self.cell).floor().to_i64().unwrap_or(0);
        let cj = ((p.y - self.min.y) / self.cell).floor().to_i64().unwrap_or(0);
        // first ring that can touch the grid
        let gap_i = if ci < 0 { -ci } else if ci >= self.nx { ci - self.nx + 1 } else { 0 };
        let gap_j = if cj < 0 { -cj } else if cj >= self.ny { cj - self.ny + 1 } else { 0 };
        let mut k = gap_i.max(gap_j);
        let mut best = T::infinity();
        let max_ring = k + self.nx.max(self.ny) + 1;
        while k <= max_ring {
            self.visit_ring(ci, cj, k, |c| {
                for &idx in &self.order[self.starts[c]..self.starts[c + 1]] {
                    best = best.min(p.dist(points[idx]));
                }
            });
            if best <= T::of(k as f64 * 0.999) * self.cell {
                break;
            }
            k += 1;
        }
        best
    }

    fn visit_ring(&self, ci: i64, cj: i64, k: i64, mut f: impl FnMut(usize)) {
        let mut cell = |i: i64, j: i64| {
            if i >= 0 && i < self.nx && j >= 0 && j < self.ny {
                f((j * self.nx + i) as usize);
            }
        };
        if k == 0 {
            cell(ci, cj);
            return;
        }
        let i_lo = (ci - k).max(0);
        let i_hi = (ci + k).min(self.nx - 1);
        for i in i_lo..=i_hi {
            cell(i, cj - k);
            cell(i, cj + k);
        }
        let j_lo = (cj - k + 1).max(0);
        let j_hi = (cj + k - 1).min(self.ny - 1);
        for j in j_lo..=j_hi {
            cell(ci - k, j);
            cell(ci + k, j);
        }
    }
}

/// Rotation about the origin followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion<T> {
    pub rotation: T,
    pub translation: Point<T>,
}

impl<T: Scalar> RigidMotion<T> {
    pub fn new(rotation: T, translation: Point<T>) -> Self {
        RigidMotion {
            rotation,
            translation,
        }
    }

    pub fn apply(&self, p: Point<T>) -> Point<T> {
        p.rotate(self.rotation) + self.translation
    }
}
