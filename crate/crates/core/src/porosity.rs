//! Longest gaps, right-side porosity, radii sets `R(X, l, β)` and the
//! β → 0 dichotomy probe.

use std::fmt;

use crate::angular::AngularSet;
use crate::error::{Error, Result};
use crate::geometry::{dist_to_ray, dist_to_segment, Point, Ray};
use crate::interval::{Interval, IntervalSet};
use crate::ladder::ScaleLadder;
use crate::report::{fmt_num, Table};
use crate::scalar::Scalar;
use crate::set_model::{sphere_arcs, PlanarSet, Polygon};

/// Sub-samples per ladder step.
pub const SUBSAMPLES: usize = 8;
pub const DEFAULT_WINDOW: usize = 4;
pub const LIMIT_ZERO_MAX: f64 = 0.1;
pub const LIMIT_ONE_MIN: f64 = 0.9;
pub const STABILITY_ROWS: usize = 3;

/// Length of the longest interval in `[x, x + h] \ A`.
pub fn longest_gap<T: Scalar>(x: T, h: T, a: &IntervalSet<T>) -> T {
    a.longest_gap(x, h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PorosityRow<T> {
    pub h: T,
    pub gap: T,
    pub ratio: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PorosityEstimate<T> {
    /// Ordered by decreasing `h`.
    pub rows: Vec<PorosityRow<T>>,
    /// Maximum ratio over the finest `window` ladder steps.
    pub estimate: T,
    pub window: usize,
}

impl<T: Scalar> PorosityEstimate<T> {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["h", "gap", "ratio"]);
        for r in &self.rows {
            t.push(vec![fmt_num(r.h), fmt_num(r.gap), fmt_num(r.ratio)]);
        }
        t
    }
}

/// `sup` of `l(x, h, A)/h` over `h = t_k·q^{j/8}`, `j = 0..8`, for the last
/// `window` ladder scales `t_k`. Coarser rows are reported but not used.
pub fn porosity_estimate<T: Scalar>(
    a: &IntervalSet<T>,
    x: T,
    ladder: &ScaleLadder<T>,
    window: usize,
) -> Result<PorosityEstimate<T>> {
    if window == 0 {
        return Err(Error::InvalidLadder("porosity window must be at least 1".into()));
    }
    ladder.require_depth(window)?;
    let k_min = ladder.depth() - window;
    let mut rows = Vec::with_capacity(ladder.depth() * SUBSAMPLES);
    let mut estimate = T::zero();
    for (k, t) in ladder.scales().into_iter().enumerate() {
        for j in 0..SUBSAMPLES {
            let h = t * ladder.q().powf(T::of(j as f64 / SUBSAMPLES as f64));
            let gap = a.longest_gap(x, h);
            let ratio = (gap / h).min(T::one()).max(T::zero());
            if k >= k_min {
                estimate = estimate.max(ratio);
            }
            rows.push(PorosityRow { h, gap, ratio });
        }
    }
    Ok(PorosityEstimate {
        rows,
        estimate,
        window,
    })
}

/// Directions of the sector `Γ(a, l, β) = {z : dist(z, l) ≤ β|z − a|}`,
/// or `None` when `β ≥ 1` and the sector is the whole plane.
pub fn sector_window<T: Scalar>(l: &Ray<T>, beta: T) -> Option<AngularSet<T>> {
    if beta >= T::one() {
        return None;
    }
    let half = beta.asin();
    Some(AngularSet::from_ccw(l.direction() - half, half + half))
}

pub fn in_sector<T: Scalar>(z: Point<T>, l: &Ray<T>, beta: T) -> bool {
    let r = z.dist(l.vertex);
    dist_to_ray(z, l) <= beta * r + T::tol() * (T::one() + r)
}

/// `R(X, l, β)` with the pitch of the radii it was read from (0 when exact).
#[derive(Debug, Clone, PartialEq)]
pub struct RadiiSet<T> {
    pub set: IntervalSet<T>,
    pub mesh: T,
}

impl<T: Scalar> RadiiSet<T> {
    fn exact(set: IntervalSet<T>) -> Self {
        RadiiSet { set, mesh: T::zero() }
    }
}

fn zero_or_half_line<T: Scalar>(hit: bool) -> IntervalSet<T> {
    if hit {
        IntervalSet::half_line(T::zero())
    } else {
        IntervalSet::point(T::zero())
    }
}

fn window_hits<T: Scalar>(window: &Option<AngularSet<T>>, arcs: &AngularSet<T>) -> bool {
    match window {
        None => !arcs.is_empty(),
        Some(w) => w.intersects(arcs),
    }
}

/// `{|z − a| : z ∈ X ∩ Γ(a, l, β)}`.
///
/// Exact for cones, radial products at their vertex, star regions at their
/// center and polygons; point clouds widen the sector by their band and
/// merge radii closer than `resolution`;
/// anything else is scanned at pitch `resolution`.
pub fn radii_set<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    l: &Ray<T>,
    beta: T,
    resolution: T,
) -> Result<RadiiSet<T>> {
    if !(beta > T::zero()) {
        return Err(Error::Invariant(format!("β = {beta} must be positive")));
    }
    if l.vertex != a {
        return Err(Error::Invariant("ray vertex must be the marked point".into()));
    }
    let window = sector_window(l, beta);
    if let Some(arcs) = x.cone_at(a) {
        return Ok(RadiiSet::exact(zero_or_half_line(window_hits(&window, &arcs))));
    }
    match x {
        PlanarSet::RadialProduct { vertex, radii, arcs } if *vertex == a => {
            let set = if window_hits(&window, arcs) {
                radii.clone()
            } else if radii.contains(T::zero()) {
                IntervalSet::point(T::zero())
            } else {
                IntervalSet::empty()
            };
            Ok(RadiiSet::exact(set))
        }
        PlanarSet::StarRegion(star) if star.center() == a => {
            let reach = match &window {
                None => Some(star.max_radius()),
                Some(w) => star.max_rho_in(w),
            };
            let set = match reach {
                Some(r) => IntervalSet::new([(T::zero(), r)])?,
                None => IntervalSet::point(T::zero()),
            };
            Ok(RadiiSet::exact(set))
        }
        PlanarSet::Polygon(poly) => Ok(RadiiSet::exact(polygon_radii(poly, a, l, beta))),
        PlanarSet::FiniteSample { points, band } => {
            let ivs = points
                .iter()
                .filter(|&&p| dist_to_ray(p, l) <= beta * p.dist(a) + *band)
                .map(|&p| {
                    let r = p.dist(a);
                    Interval { lo: r, hi: r }
                })
                .collect();
            Ok(RadiiSet {
                set: IntervalSet::normalized(ivs, resolution),
                mesh: resolution,
            })
        }
        _ => scan_radii(x, a, &window, resolution),
    }
}

/// Clips a convex polygon (counterclockwise) to `{z : cross(n, z − o) ≥ 0}`.
fn clip_half_plane<T: Scalar>(poly: &[Point<T>], o: Point<T>, dir: Point<T>) -> Vec<Point<T>> {
    let side = |p: Point<T>| dir.cross(p - o);
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (sp, sq) = (side(p), side(q));
        if sp >= T::zero() {
            out.push(p);
        }
        if (sp >= T::zero()) != (sq >= T::zero()) {
            let s = sp / (sp - sq);
            out.push(p + (q - p) * s);
        }
    }
    out
}

fn convex_piece_radii<T: Scalar>(piece: &[Point<T>], a: Point<T>) -> Option<Interval<T>> {
    if piece.is_empty() {
        return None;
    }
    let hi = piece.iter().map(|p| p.dist(a)).fold(T::zero(), T::max);
    let n = piece.len();
    let inside = n >= 3
        && (0..n).all(|i| (piece[(i + 1) % n] - piece[i]).cross(a - piece[i]) >= -T::tol());
    let lo = if inside {
        T::zero()
    } else {
        (0..n)
            .map(|i| dist_to_segment(a, piece[i], piece[(i + 1) % n]))
            .fold(T::infinity(), T::min)
    };
    Some(Interval { lo, hi })
}

fn polygon_radii<T: Scalar>(poly: &Polygon<T>, a: Point<T>, l: &Ray<T>, beta: T) -> IntervalSet<T> {
    let mut ivs = Vec::new();
    for tri in poly.triangulate() {
        let mut piece = tri.to_vec();
        if beta < T::one() {
            let half = beta.asin();
            let lower = Point::polar(T::one(), l.direction() - half);
            let upper = Point::polar(T::one(), l.direction() + half);
            piece = clip_half_plane(&piece, a, lower);
            piece = clip_half_plane(&piece, a, -upper);
        }
        ivs.extend(convex_piece_radii(&piece, a));
    }
    if poly.contains(a) {
        ivs.push(Interval { lo: T::zero(), hi: T::zero() });
    }
    IntervalSet::normalized(ivs, T::tol())
}

fn scan_radii<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    window: &Option<AngularSet<T>>,
    resolution: T,
) -> Result<RadiiSet<T>> {
    if !(resolution > T::zero()) {
        return Err(Error::Invariant(format!("resolution {resolution} must be positive")));
    }
    let top = x.extent_from(a).unwrap_or(T::one());
    let steps = (top / resolution).ceil().to_usize().unwrap_or(0);
    let mut ivs = Vec::new();
    if x.contains(a) {
        ivs.push(Interval { lo: T::zero(), hi: T::zero() });
    }
    let mut run_start = None;
    for k in 1..=steps {
        let r = resolution * T::of(k as f64);
        let sphere = sphere_arcs(x, a, r);
        let hit = match window {
            None => !sphere.arcs.is_empty(),
            Some(w) => sphere.arcs.padded(sphere.angle_err).intersects(w),
        };
        match (hit, run_start) {
            (true, None) => run_start = Some(r),
            (false, Some(lo)) => {
                ivs.push(Interval { lo, hi: resolution * T::of((k - 1) as f64) });
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(lo) = run_start {
        ivs.push(Interval { lo, hi: resolution * T::of(steps as f64) });
    }
    Ok(RadiiSet {
        set: IntervalSet::normalized(ivs, resolution),
        mesh: resolution,
    })
}

/// `β_j = 2^{−j}` for `j = 1..=depth`.
pub fn beta_ladder<T: Scalar>(depth: usize) -> Vec<T> {
    (1..=depth).map(|j| T::of(0.5).powi(j as i32)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification<T> {
    LimitZero,
    LimitOne,
    Violation(T),
}

impl<T: Scalar> fmt::Display for Classification<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::LimitZero => f.write_str("limit-zero"),
            Classification::LimitOne => f.write_str("limit-one"),
            Classification::Violation(v) => write!(f, "violation {:.2}", v.as_f64()),
        }
    }
}

impl<T: Scalar> Classification<T> {
    pub fn is_violation(&self) -> bool {
        matches!(self, Classification::Violation(_))
    }

    pub fn same_kind(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyRow<T> {
    pub beta: T,
    pub radii: RadiiSet<T>,
    pub porosity: PorosityEstimate<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyVerdict<T> {
    /// Ordered by decreasing `β`.
    pub rows: Vec<DichotomyRow<T>>,
    pub classification: Classification<T>,
}

impl<T: Scalar> DichotomyVerdict<T> {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["beta", "estimate", "classification"]);
        for r in &self.rows {
            t.push(vec![
                fmt_num(r.beta),
                fmt_num(r.porosity.estimate),
                self.classification.to_string(),
            ]);
        }
        t
    }

    pub fn to_csv(&self) -> String {
        self.table().to_csv()
    }
}

pub fn classify_estimates<T: Scalar>(estimates: &[T]) -> Classification<T> {
    let tail = &estimates[estimates.len().saturating_sub(STABILITY_ROWS)..];
    let last = *estimates.last().expect("at least one estimate");
    if tail.iter().all(|&e| e <= T::of(LIMIT_ZERO_MAX)) {
        Classification::LimitZero
    } else if tail.iter().all(|&e| e >= T::of(LIMIT_ONE_MIN)) {
        Classification::LimitOne
    } else {
        Classification::Violation(last)
    }
}

/// Porosity of `R(X, l, β)` at 0 for each `β`. Radii are read at pitch
/// `resolution` where no exact route exists.
pub fn dichotomy_probe_with_resolution<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    l: &Ray<T>,
    betas: &[T],
    h_ladder: &ScaleLadder<T>,
    resolution: T,
) -> Result<DichotomyVerdict<T>> {
    if betas.len() < STABILITY_ROWS {
        return Err(Error::ShallowLadder {
            depth: betas.len(),
            needed: STABILITY_ROWS,
        });
    }
    if betas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidLadder("β values must be strictly decreasing".into()));
    }
    let mut rows = Vec::with_capacity(betas.len());
    for &beta in betas {
        let radii = radii_set(x, a, l, beta, resolution)?;
        let porosity = porosity_estimate(&radii.set, T::zero(), h_ladder, DEFAULT_WINDOW)?;
        rows.push(DichotomyRow { beta, radii, porosity });
    }
    let estimates: Vec<T> = rows.iter().map(|r| r.porosity.estimate).collect();
    Ok(DichotomyVerdict {
        classification: classify_estimates(&estimates),
        rows,
    })
}

/// [`dichotomy_probe_with_resolution`] with pitch `finest h / 16`.
pub fn dichotomy_probe<T: Scalar>(
    x: &PlanarSet<T>,
    a: Point<T>,
    l: &Ray<T>,
    betas: &[T],
    h_ladder: &ScaleLadder<T>,
) -> Result<DichotomyVerdict<T>> {
    let resolution = h_ladder.finest() * h_ladder.q() / T::of(16.0);
    dichotomy_probe_with_resolution(x, a, l, betas, h_ladder, resolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

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
    fn gap_examples() {
        let a = IntervalSet::new([(0.0, 0.0), (0.25, 0.5)]).unwrap();
        assert_eq!(longest_gap(0.0, 0.5, &a), 0.25);
        assert_eq!(longest_gap(0.0, 0.5, &IntervalSet::empty()), 0.5);
        assert_eq!(longest_gap(0.3, 0.1, &a), 0.0);
    }

    #[test]
    fn porosity_of_extremes() {
        let l = ScaleLadder::default();
        let full = porosity_estimate(&IntervalSet::half_line(0.0), 0.0, &l, 4).unwrap();
        assert_eq!(full.estimate, 0.0);
        let point = porosity_estimate(&IntervalSet::point(0.0), 0.0, &l, 4).unwrap();
        assert_eq!(point.estimate, 1.0);
        assert!(matches!(
            porosity_estimate(&IntervalSet::point(0.0), 0.0, &ScaleLadder::new(1.0, 0.5, 3).unwrap(), 4),
            Err(Error::ShallowLadder { .. })
        ));
    }

    #[test]
    fn sector_membership_matches_window() {
        let l = Ray::new(o(), 0.0);
        let w = sector_window(&l, 0.5).unwrap();
        for k in 0..720 {
            let th = 2.0 * PI * k as f64 / 720.0;
            let z = Point::polar(1.0, th);
            let near_edge = ((th - PI / 6.0).abs() < 1e-9) || ((th - (2.0 * PI - PI / 6.0)).abs() < 1e-9);
            if !near_edge {
                assert_eq!(w.contains(th), in_sector(z, &l, 0.5), "θ = {th}");
            }
        }
        assert!(sector_window(&l, 1.0).is_none());
    }

    #[test]
    fn cone_radii() {
        let l = Ray::new(o(), 0.7);
        let along = PlanarSet::cone(o(), AngularSet::point(0.7));
        assert_eq!(radii_set(&along, o(), &l, 0.01, 1e-3).unwrap().set, IntervalSet::half_line(0.0));
        let perp = PlanarSet::cone(o(), AngularSet::point(0.7 + FRAC_PI_2));
        assert_eq!(radii_set(&perp, o(), &l, 0.5, 1e-3).unwrap().set, IntervalSet::point(0.0));
        assert_eq!(radii_set(&perp, o(), &l, 1.0, 1e-3).unwrap().set, IntervalSet::half_line(0.0));
    }

    #[test]
    fn square_radii() {
        let along_edge = radii_set(&square(), o(), &Ray::new(o(), 0.0), 0.25, 1e-3).unwrap();
        assert_eq!(along_edge.set.intervals().len(), 1);
        let iv = along_edge.set.intervals()[0];
        assert_eq!(iv.lo, 0.0);
        // farthest point: (1, tan(asin 0.25))
        let expected = (1.0 + 0.25f64.asin().tan().powi(2)).sqrt();
        assert!((iv.hi - expected).abs() < 1e-12);
        let away = radii_set(&square(), o(), &Ray::new(o(), PI), 0.25, 1e-3).unwrap();
        assert_eq!(away.set, IntervalSet::point(0.0));
    }

    #[test]
    fn square_dichotomy() {
        let betas = beta_ladder(10);
        let h = ScaleLadder::default();
        let edge = dichotomy_probe(&square(), o(), &Ray::new(o(), 0.0), &betas, &h).unwrap();
        assert_eq!(edge.classification, Classification::LimitZero);
        let back = dichotomy_probe(&square(), o(), &Ray::new(o(), PI), &betas, &h).unwrap();
        assert_eq!(back.classification, Classification::LimitOne);
    }

    #[test]
    fn classification_display() {
        assert_eq!(Classification::Violation(0.5f64).to_string(), "violation 0.50");
        assert_eq!(classify_estimates(&[0.9, 0.05, 0.0, 0.01]), Classification::LimitZero);
        assert_eq!(classify_estimates(&[0.0, 0.5, 0.5, 0.5]), Classification::Violation(0.5));
    }

    #[test]
    fn scanned_radii_of_offset_disk() {
        let disk = PlanarSet::RadialProduct {
            vertex: Point::new(1.0, 0.0),
            radii: IntervalSet::new([(0.0, 1.0)]).unwrap(),
            arcs: AngularSet::full(),
        };
        let r = radii_set(&disk, o(), &Ray::new(o(), 0.0), 0.1, 1e-3).unwrap();
        assert_eq!(r.set.intervals().len(), 1);
        assert!((r.set.intervals()[0].hi - 2.0).abs() <= 1e-3);
        assert_eq!(r.mesh, 1e-3);
    }
}
