use crate::angular::AngularSet;
use crate::error::{Error, Result};
use crate::geometry::{dist_to_segment, normalize_angle, Estimate, Point};
use crate::scalar::Scalar;

/// Region `{c + r·e^{iθ} : θ ∈ [start, start + span], 0 ≤ r ≤ ρ(θ)}` with
/// `ρ` piecewise linear in `θ` between uniformly spaced samples. A span of
/// `2π` makes the grid periodic; outside the span `ρ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarRegion<T> {
    center: Point<T>,
    theta_start: T,
    theta_span: T,
    radii: Vec<T>,
}

impl<T: Scalar> StarRegion<T> {
    pub fn new(center: Point<T>, theta_start: T, theta_span: T, radii: Vec<T>) -> Result<Self> {
        if radii.len() < 8 {
            return Err(Error::Invariant(format!(
                "star region needs at least 8 radial samples, got {}",
                radii.len()
            )));
        }
        if let Some(bad) = radii.iter().find(|r| !r.is_finite() || **r < T::zero()) {
            return Err(Error::Invariant(format!("radial sample {bad} is negative or not finite")));
        }
        if !center.is_finite() || !theta_start.is_finite() {
            return Err(Error::Invariant("star region center or start angle not finite".into()));
        }
        if !(theta_span > T::zero()) || theta_span > T::two_pi() + T::tol() {
            return Err(Error::Invariant(format!("angular span {theta_span} outside (0, 2π]")));
        }
        Ok(StarRegion {
            center,
            theta_start: normalize_angle(theta_start),
            theta_span: if theta_span >= T::two_pi() - T::tol() { T::two_pi() } else { theta_span },
            radii,
        })
    }

    /// Samples `rho` on `samples` grid points covering `[start, start + span]`.
    pub fn from_fn(
        center: Point<T>,
        theta_start: T,
        theta_span: T,
        samples: usize,
        rho: impl Fn(T) -> T,
    ) -> Result<Self> {
        let periodic = theta_span >= T::two_pi() - T::tol();
        let step = Self::step_for(theta_span, samples, periodic);
        let radii = (0..samples)
            .map(|j| rho(theta_start + step * T::of(j as f64)))
            .collect();
        Self::new(center, theta_start, theta_span, radii)
    }

    fn step_for(span: T, samples: usize, periodic: bool) -> T {
        if periodic {
            T::two_pi() / T::of(samples as f64)
        } else {
            span / T::of((samples.max(2) - 1) as f64)
        }
    }

    pub fn center(&self) -> Point<T> {
        self.center
    }

    pub fn theta_start(&self) -> T {
        self.theta_start
    }

    pub fn theta_span(&self) -> T {
        self.theta_span
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn is_periodic(&self) -> bool {
        self.theta_span == T::two_pi()
    }

    fn step(&self) -> T {
        Self::step_for(self.theta_span, self.radii.len(), self.is_periodic())
    }

    fn cell_count(&self) -> usize {
        if self.is_periodic() {
            self.radii.len()
        } else {
            self.radii.len() - 1
        }
    }

    /// `(θ_j, ρ_j, θ_{j+1}, ρ_{j+1})` for every cell, angles unnormalized.
    fn cells(&self) -> impl Iterator<Item = (T, T, T, T)> + '_ {
        let m = self.radii.len();
        let step = self.step();
        (0..self.cell_count()).map(move |j| {
            let t0 = self.theta_start + step * T::of(j as f64);
            (t0, self.radii[j], t0 + step, self.radii[(j + 1) % m])
        })
    }

    /// Interpolated radial function.
    pub fn rho(&self, theta: T) -> T {
        let phi = normalize_angle(theta - self.theta_start);
        let step = self.step();
        if !self.is_periodic() && phi > self.theta_span {
            // tolerate the end of the span landing just past it
            if phi - self.theta_span <= T::tol() {
                return self.radii[self.radii.len() - 1];
            }
            if T::two_pi() - phi <= T::tol() {
                return self.radii[0];
            }
            return T::zero();
        }
        let pos = phi / step;
        let j = pos.floor().to_usize().unwrap_or(0).min(self.cell_count() - 1);
        let frac = (pos - T::of(j as f64)).max(T::zero()).min(T::one());
        let r0 = self.radii[j];
        let r1 = self.radii[(j + 1) % self.radii.len()];
        r0 + (r1 - r0) * frac
    }

    pub fn max_radius(&self) -> T {
        self.radii.iter().copied().fold(T::zero(), T::max)
    }

    pub fn contains(&self, z: Point<T>) -> bool {
        let d = z - self.center;
        let r = d.norm();
        if r == T::zero() {
            return true;
        }
        let theta = d.y.atan2(d.x);
        r <= self.rho(theta) + T::tol() * (T::one() + r)
    }

    /// Closure of the directions `{θ : ρ(θ) > 0}` seen from the center.
    pub fn support(&self) -> AngularSet<T> {
        AngularSet::from_ccw_arcs(
            self.cells()
                .filter(|&(_, r0, _, r1)| r0 > T::zero() || r1 > T::zero())
                .map(|(t0, _, t1, _)| (t0, t1 - t0)),
        )
    }

    /// `{θ : ρ(θ) ≥ r}` for `r > 0`: the sphere of radius `r` about the center.
    pub fn sphere_arcs(&self, r: T) -> AngularSet<T> {
        let mut arcs = Vec::new();
        for (t0, r0, t1, r1) in self.cells() {
            let w = t1 - t0;
            match (r0 >= r, r1 >= r) {
                (true, true) => arcs.push((t0, w)),
                (true, false) => arcs.push((t0, w * (r0 - r) / (r0 - r1))),
                (false, true) => {
                    let s = w * (r - r0) / (r1 - r0);
                    arcs.push((t0 + s, w - s));
                }
                (false, false) => {}
            }
        }
        AngularSet::from_ccw_arcs(arcs)
    }

    /// Largest `ρ` over the directions in `window` (intersected with the span).
    pub fn max_rho_in(&self, window: &AngularSet<T>) -> Option<T> {
        let mut best: Option<T> = None;
        let mut bump = |v: T| best = Some(best.map_or(v, |b: T| b.max(v)));
        let mut any = false;
        for (t0, r0, t1, r1) in self.cells() {
            let cell = AngularSet::from_ccw(t0, t1 - t0);
            let hit = cell.intersection(window);
            if hit.is_empty() {
                continue;
            }
            any = true;
            // ρ is linear on the cell, so its max is at an endpoint of the overlap
            for (s, e) in hit.circular_arcs() {
                bump(self.rho(s));
                bump(self.rho(e));
            }
            if window.contains(t0) {
                bump(r0);
            }
            if window.contains(t1) {
                bump(r1);
            }
        }
        if any {
            best
        } else {
            None
        }
    }

    /// Distance to the region with a rigorous error bound. The boundary curve
    /// is replaced by chords; each chord lies within `2·ρ_max·Δθ` of its arc
    /// of boundary curve.
    pub fn distance(&self, z: Point<T>) -> Estimate<T> {
        if self.contains(z) {
            return Estimate::exact(T::zero());
        }
        let mut chord_min = T::infinity();
        let mut lower = T::infinity();
        let mut upper = T::infinity();
        let mut consider = |d: T, bound: T| {
            chord_min = chord_min.min(d);
            lower = lower.min(d - bound);
            upper = upper.min(d + bound);
        };
        let two = T::of(2.0);
        for (t0, r0, t1, r1) in self.cells() {
            let p = self.center + Point::polar(r0, t0);
            let q = self.center + Point::polar(r1, t1);
            let bound = two * r0.max(r1) * (t1 - t0);
            consider(dist_to_segment(z, p, q), bound);
        }
        if !self.is_periodic() {
            let first = self.center + Point::polar(self.radii[0], self.theta_start);
            let last_theta = self.theta_start + self.theta_span;
            let last = self.center + Point::polar(self.radii[self.radii.len() - 1], last_theta);
            consider(dist_to_segment(z, self.center, first), T::zero());
            consider(dist_to_segment(z, self.center, last), T::zero());
        }
        let value = chord_min.max(T::zero());
        let err = (upper - chord_min).max(chord_min - lower.max(T::zero()));
        Estimate::new(value, err.max(T::zero()))
    }

    pub fn transformed(&self, rotation: T, center: Point<T>) -> Self {
        StarRegion {
            center,
            theta_start: normalize_angle(self.theta_start + rotation),
            theta_span: self.theta_span,
            radii: self.radii.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn disk() -> StarRegion<f64> {
        StarRegion::from_fn(Point::origin(), 0.0, 2.0 * PI, 64, |_| 1.0).unwrap()
    }

    #[test]
    fn validates_samples() {
        assert!(StarRegion::<f64>::new(Point::origin(), 0.0, 1.0, vec![1.0; 4]).is_err());
        assert!(StarRegion::<f64>::new(Point::origin(), 0.0, 1.0, vec![-1.0; 9]).is_err());
        assert!(StarRegion::<f64>::new(Point::origin(), 0.0, 1.0, vec![1.0; 9]).is_ok());
    }

    #[test]
    fn constant_rho_is_a_disk() {
        let d = disk();
        assert!(d.contains(Point::new(0.7, 0.7)));
        assert!(!d.contains(Point::new(0.8, 0.8)));
        assert!(d.support().is_full());
        assert!(d.sphere_arcs(0.5).is_full());
        assert!(d.sphere_arcs(1.5).is_empty());
        let e = d.distance(Point::new(2.0, 0.0));
        assert!((e.value - 1.0).abs() <= e.error_bound + 1e-12);
    }

    #[test]
    fn quarter_span_support_stays_in_span() {
        let q = StarRegion::from_fn(Point::origin(), 0.0, FRAC_PI_2, 33, |t: f64| t).unwrap();
        let s = q.support();
        assert_eq!(s.arcs().len(), 1);
        assert_eq!(s.arcs()[0].lo, 0.0);
        assert!((s.arcs()[0].hi - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(q.rho(PI), 0.0);
        let arcs = q.sphere_arcs(1.0);
        assert!((arcs.arcs()[0].lo - 1.0).abs() < 1e-9);
    }
}
