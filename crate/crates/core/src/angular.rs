//! Closed subsets of the circle stored as normalized unions of closed arcs.

use crate::geometry::normalize_angle;
use crate::scalar::Scalar;

/// Closed arc `[lo, hi]` with `0 ≤ lo ≤ hi ≤ 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Arc<T> {
    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

/// Closed subset of the circle. Arcs are sorted, pairwise disjoint and lie
/// in `[0, 2π]`; an arc through angle 0 is stored as `[0, hi]` plus
/// `[lo, 2π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSet<T> {
    arcs: Vec<Arc<T>>,
    full: bool,
}

impl<T: Scalar> Default for AngularSet<T> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<T: Scalar> AngularSet<T> {
    pub fn empty() -> Self {
        AngularSet {
            arcs: Vec::new(),
            full: false,
        }
    }

    pub fn full() -> Self {
        AngularSet {
            arcs: Vec::new(),
            full: true,
        }
    }

    /// A single direction.
    pub fn point(theta: T) -> Self {
        Self::from_ccw(theta, T::zero())
    }

    /// Arc starting at `start` and sweeping counterclockwise by `width`.
    pub fn from_ccw(start: T, width: T) -> Self {
        Self::from_ccw_arcs([(start, width)])
    }

    /// Counterclockwise arc from `start` to `end`.
    pub fn ccw_between(start: T, end: T) -> Self {
        let s = normalize_angle(start);
        let e = normalize_angle(end);
        let w = if e >= s { e - s } else { e - s + T::two_pi() };
        Self::from_ccw(s, w)
    }

    /// Builds from `(start, width)` pairs; arcs merge when they overlap or touch.
    pub fn from_ccw_arcs<I: IntoIterator<Item = (T, T)>>(arcs: I) -> Self {
        Self::from_ccw_arcs_with_tol(arcs, T::tol())
    }

    pub fn from_ccw_arcs_with_tol<I: IntoIterator<Item = (T, T)>>(arcs: I, merge_tol: T) -> Self {
        let two_pi = T::two_pi();
        let mut pieces = Vec::new();
        for (start, width) in arcs {
            debug_assert!(width >= T::zero());
            if width >= two_pi - T::tol() {
                return Self::full();
            }
            let lo = normalize_angle(start);
            let hi = lo + width;
            if hi > two_pi {
                pieces.push(Arc { lo, hi: two_pi });
                pieces.push(Arc {
                    lo: T::zero(),
                    hi: hi - two_pi,
                });
            } else {
                pieces.push(Arc { lo, hi });
            }
        }
        Self::from_pieces(pieces, merge_tol)
    }

    /// Builds from stored-form arcs `[lo, hi]` with `0 ≤ lo ≤ hi ≤ 2π`
    /// keeping their endpoints bit for bit.
    /// Arcs with `hi > 2π` are read as counterclockwise sweeps.
    pub fn from_arcs<I: IntoIterator<Item = (T, T)>>(arcs: I) -> Option<Self> {
        let two_pi = T::two_pi();
        let mut pieces = Vec::new();
        let mut wrapped = Vec::new();
        for (lo, hi) in arcs {
            if !(lo.is_finite() && hi.is_finite()) || hi < lo {
                return None;
            }
            if lo >= T::zero() && hi <= two_pi {
                pieces.push(Arc { lo, hi });
            } else {
                wrapped.push((lo, hi - lo));
            }
        }
        let base = Self::from_pieces(pieces, T::tol());
        Some(if wrapped.is_empty() {
            base
        } else {
            base.union(&Self::from_ccw_arcs(wrapped))
        })
    }

    /// `pieces` must already lie in `[0, 2π]`.
    fn from_pieces(mut pieces: Vec<Arc<T>>, merge_tol: T) -> Self {
        pieces.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite angles"));
        let mut merged: Vec<Arc<T>> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(last) if p.lo <= last.hi + merge_tol => {
                    last.hi = last.hi.max(p.hi);
                }
                _ => merged.push(p),
            }
        }
        let two_pi = T::two_pi();
        if let [only] = merged.as_slice() {
            if only.lo <= T::tol() && only.hi >= two_pi - T::tol() {
                return Self::full();
            }
        }
        AngularSet {
            arcs: merged,
            full: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Stored arcs (split at 0). Empty when the set is full.
    pub fn arcs(&self) -> &[Arc<T>] {
        &self.arcs
    }

    /// Total angular measure.
    pub fn measure(&self) -> T {
        if self.full {
            return T::two_pi();
        }
        self.arcs.iter().fold(T::zero(), |acc, a| acc + a.width())
    }

    pub fn contains(&self, theta: T) -> bool {
        self.contains_with_tol(theta, T::tol())
    }

    pub fn contains_with_tol(&self, theta: T, tol: T) -> bool {
        if self.full {
            return true;
        }
        let t = normalize_angle(theta);
        let two_pi = T::two_pi();
        let within = |a: &Arc<T>, x: T| x >= a.lo - tol && x <= a.hi + tol;
        self.arcs
            .iter()
            .any(|a| within(a, t) || within(a, t + two_pi) || within(a, t - two_pi))
    }

    /// Contiguous arcs as `(start, end)` with `end ≥ start`, joining the
    /// pieces split at angle 0. `end` may exceed `2π`.
    pub fn circular_arcs(&self) -> Vec<(T, T)> {
        if self.full {
            return vec![(T::zero(), T::two_pi())];
        }
        let n = self.arcs.len();
        if n >= 2 {
            let first = self.arcs[0];
            let last = self.arcs[n - 1];
            if first.lo == T::zero() && last.hi == T::two_pi() {
                let mut out: Vec<(T, T)> = self.arcs[1..n - 1].iter().map(|a| (a.lo, a.hi)).collect();
                out.push((last.lo, first.hi + T::two_pi()));
                return out;
            }
        }
        self.arcs.iter().map(|a| (a.lo, a.hi)).collect()
    }

    /// Arc endpoints, in storage order, excluding the artificial split at 0.
    pub fn endpoints(&self) -> Vec<T> {
        let mut out = Vec::new();
        for (s, e) in self.circular_arcs() {
            if self.full {
                break;
            }
            out.push(normalize_angle(s));
            if e != s {
                out.push(normalize_angle(e));
            }
        }
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        if self.full || other.full {
            return Self::full();
        }
        let pieces = self.arcs.iter().chain(other.arcs.iter()).copied().collect();
        Self::from_pieces(pieces, T::tol())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        if self.full {
            return other.clone();
        }
        if other.full {
            return self.clone();
        }
        let mut pieces = Vec::new();
        for a in &self.arcs {
            for b in &other.arcs {
                let lo = a.lo.max(b.lo);
                let hi = a.hi.min(b.hi);
                // arcs touching within tolerance still meet
                if lo <= hi + T::tol() {
                    pieces.push(Arc {
                        lo: lo.min(hi),
                        hi: hi.max(lo),
                    });
                }
            }
        }
        Self::from_pieces(pieces, T::zero())
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.intersection(other).is_empty()
    }

    /// Widens every arc by `pad` on both sides.
    pub fn padded(&self, pad: T) -> Self {
        if self.full || pad <= T::zero() {
            return self.clone();
        }
        Self::from_ccw_arcs(
            self.circular_arcs()
                .into_iter()
                .map(|(s, e)| (s - pad, e - s + pad + pad)),
        )
    }

    /// Merges neighbouring arcs separated by a gap smaller than `gap`.
    pub fn close_gaps(&self, gap: T) -> Self {
        if self.full {
            return self.clone();
        }
        Self::from_ccw_arcs_with_tol(
            self.circular_arcs().into_iter().map(|(s, e)| (s, e - s)),
            gap,
        )
    }

    pub fn rotated(&self, angle: T) -> Self {
        if self.full || self.arcs.is_empty() {
            return self.clone();
        }
        Self::from_ccw_arcs(
            self.circular_arcs()
                .into_iter()
                .map(|(s, e)| (s + angle, e - s)),
        )
    }

    /// Complement of the largest gap: the smallest arc containing the set,
    /// as `(start, width)`. `None` for the empty set, `(0, 2π)` for full.
    pub fn enclosing_arc(&self) -> Option<(T, T)> {
        if self.full {
            return Some((T::zero(), T::two_pi()));
        }
        let arcs = self.circular_arcs();
        if arcs.is_empty() {
            return None;
        }
        let two_pi = T::two_pi();
        let n = arcs.len();
        let mut best_gap = -T::one();
        let mut best_after = 0usize;
        for i in 0..n {
            let (_, end) = arcs[i];
            let (next_start, _) = arcs[(i + 1) % n];
            let mut gap = next_start - end;
            if i + 1 == n {
                gap = gap + two_pi;
            }
            if gap > best_gap {
                best_gap = gap;
                best_after = (i + 1) % n;
            }
        }
        let start = arcs[best_after].0;
        Some((normalize_angle(start), two_pi - best_gap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    #[test]
    fn wrapping_arc_is_split_at_zero() {
        let s = AngularSet::from_ccw(1.5 * PI, PI);
        assert_eq!(s.arcs().len(), 2);
        assert_eq!(s.arcs()[0].lo, 0.0);
        assert!((s.arcs()[0].hi - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(s.arcs()[1].hi, TAU);
        assert!(s.contains(0.0));
        assert!(s.contains(1.9 * PI));
        assert!(!s.contains(PI));
        let joined = s.circular_arcs();
        assert_eq!(joined.len(), 1);
        assert!((joined[0].1 - joined[0].0 - PI).abs() < 1e-12);
    }

    #[test]
    fn full_and_empty() {
        assert!(AngularSet::<f64>::from_ccw(0.3, TAU).is_full());
        assert!(AngularSet::<f64>::empty().is_empty());
        assert_eq!(AngularSet::<f64>::full().measure(), TAU);
        let halves = AngularSet::from_ccw(0.0, PI).union(&AngularSet::from_ccw(PI, PI));
        assert!(halves.is_full());
    }

    #[test]
    fn touching_arcs_merge() {
        let s = AngularSet::from_ccw_arcs([(0.0, 1.0), (1.0, 0.5), (2.0, 0.1)]);
        assert_eq!(s.arcs().len(), 2);
        assert_eq!(s.arcs()[0], Arc { lo: 0.0, hi: 1.5 });
    }

    #[test]
    fn intersection_and_enclosing() {
        let a = AngularSet::from_ccw(0.0, FRAC_PI_2);
        let b = AngularSet::from_ccw(1.0, 2.0);
        let c = a.intersection(&b);
        assert_eq!(c.arcs(), &[Arc { lo: 1.0, hi: FRAC_PI_2 }]);
        let pts = AngularSet::from_ccw_arcs([(0.0, 0.0), (FRAC_PI_2, 0.0), (PI, 0.0)]);
        let (start, width) = pts.enclosing_arc().unwrap();
        assert_eq!(start, 0.0);
        assert_eq!(width, PI);
        let wrap = AngularSet::from_ccw_arcs([(5.5, 0.0), (0.5, 0.0)]);
        let (start, width) = wrap.enclosing_arc().unwrap();
        assert_eq!(start, 5.5);
        assert!((width - (0.5 + TAU - 5.5)).abs() < 1e-12);
    }

    #[test]
    fn padding_and_gap_closing() {
        let s = AngularSet::from_ccw_arcs([(0.1, 0.0), (0.2, 0.0)]);
        assert_eq!(s.arcs().len(), 2);
        assert_eq!(s.close_gaps(0.2).arcs().len(), 1);
        let p = AngularSet::point(0.0).padded(0.1);
        assert!(p.contains(TAU - 0.05));
        assert!(p.contains(0.05));
        assert!(!p.contains(0.2));
    }

    #[test]
    fn rotation_wraps() {
        let s = AngularSet::from_ccw(0.2, 0.5).rotated(-0.4);
        assert!(s.contains(TAU - 0.1));
        assert!(s.contains(0.25));
        assert!((s.measure() - 0.5).abs() < 1e-12);
    }
}
