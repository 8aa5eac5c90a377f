//! Sorted disjoint unions of closed intervals on the nonnegative half-line.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Closed interval `[lo, hi]`; `hi` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn len(&self) -> T {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> Default for IntervalSet<T> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
        }
    }

    /// The degenerate set `{x}`.
    pub fn point(x: T) -> Self {
        IntervalSet {
            intervals: vec![Interval { lo: x, hi: x }],
        }
    }

    /// `[lo, ∞)`.
    pub fn half_line(lo: T) -> Self {
        IntervalSet {
            intervals: vec![Interval {
                lo,
                hi: T::infinity(),
            }],
        }
    }

    /// Validates and normalizes; intervals sharing an endpoint merge.
    pub fn new<I: IntoIterator<Item = (T, T)>>(pairs: I) -> Result<Self> {
        let mut out = Vec::new();
        for (lo, hi) in pairs {
            if lo.is_nan() || hi.is_nan() || !lo.is_finite() {
                return Err(Error::Invariant(format!("interval [{lo}, {hi}] is not finite")));
            }
            if lo < T::zero() {
                return Err(Error::Invariant(format!("negative radius {lo}")));
            }
            if hi < lo {
                return Err(Error::Invariant(format!("interval [{lo}, {hi}] has hi < lo")));
            }
            out.push(Interval { lo, hi });
        }
        Ok(Self::normalized(out, T::zero()))
    }

    /// Sorts and merges intervals whose gap is at most `gap_tol`.
    pub fn normalized(mut intervals: Vec<Interval<T>>, gap_tol: T) -> Self {
        intervals.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite endpoints"));
        let mut merged: Vec<Interval<T>> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi + gap_tol => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn inf(&self) -> Option<T> {
        self.intervals.first().map(|iv| iv.lo)
    }

    pub fn contains(&self, x: T) -> bool {
        // binary search on the sorted lower endpoints
        let idx = self.intervals.partition_point(|iv| iv.lo <= x);
        idx > 0 && self.intervals[idx - 1].contains(x)
    }

    pub fn union(&self, other: &Self) -> Self {
        let all = self.intervals.iter().chain(other.intervals.iter()).copied().collect();
        Self::normalized(all, T::zero())
    }

    pub fn close_gaps(&self, gap_tol: T) -> Self {
        Self::normalized(self.intervals.clone(), gap_tol)
    }

    /// True when every point of `self` lies in `other` (up to `tol`).
    pub fn is_subset_of(&self, other: &Self, tol: T) -> bool {
        self.intervals.iter().all(|iv| {
            other
                .intervals
                .iter()
                .any(|o| iv.lo >= o.lo - tol && iv.hi <= o.hi + tol)
        })
    }

    /// Length of the longest interval in `[x, x + h] \ A`.
    pub fn longest_gap(&self, x: T, h: T) -> T {
        let end = x + h;
        let mut cursor = x;
        let mut best = T::zero();
        for iv in &self.intervals {
            if iv.hi < x {
                continue;
            }
            if iv.lo > end {
                break;
            }
            if iv.lo > cursor {
                best = best.max(iv.lo - cursor);
            }
            cursor = cursor.max(iv.hi);
            if cursor >= end {
                return best;
            }
        }
        best.max(end - cursor)
    }
}
