//! Geometric scale ladders `t_k = t0·q^k`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleLadder<T> {
    t0: T,
    q: T,
    depth: usize,
}

impl<T: Scalar> Default for ScaleLadder<T> {
    /// `t0 = 1`, `q = 1/2`, `K = 12`.
    fn default() -> Self {
        ScaleLadder {
            t0: T::one(),
            q: T::of(0.5),
            depth: 12,
        }
    }
}

impl<T: Scalar> ScaleLadder<T> {
    pub fn new(t0: T, q: T, depth: usize) -> Result<Self> {
        if !(t0 > T::zero()) || !t0.is_finite() {
            return Err(Error::InvalidLadder(format!("t0 = {t0} must be positive and finite")));
        }
        if !(q > T::zero() && q < T::one()) {
            return Err(Error::InvalidLadder(format!("q = {q} must lie in (0, 1)")));
        }
        if depth == 0 {
            return Err(Error::InvalidLadder("depth must be at least 1".into()));
        }
        Ok(ScaleLadder { t0, q, depth })
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn scale(&self, k: usize) -> T {
        self.t0 * self.q.powi(k as i32)
    }

    /// Scales in decreasing order.
    pub fn scales(&self) -> Vec<T> {
        (0..self.depth).map(|k| self.scale(k)).collect()
    }

    pub fn finest(&self) -> T {
        self.scale(self.depth - 1)
    }

    pub fn require_depth(&self, needed: usize) -> Result<()> {
        if self.depth < needed {
            Err(Error::ShallowLadder {
                depth: self.depth,
                needed,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_reaches_quarter_milli() {
        let l = ScaleLadder::<f64>::default();
        let s = l.scales();
        assert_eq!(s.len(), 12);
        assert_eq!(s[0], 1.0);
        assert_eq!(l.finest(), 2f64.powi(-11));
        assert!(s.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn validation() {
        assert!(ScaleLadder::new(1.0, 1.0, 4).is_err());
        assert!(ScaleLadder::new(0.0, 0.5, 4).is_err());
        assert!(ScaleLadder::new(1.0, 0.5, 0).is_err());
        assert_eq!(
            ScaleLadder::new(1.0, 0.5, 3).unwrap().require_depth(4),
            Err(Error::ShallowLadder { depth: 3, needed: 4 })
        );
    }
}
