//! A window-clamped increasing filtration: finitely many recorded steps,
//! constant below and above the window. Filtrations are not assumed
//! exhaustive (top may be proper) nor separated (bottom may be nonzero).

use crate::error::{Error, Result};
use crate::exactlin::{Ring, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationChain {
    pub window_lo: i64,
    pub window_hi: i64,
    /// steps[j] is the subspace at level window_lo + j; ascending.
    pub steps: Vec<Subspace>,
}

impl FiltrationChain {
    pub fn new(window_lo: i64, steps: Vec<Subspace>) -> Result<FiltrationChain> {
        if steps.is_empty() {
            return Err(Error::Precondition("a chain needs at least one step".into()));
        }
        for j in 1..steps.len() {
            if !steps[j].contains(&steps[j - 1]) {
                return Err(Error::ChainNotAscending(window_lo + j as i64));
            }
        }
        let window_hi = window_lo + steps.len() as i64 - 1;
        Ok(FiltrationChain { window_lo, window_hi, steps })
    }

    /// The trivial filtration: 0 below level 0, everything from level 0 on.
    pub fn trivial(ring: &Ring, ambient_dim: usize) -> FiltrationChain {
        FiltrationChain::new(
            -1,
            vec![Subspace::zero(ring, ambient_dim), Subspace::full(ring, ambient_dim)],
        )
        .expect("trivial chain is ascending")
    }

    /// Constant chain (every level equals `value`).
    pub fn constant(value: Subspace) -> FiltrationChain {
        FiltrationChain::new(0, vec![value]).expect("single step")
    }

    pub fn ambient_dim(&self) -> usize {
        self.steps[0].ambient_dim
    }

    pub fn ring(&self) -> &Ring {
        &self.steps[0].ring
    }

    /// Level lookup with window clamping.
    pub fn step(&self, k: i64) -> &Subspace {
        let idx = (k.clamp(self.window_lo, self.window_hi) - self.window_lo) as usize;
        &self.steps[idx]
    }

    pub fn bottom(&self) -> &Subspace {
        &self.steps[0]
    }

    pub fn top(&self) -> &Subspace {
        self.steps.last().unwrap()
    }

    /// Finite in the sense of [D1]: reaches 0 below and the whole module above.
    pub fn is_biregular(&self) -> bool {
        self.bottom().is_zero() && self.top().is_full()
    }

    /// Reindexed chain P<l> with P<l>_k = P_{l+k}.
    pub fn shifted(&self, l: i64) -> FiltrationChain {
        FiltrationChain {
            window_lo: self.window_lo - l,
            window_hi: self.window_hi - l,
            steps: self.steps.clone(),
        }
    }

    /// Drop window margins that repeat a neighbouring step; the represented
    /// Z-indexed family is unchanged.
    pub fn normalized(&self) -> FiltrationChain {
        let mut lo = 0usize;
        let mut hi = self.steps.len() - 1;
        while lo < hi && self.steps[lo] == self.steps[lo + 1] {
            lo += 1;
        }
        while hi > lo && self.steps[hi] == self.steps[hi - 1] {
            hi -= 1;
        }
        FiltrationChain {
            window_lo: self.window_lo + lo as i64,
            window_hi: self.window_lo + hi as i64,
            steps: self.steps[lo..=hi].to_vec(),
        }
    }

    /// Levels where the chain strictly grows.
    pub fn jump_levels(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for j in 1..self.steps.len() {
            if self.steps[j] != self.steps[j - 1] {
                out.push(self.window_lo + j as i64);
            }
        }
        out
    }

    /// True if the two chains define the same Z-indexed family.
    pub fn same_family(&self, other: &FiltrationChain) -> bool {
        let lo = self.window_lo.min(other.window_lo);
        let hi = self.window_hi.max(other.window_hi);
        (lo..=hi).all(|k| self.step(k) == other.step(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamping_is_constant_outside_window() {
        let q = Ring::rationals();
        let chain = FiltrationChain::trivial(&q, 2);
        assert!(chain.step(-100).is_zero());
        assert!(chain.step(100).is_full());
        assert!(chain.step(0).is_full());
        assert!(chain.step(-1).is_zero());
    }

    #[test]
    fn non_ascending_rejected() {
        let q = Ring::rationals();
        let bad = FiltrationChain::new(
            0,
            vec![Subspace::full(&q, 2), Subspace::zero(&q, 2)],
        );
        assert!(matches!(bad, Err(Error::ChainNotAscending(1))));
    }

    #[test]
    fn shift_and_unshift_roundtrip() {
        let q = Ring::rationals();
        let chain = FiltrationChain::trivial(&q, 3);
        let back = chain.shifted(2).shifted(-2);
        assert_eq!(chain, back);
        // a two-step chain shifted by 1 moves the jump from 0 to -1
        assert_eq!(chain.shifted(1).jump_levels(), vec![-1]);
        assert_eq!(chain.jump_levels(), vec![0]);
    }

    #[test]
    fn normalization_trims_repeats() {
        let q = Ring::rationals();
        let z = Subspace::zero(&q, 1);
        let f = Subspace::full(&q, 1);
        let chain = FiltrationChain::new(-3, vec![z.clone(), z.clone(), f.clone(), f.clone()]).unwrap();
        let norm = chain.normalized();
        assert_eq!(norm.window_lo, -2);
        assert_eq!(norm.window_hi, -1);
        assert!(norm.same_family(&chain));
    }
}
