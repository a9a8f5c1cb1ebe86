//! Modules carrying one or two filtrations, the intersection pieces
//! E^{(i_1..i_m)}_{k_1..k_m}, the associated graded, and shifts.

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, QuotientView, Ring, Subspace};
use crate::filtmod::chain::FiltrationChain;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredModule {
    pub ring: Ring,
    pub ambient_dim: usize,
    /// One chain per filtration; length n with 1 <= n <= 2.
    pub chains: Vec<FiltrationChain>,
}

impl FilteredModule {
    pub fn new(ring: Ring, ambient_dim: usize, chains: Vec<FiltrationChain>) -> Result<FilteredModule> {
        if chains.is_empty() || chains.len() > 2 {
            return Err(Error::Precondition(format!(
                "n must be 1 or 2, got {}",
                chains.len()
            )));
        }
        for chain in &chains {
            if chain.ambient_dim() != ambient_dim {
                return Err(Error::DimMismatch(format!(
                    "chain ambient {} vs module ambient {}",
                    chain.ambient_dim(),
                    ambient_dim
                )));
            }
            if chain.ring() != &ring {
                return Err(Error::RingMismatch(chain.ring().to_string(), ring.to_string()));
            }
        }
        Ok(FilteredModule { ring, ambient_dim, chains })
    }

    /// Module with trivial filtrations in every slot.
    pub fn trivial(ring: &Ring, ambient_dim: usize, n: usize) -> FilteredModule {
        let chains = (0..n).map(|_| FiltrationChain::trivial(ring, ambient_dim)).collect();
        FilteredModule::new(ring.clone(), ambient_dim, chains).expect("trivial module")
    }

    pub fn zero(ring: &Ring, n: usize) -> FilteredModule {
        FilteredModule::trivial(ring, 0, n)
    }

    pub fn n(&self) -> usize {
        self.chains.len()
    }

    pub fn is_zero_module(&self) -> bool {
        self.ambient_dim == 0
    }

    pub fn chain(&self, filt: usize) -> Result<&FiltrationChain> {
        if filt == 0 || filt > self.n() {
            return Err(Error::FiltrationId(filt, self.n()));
        }
        Ok(&self.chains[filt - 1])
    }

    /// Intersection piece indexed by (filtration id, level) pairs; the empty
    /// list gives the full ambient space.
    pub fn piece(&self, indices: &[(usize, i64)]) -> Result<Subspace> {
        let mut acc = Subspace::full(&self.ring, self.ambient_dim);
        for &(i, k) in indices {
            let chain = self.chain(i)?;
            acc = acc.intersect(chain.step(k))?;
        }
        Ok(acc)
    }

    /// The all-pieces convenience for n = 2: chain 1 at k1 meet chain 2 at k2.
    /// For n = 1 the second index is ignored against chain 1.
    pub fn piece2(&self, k1: i64, k2: i64) -> Subspace {
        if self.n() == 1 {
            self.chains[0].step(k1.min(k2)).clone()
        } else {
            self.chains[0]
                .step(k1)
                .intersect(self.chains[1].step(k2))
                .expect("same ambient")
        }
    }

    /// Single-filtration associated graded E^{(i)}_k / E^{(i)}_{k-1}.
    pub fn gr1(&self, filt: usize, k: i64) -> Result<QuotientView> {
        let chain = self.chain(filt)?;
        QuotientView::new(chain.step(k), chain.step(k - 1))
    }

    /// Double associated graded at filtrations (i1, i2) and levels (k1, k2):
    /// piece(k1,k2) / (piece(k1-1,k2) + piece(k1,k2-1)).
    pub fn gr2_at(&self, i1: usize, i2: usize, k1: i64, k2: i64) -> Result<QuotientView> {
        let num = self.piece(&[(i1, k1), (i2, k2)])?;
        let d1 = self.piece(&[(i1, k1 - 1), (i2, k2)])?;
        let d2 = self.piece(&[(i1, k1), (i2, k2 - 1)])?;
        QuotientView::new(&num, &d1.sum(&d2)?)
    }

    /// gr at (1,2) for bifiltered modules; for n = 1 this degenerates to the
    /// single-filtration gr at min(k1, k2) against a shifted complement, so
    /// callers with n = 1 should use [`FilteredModule::gr1`]. Kept total for
    /// the n = 2 case the double gr is stated for.
    pub fn gr2(&self, k1: i64, k2: i64) -> Result<QuotientView> {
        if self.n() != 2 {
            return Err(Error::Precondition("double gr needs n = 2".into()));
        }
        self.gr2_at(1, 2, k1, k2)
    }

    /// Shift <l>: chain i reindexed by l_i.
    pub fn shift(&self, l: &[i64]) -> Result<FilteredModule> {
        if l.len() != self.n() {
            return Err(Error::FiltrationCount(l.len(), self.n()));
        }
        let chains = self.chains.iter().zip(l).map(|(c, &li)| c.shifted(li)).collect();
        FilteredModule::new(self.ring.clone(), self.ambient_dim, chains)
    }

    /// Window of filtration `filt` extended by one on each side; all
    /// quantifiers over Z reduce to this range because chains are constant
    /// outside their windows.
    pub fn level_range(&self, filt: usize) -> std::ops::RangeInclusive<i64> {
        let c = &self.chains[filt - 1];
        c.window_lo - 1..=c.window_hi + 1
    }

    pub fn is_biregular(&self) -> bool {
        self.chains.iter().all(|c| c.is_biregular())
    }

    /// Direct sum with block filtrations (step k = step k of each summand).
    pub fn direct_sum(&self, other: &FilteredModule) -> Result<FilteredModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.n() != other.n() {
            return Err(Error::FiltrationCount(self.n(), other.n()));
        }
        let amb = self.ambient_dim + other.ambient_dim;
        let mut chains = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let a = &self.chains[i];
            let b = &other.chains[i];
            let lo = a.window_lo.min(b.window_lo);
            let hi = a.window_hi.max(b.window_hi);
            let mut steps = Vec::with_capacity((hi - lo + 1) as usize);
            for k in lo..=hi {
                steps.push(block_sum(a.step(k), b.step(k), self.ambient_dim, other.ambient_dim));
            }
            chains.push(FiltrationChain::new(lo, steps)?);
        }
        FilteredModule::new(self.ring.clone(), amb, chains)
    }

    /// Sanity re-validation used when loading documents.
    pub fn validate(&self) -> Result<()> {
        FilteredModule::new(self.ring.clone(), self.ambient_dim, self.chains.clone()).map(|_| ())
    }
}

/// U + V inside the block direct sum of their ambients (U in the first block,
/// V in the second).
pub fn block_sum(u: &Subspace, v: &Subspace, dim_a: usize, dim_b: usize) -> Subspace {
    let ring = &u.ring;
    let amb = dim_a + dim_b;
    let mut rows = Vec::with_capacity(u.dim() + v.dim());
    for r in 0..u.dim() {
        let mut row = vec![ring.zero(); amb];
        row[..dim_a].clone_from_slice(&u.basis.row(r));
        rows.push(row);
    }
    for r in 0..v.dim() {
        let mut row = vec![ring.zero(); amb];
        row[dim_a..].clone_from_slice(&v.basis.row(r));
        rows.push(row);
    }
    if rows.is_empty() {
        return Subspace::zero(ring, amb);
    }
    Subspace::span(&Matrix::from_rows(ring, rows))
}

/// Embed a subspace of an m-dimensional block into a larger ambient at a
/// coordinate offset.
pub fn embed_at_offset(u: &Subspace, offset: usize, ambient: usize) -> Subspace {
    let ring = &u.ring;
    if u.dim() == 0 {
        return Subspace::zero(ring, ambient);
    }
    let rows: Vec<Vec<_>> = (0..u.dim())
        .map(|r| {
            let mut row = vec![ring.zero(); ambient];
            row[offset..offset + u.ambient_dim].clone_from_slice(&u.basis.row(r));
            row
        })
        .collect();
    Subspace::span(&Matrix::from_rows(ring, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_piece_is_everything() {
        let q = Ring::rationals();
        let e = FilteredModule::trivial(&q, 3, 1);
        assert!(e.piece(&[(1, 0)]).unwrap().is_full());
        assert!(e.piece(&[]).unwrap().is_full());
        assert!(e.piece(&[(1, -1)]).unwrap().is_zero());
        assert!(matches!(e.piece(&[(2, 0)]), Err(Error::FiltrationId(2, 1))));
    }

    #[test]
    fn gr_of_repeated_chain() {
        // E = Q^2, both filtrations 0 < span{(1,0)} at 0 < E at 1:
        // gr(0,0) and gr(1,1) are lines, the mixed spots vanish.
        let q = Ring::rationals();
        let line = Subspace::span_i64(&q, 2, &[&[1, 0]]);
        let chain = FiltrationChain::new(
            -1,
            vec![Subspace::zero(&q, 2), line, Subspace::full(&q, 2)],
        )
        .unwrap();
        let e = FilteredModule::new(q.clone(), 2, vec![chain.clone(), chain]).unwrap();
        assert_eq!(e.gr2(0, 0).unwrap().dim(), 1);
        assert_eq!(e.gr2(1, 1).unwrap().dim(), 1);
        assert_eq!(e.gr2(0, 1).unwrap().dim(), 0);
        assert_eq!(e.gr2(1, 0).unwrap().dim(), 0);
    }

    #[test]
    fn gr_dims_telescope_for_biregular() {
        let q = Ring::rationals();
        let line = Subspace::span_i64(&q, 2, &[&[1, 1]]);
        let c1 = FiltrationChain::new(-1, vec![Subspace::zero(&q, 2), line, Subspace::full(&q, 2)]).unwrap();
        let c2 = FiltrationChain::trivial(&q, 2);
        let e = FilteredModule::new(q, 2, vec![c1, c2]).unwrap();
        assert!(e.is_biregular());
        let mut total = 0;
        for k1 in e.level_range(1) {
            for k2 in e.level_range(2) {
                total += e.gr2(k1, k2).unwrap().dim();
            }
        }
        assert_eq!(total, 2);
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let q = Ring::rationals();
        let e = FilteredModule::trivial(&q, 2, 2);
        assert_eq!(e.shift(&[0, 0]).unwrap(), e);
        let moved = e.shift(&[1, -1]).unwrap();
        assert_eq!(moved.shift(&[-1, 1]).unwrap(), e);
        assert_eq!(moved.chains[0].jump_levels(), vec![-1]);
        assert_eq!(moved.chains[1].jump_levels(), vec![1]);
    }
}
