//! Bounded complexes of filtered modules with filtration-respecting
//! differentials, their piece subcomplexes, cohomology, and strict exactness.

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, QuotientView, Ring, Subspace};
use crate::filtmod::module::FilteredModule;
use crate::filtmod::morphism::FilteredMorphism;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    pub deg_lo: i64,
    pub deg_hi: i64,
    /// terms[j] sits in degree deg_lo + j.
    pub terms: Vec<FilteredModule>,
    /// diffs[j]: term in degree deg_lo + j -> next term; length terms - 1.
    pub diffs: Vec<Matrix>,
}

impl FilteredComplex {
    pub fn new(deg_lo: i64, terms: Vec<FilteredModule>, diffs: Vec<Matrix>) -> Result<FilteredComplex> {
        if terms.is_empty() {
            return Err(Error::Precondition("a complex needs at least one term".into()));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::Precondition(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        let ring = terms[0].ring.clone();
        let n = terms[0].n();
        for t in &terms {
            if t.ring != ring {
                return Err(Error::RingMismatch(t.ring.to_string(), ring.to_string()));
            }
            if t.n() != n {
                return Err(Error::FiltrationCount(t.n(), n));
            }
        }
        let c = FilteredComplex {
            deg_lo,
            deg_hi: deg_lo + terms.len() as i64 - 1,
            terms,
            diffs,
        };
        for q in c.deg_lo..c.deg_hi {
            // each differential must be a filtered morphism
            FilteredMorphism::new(c.term(q).clone(), c.term(q + 1).clone(), c.diff(q))?;
        }
        for q in c.deg_lo..c.deg_hi - 0 {
            let dd = c.diff(q + 1).mul(&c.diff(q));
            if !dd.is_zero() {
                return Err(Error::Precondition(format!("d.d != 0 at degree {q}")));
            }
        }
        Ok(c)
    }

    /// A single module placed in one degree.
    pub fn one_term(module: FilteredModule, degree: i64) -> FilteredComplex {
        FilteredComplex {
            deg_lo: degree,
            deg_hi: degree,
            terms: vec![module],
            diffs: vec![],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.terms[0].ring
    }

    pub fn n(&self) -> usize {
        self.terms[0].n()
    }

    fn zero_term(&self) -> FilteredModule {
        FilteredModule::zero(self.ring(), self.n())
    }

    /// Term in degree q; zero module outside the stored range.
    pub fn term(&self, q: i64) -> &FilteredModule {
        if q < self.deg_lo || q > self.deg_hi {
            // terms outside the window are zero; a shared static is not
            // possible because the ring is dynamic, so callers outside the
            // range go through term_owned
            panic!("term({q}) outside [{}, {}]; use term_owned", self.deg_lo, self.deg_hi);
        }
        &self.terms[(q - self.deg_lo) as usize]
    }

    pub fn term_owned(&self, q: i64) -> FilteredModule {
        if q < self.deg_lo || q > self.deg_hi {
            self.zero_term()
        } else {
            self.terms[(q - self.deg_lo) as usize].clone()
        }
    }

    pub fn dim(&self, q: i64) -> usize {
        if q < self.deg_lo || q > self.deg_hi {
            0
        } else {
            self.terms[(q - self.deg_lo) as usize].ambient_dim
        }
    }

    /// Differential out of degree q (zero matrix outside the range).
    pub fn diff(&self, q: i64) -> Matrix {
        if q >= self.deg_lo && q < self.deg_hi {
            self.diffs[(q - self.deg_lo) as usize].clone()
        } else {
            Matrix::zero(self.ring(), self.dim(q + 1), self.dim(q))
        }
    }

    /// Shift [s]: term q of the result is term q + s of self, differential
    /// negated s times.
    pub fn shifted(&self, s: i64) -> FilteredComplex {
        let diffs = self
            .diffs
            .iter()
            .map(|d| if s % 2 == 0 { d.clone() } else { d.neg() })
            .collect();
        FilteredComplex {
            deg_lo: self.deg_lo - s,
            deg_hi: self.deg_hi - s,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Filtration shift <l> applied to every term.
    pub fn filtration_shift(&self, l: &[i64]) -> Result<FilteredComplex> {
        let terms = self.terms.iter().map(|t| t.shift(l)).collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(self.deg_lo, terms, self.diffs.clone())
    }

    pub fn direct_sum(&self, other: &FilteredComplex) -> Result<FilteredComplex> {
        let lo = self.deg_lo.min(other.deg_lo);
        let hi = self.deg_hi.max(other.deg_hi);
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for q in lo..=hi {
            terms.push(self.term_owned(q).direct_sum(&other.term_owned(q))?);
            if q < hi {
                diffs.push(self.diff(q).block_diag(&other.diff(q)));
            }
        }
        FilteredComplex::new(lo, terms, diffs)
    }

    /// Joint clamped window of filtration i over all terms, extended by one.
    pub fn level_range(&self, i: usize) -> std::ops::RangeInclusive<i64> {
        let lo = self.terms.iter().map(|t| t.chains[i - 1].window_lo).min().unwrap();
        let hi = self.terms.iter().map(|t| t.chains[i - 1].window_hi).max().unwrap();
        lo - 1..=hi + 1
    }

    /// Kernel of d^q intersected with a piece of term q.
    pub fn cycles(&self, q: i64, at: &[(usize, i64)]) -> Result<Subspace> {
        let piece = self.term_owned(q).piece(at)?;
        let ker = Subspace::span(&self.diff(q).kernel());
        piece.intersect(&ker)
    }

    /// Image of the piece of term q-1 under d^{q-1}.
    pub fn boundaries(&self, q: i64, at: &[(usize, i64)]) -> Result<Subspace> {
        if q - 1 < self.deg_lo || q - 1 > self.deg_hi {
            let ring = self.ring();
            return Ok(Subspace::zero(ring, self.dim(q)));
        }
        let piece = self.term_owned(q - 1).piece(at)?;
        piece.image_under(&self.diff(q - 1))
    }

    /// Cohomology of the piece subcomplex selected by `at` (empty list means
    /// the underlying complex) at degree q, as a quotient view with a basis
    /// of representatives.
    pub fn cohomology(&self, q: i64, at: &[(usize, i64)]) -> Result<QuotientView> {
        let z = self.cycles(q, at)?;
        let b = self.boundaries(q, at)?;
        QuotientView::new(&z, &b)
    }

    pub fn cohomology_dim(&self, q: i64, at: &[(usize, i64)]) -> Result<usize> {
        Ok(self.cohomology(q, at)?.dim())
    }

    /// Every multi-index whose piece subcomplexes strict exactness inspects:
    /// the underlying complex (empty list), all single-filtration levels, and
    /// for n = 2 the mixed (1, k1), (2, k2) family over joint windows.
    pub fn strictness_index_set(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![vec![]];
        for i in 1..=self.n() {
            for k in self.level_range(i) {
                out.push(vec![(i, k)]);
            }
        }
        if self.n() == 2 {
            for k1 in self.level_range(1) {
                for k2 in self.level_range(2) {
                    out.push(vec![(1, k1), (2, k2)]);
                }
            }
        }
        out
    }

    /// Strict exactness: the underlying complex and every clamped piece
    /// subcomplex are exact in every degree. The witness is (degree, piece).
    pub fn is_strictly_exact(&self) -> Result<(bool, Option<(i64, Vec<(usize, i64)>)>)> {
        for at in self.strictness_index_set() {
            for q in self.deg_lo..=self.deg_hi {
                let z = self.cycles(q, &at)?;
                let b = self.boundaries(q, &at)?;
                if z != b {
                    return Ok((false, Some((q, at))));
                }
            }
        }
        Ok((true, None))
    }

    pub fn is_biregular(&self) -> bool {
        self.terms.iter().all(|t| t.is_biregular())
    }

    /// First (term degree, filtration id) whose chain is not biregular.
    pub fn biregularity_defect(&self) -> Option<(i64, usize)> {
        for q in self.deg_lo..=self.deg_hi {
            for i in 1..=self.n() {
                if !self.term(q).chains[i - 1].is_biregular() {
                    return Some((q, i));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        FilteredComplex::new(self.deg_lo, self.terms.clone(), self.diffs.clone()).map(|_| ())
    }
}

/// An unfiltered complex with explicit term dimensions; what gr and the piece
/// functors land in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainComplex {
    pub ring: Ring,
    pub deg_lo: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<Matrix>,
}

impl PlainComplex {
    pub fn deg_hi(&self) -> i64 {
        self.deg_lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, q: i64) -> usize {
        if q < self.deg_lo || q > self.deg_hi() {
            0
        } else {
            self.dims[(q - self.deg_lo) as usize]
        }
    }

    pub fn diff(&self, q: i64) -> Matrix {
        if q >= self.deg_lo && q < self.deg_hi() {
            self.diffs[(q - self.deg_lo) as usize].clone()
        } else {
            Matrix::zero(&self.ring, self.dim(q + 1), self.dim(q))
        }
    }

    pub fn cohomology(&self, q: i64) -> QuotientView {
        let z = Subspace::span(&self.diff(q).kernel());
        let b = Subspace::full(&self.ring, self.dim(q - 1))
            .image_under(&self.diff(q - 1))
            .expect("shapes align");
        QuotientView::new(&z, &b).expect("boundaries are cycles")
    }

    pub fn cohomology_dim(&self, q: i64) -> usize {
        self.cohomology(q).dim()
    }

    pub fn is_exact(&self) -> bool {
        (self.deg_lo..=self.deg_hi()).all(|q| self.cohomology_dim(q) == 0)
    }
}

/// The gr complex of `c` at (k1, k2): the double associated graded applied
/// degreewise, with the induced differentials. For n = 1 pass the level as
/// k1; k2 is ignored.
pub fn gr_complex(c: &FilteredComplex, k1: i64, k2: i64) -> Result<PlainComplex> {
    let mut views = Vec::new();
    for q in c.deg_lo..=c.deg_hi {
        let t = c.term(q);
        let view = if c.n() == 1 { t.gr1(1, k1)? } else { t.gr2(k1, k2)? };
        views.push(view);
    }
    let dims = views.iter().map(|v| v.dim()).collect();
    let mut diffs = Vec::new();
    for j in 0..views.len().saturating_sub(1) {
        diffs.push(views[j].induced_map(&c.diffs[j], &views[j + 1]));
    }
    Ok(PlainComplex { ring: c.ring().clone(), deg_lo: c.deg_lo, dims, diffs })
}

/// The piece subcomplex of `c` at a multi-index, in coordinates given by the
/// RREF bases of the pieces.
pub fn piece_complex(c: &FilteredComplex, at: &[(usize, i64)]) -> Result<PlainComplex> {
    let ring = c.ring().clone();
    let mut pieces = Vec::new();
    for q in c.deg_lo..=c.deg_hi {
        pieces.push(c.term(q).piece(at)?);
    }
    let dims: Vec<usize> = pieces.iter().map(|p| p.dim()).collect();
    let mut diffs = Vec::new();
    for j in 0..pieces.len().saturating_sub(1) {
        let (src, tgt) = (&pieces[j], &pieces[j + 1]);
        let mut m = Matrix::zero(&ring, tgt.dim(), src.dim());
        for col in 0..src.dim() {
            let image = c.diffs[j].apply(&src.basis.row(col));
            let coords = tgt
                .basis
                .transpose()
                .solve(&image)?
                .ok_or_else(|| Error::NotFiltered("piece not preserved by differential".into()))?;
            for (row, v) in coords.into_iter().enumerate() {
                m.set(row, col, v);
            }
        }
        diffs.push(m);
    }
    Ok(PlainComplex { ring, deg_lo: c.deg_lo, dims, diffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn identity_two_term_complex_is_exact() {
        let m = FilteredModule::trivial(&q(), 1, 1);
        let c = FilteredComplex::new(
            0,
            vec![m.clone(), m],
            vec![Matrix::identity(&q(), 1)],
        )
        .unwrap();
        for deg in -1..=2 {
            assert_eq!(c.cohomology_dim(deg, &[]).unwrap(), 0);
        }
        assert!(c.is_strictly_exact().unwrap().0);
    }

    #[test]
    fn zero_differential_cohomology_is_the_term() {
        let m = FilteredModule::trivial(&q(), 2, 1);
        let c = FilteredComplex::new(
            0,
            vec![m.clone(), m],
            vec![Matrix::zero(&q(), 2, 2)],
        )
        .unwrap();
        assert_eq!(c.cohomology_dim(0, &[]).unwrap(), 2);
        assert_eq!(c.cohomology_dim(1, &[]).unwrap(), 2);
    }

    #[test]
    fn piece_jump_mismatch_creates_piece_cohomology() {
        // E^0 piece empty at level -1, E^1 piece everything, identity
        // differential: the underlying complex is exact but the (1,-1)-piece
        // subcomplex has cohomology in degree 1.
        let ring = q();
        let e0 = FilteredModule::trivial(&ring, 1, 1); // jumps at 0
        let e1 = FilteredModule::new(
            ring.clone(),
            1,
            vec![crate::filtmod::chain::FiltrationChain::new(
                -2,
                vec![Subspace::zero(&ring, 1), Subspace::full(&ring, 1)],
            )
            .unwrap()],
        )
        .unwrap(); // jumps at -1
        let c = FilteredComplex::new(0, vec![e0, e1], vec![Matrix::identity(&ring, 1)]).unwrap();
        assert_eq!(c.cohomology_dim(0, &[]).unwrap(), 0);
        assert_eq!(c.cohomology_dim(1, &[]).unwrap(), 0);
        assert_eq!(c.cohomology_dim(1, &[(1, -1)]).unwrap(), 1);
        let (exact, witness) = c.is_strictly_exact().unwrap();
        assert!(!exact);
        assert_eq!(witness.unwrap(), (1, vec![(1, -1)]));
    }

    #[test]
    fn dd_nonzero_rejected() {
        let m = FilteredModule::trivial(&q(), 1, 1);
        let id = Matrix::identity(&q(), 1);
        let bad = FilteredComplex::new(0, vec![m.clone(), m.clone(), m], vec![id.clone(), id]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn gr_complex_of_trivial_filtration_is_underlying() {
        let m = FilteredModule::trivial(&q(), 2, 2);
        let c = FilteredComplex::new(0, vec![m.clone(), m], vec![Matrix::identity(&q(), 2)]).unwrap();
        let g = gr_complex(&c, 0, 0).unwrap();
        assert_eq!(g.dims, vec![2, 2]);
        assert!(g.is_exact());
        let off = gr_complex(&c, 1, 0).unwrap();
        assert_eq!(off.dims, vec![0, 0]);
    }
}
