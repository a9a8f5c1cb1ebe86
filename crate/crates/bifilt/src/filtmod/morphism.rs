//! Filtration-respecting linear maps and the strictness tests: per-filtration
//! strictness, the full multi-index strictness, and the injectivity criterion
//! relating the two.

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};
use crate::filtmod::module::FilteredModule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredMorphism {
    pub source: FilteredModule,
    pub target: FilteredModule,
    /// target.ambient_dim x source.ambient_dim, column convention.
    pub map: Matrix,
}

/// A violating multi-index with the two subspaces that disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessWitness {
    /// (filtration id, level) pairs, nondecreasing in the id.
    pub indices: Vec<(usize, i64)>,
    /// Im(f) meet the target piece at those indices.
    pub image_cap_piece: Subspace,
    /// f of the source piece at those indices.
    pub mapped_piece: Subspace,
}

impl FilteredMorphism {
    pub fn new(source: FilteredModule, target: FilteredModule, map: Matrix) -> Result<FilteredMorphism> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring.to_string(), target.ring.to_string()));
        }
        if source.n() != target.n() {
            return Err(Error::FiltrationCount(source.n(), target.n()));
        }
        if map.rows != target.ambient_dim || map.cols != source.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "map is {}x{}, expected {}x{}",
                map.rows, map.cols, target.ambient_dim, source.ambient_dim
            )));
        }
        let f = FilteredMorphism { source, target, map };
        for i in 1..=f.source.n() {
            for k in f.joint_level_range(i) {
                let img = f.source.chains[i - 1].step(k).image_under(&f.map)?;
                if !f.target.chains[i - 1].step(k).contains(&img) {
                    return Err(Error::NotFiltered(format!(
                        "image of filtration {i} level {k} escapes the target step"
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(module: &FilteredModule) -> FilteredMorphism {
        FilteredMorphism {
            source: module.clone(),
            target: module.clone(),
            map: Matrix::identity(&module.ring, module.ambient_dim),
        }
    }

    pub fn zero(source: &FilteredModule, target: &FilteredModule) -> Result<FilteredMorphism> {
        FilteredMorphism::new(
            source.clone(),
            target.clone(),
            Matrix::zero(&source.ring, target.ambient_dim, source.ambient_dim),
        )
    }

    /// g after f.
    pub fn compose(&self, g: &FilteredMorphism) -> Result<FilteredMorphism> {
        if g.source != self.target {
            return Err(Error::Precondition("composition middles disagree".into()));
        }
        FilteredMorphism::new(self.source.clone(), g.target.clone(), g.map.mul(&self.map))
    }

    pub fn image(&self) -> Subspace {
        Subspace::full(&self.source.ring, self.source.ambient_dim)
            .image_under(&self.map)
            .expect("shape checked at construction")
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(&self.map.kernel())
    }

    pub fn is_injective(&self) -> bool {
        self.map.rank() == self.source.ambient_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.map.rank() == self.target.ambient_dim
    }

    /// Joint window of source and target for filtration `i`, extended by one
    /// on each side; chains are constant outside.
    pub fn joint_level_range(&self, i: usize) -> std::ops::RangeInclusive<i64> {
        let s = &self.source.chains[i - 1];
        let t = &self.target.chains[i - 1];
        s.window_lo.min(t.window_lo) - 1..=s.window_hi.max(t.window_hi) + 1
    }

    /// Im(f) meet F^{(i)}_k = f(E^{(i)}_k) for every clamped level.
    pub fn is_strict_per_filtration(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.source.n() {
            return Err(Error::FiltrationId(i, self.source.n()));
        }
        let image = self.image();
        for k in self.joint_level_range(i) {
            let lhs = image.intersect(self.target.chains[i - 1].step(k))?;
            let rhs = self.source.chains[i - 1].step(k).image_under(&self.map)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full strictness over all nondecreasing index tuples and clamped
    /// levels; on failure the witness names a violating tuple. Tuples with a
    /// repeated filtration id collapse to the lower level, so for n = 2 the
    /// genuinely new content is the mixed (1, 2) family.
    pub fn is_strict(&self) -> Result<(bool, Option<StrictnessWitness>)> {
        let image = self.image();
        let n = self.source.n();
        // singleton ids (covers all tuples with i_1 = ... = i_n)
        for i in 1..=n {
            for k in self.joint_level_range(i) {
                if let Some(w) = self.violation(&image, &[(i, k)])? {
                    return Ok((false, Some(w)));
                }
            }
        }
        if n == 2 {
            for k1 in self.joint_level_range(1) {
                for k2 in self.joint_level_range(2) {
                    if let Some(w) = self.violation(&image, &[(1, k1), (2, k2)])? {
                        return Ok((false, Some(w)));
                    }
                }
            }
        }
        Ok((true, None))
    }

    fn violation(&self, image: &Subspace, indices: &[(usize, i64)]) -> Result<Option<StrictnessWitness>> {
        let target_piece = self.target.piece(indices)?;
        let lhs = image.intersect(&target_piece)?;
        let rhs = self.source.piece(indices)?.image_under(&self.map)?;
        if lhs != rhs {
            Ok(Some(StrictnessWitness {
                indices: indices.to_vec(),
                image_cap_piece: lhs,
                mapped_piece: rhs,
            }))
        } else {
            Ok(None)
        }
    }

    /// Strict and injective.
    pub fn is_strict_injective(&self) -> Result<bool> {
        Ok(self.is_injective() && self.is_strict()?.0)
    }

    /// Strict and surjective.
    pub fn is_strict_epi(&self) -> Result<bool> {
        Ok(self.is_surjective() && self.is_strict()?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;
    use crate::fixtures;

    #[test]
    fn identity_is_strict() {
        let q = Ring::rationals();
        let e = FilteredModule::trivial(&q, 3, 2);
        let id = FilteredMorphism::identity(&e);
        let (strict, witness) = id.is_strict().unwrap();
        assert!(strict);
        assert!(witness.is_none());
    }

    #[test]
    fn zero_morphism_is_per_filtration_strict() {
        let q = Ring::rationals();
        let e = FilteredModule::trivial(&q, 2, 2);
        let f = FilteredModule::trivial(&q, 3, 2);
        let z = FilteredMorphism::zero(&e, &f).unwrap();
        assert!(z.is_strict_per_filtration(1).unwrap());
        assert!(z.is_strict_per_filtration(2).unwrap());
        assert!(z.is_strict().unwrap().0);
    }

    #[test]
    fn summation_fixture_is_per_filtration_strict_but_not_strict() {
        let f = fixtures::remark_2_3_morphism();
        assert!(f.is_strict_per_filtration(1).unwrap());
        assert!(f.is_strict_per_filtration(2).unwrap());
        let (strict, witness) = f.is_strict().unwrap();
        assert!(!strict);
        let w = witness.unwrap();
        assert_eq!(w.indices, vec![(1, 0), (2, 0)]);
        // f(E_0^{(12)}) = 0 while Im(f) meets the piece in the line N
        assert_eq!(w.mapped_piece.dim(), 0);
        assert_eq!(w.image_cap_piece.dim(), 1);
    }

    #[test]
    fn unfiltered_map_rejected() {
        let q = Ring::rationals();
        let e = FilteredModule::trivial(&q, 1, 1);
        // target is zero below level 5: identity cannot respect it
        let t = FilteredModule::new(
            q.clone(),
            1,
            vec![crate::filtmod::chain::FiltrationChain::new(
                4,
                vec![Subspace::zero(&q, 1), Subspace::full(&q, 1)],
            )
            .unwrap()],
        )
        .unwrap();
        let m = Matrix::identity(&q, 1);
        assert!(matches!(
            FilteredMorphism::new(e, t, m),
            Err(Error::NotFiltered(_))
        ));
    }
}
