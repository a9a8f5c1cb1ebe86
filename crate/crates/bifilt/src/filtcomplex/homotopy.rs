//! Filtered null-homotopies: h with f = d h + h d, every component
//! respecting both filtrations levelwise, found by exact linear solving over
//! the filtered-map subspaces.

use crate::error::Result;
use crate::exactlin::{Matrix, Scalar, Subspace};
use crate::filtcomplex::chain_map::ChainMap;
use crate::filtmod::hom_tensor::filtered_maps;

/// Components h^q: source^q -> target^{q-1}, each filtration-respecting.
#[derive(Debug, Clone)]
pub struct FilteredHomotopy {
    pub deg_lo: i64,
    pub components: Vec<Matrix>,
}

impl FilteredHomotopy {
    pub fn component(&self, q: i64, rows: usize, cols: usize, ring: &crate::exactlin::Ring) -> Matrix {
        let idx = q - self.deg_lo;
        if idx < 0 || idx as usize >= self.components.len() {
            Matrix::zero(ring, rows, cols)
        } else {
            self.components[idx as usize].clone()
        }
    }
}

/// Decide whether `f` is filtered-homotopic to zero; returns a witness
/// homotopy when it is.
///
/// Unknowns are coordinates in the subspace of filtered maps
/// source^q -> target^{q-1} for each degree; the equation f = d h + h d is a
/// linear system in those coordinates and is solved exactly.
pub fn is_null_homotopic(f: &ChainMap) -> Result<Option<FilteredHomotopy>> {
    let src = &f.source;
    let tgt = &f.target;
    let ring = src.ring().clone();
    let deg_lo = src.deg_lo.min(tgt.deg_lo);
    let deg_hi = src.deg_hi.max(tgt.deg_hi) + 1;

    // filtered-map subspace per degree (h^q lands one degree down)
    let mut bases: Vec<Subspace> = Vec::new();
    let mut offsets: Vec<usize> = Vec::new();
    let mut total = 0usize;
    for q in deg_lo..=deg_hi {
        let sub = filtered_maps(&src.term_owned(q), &tgt.term_owned(q - 1))?;
        offsets.push(total);
        total += sub.dim();
        bases.push(sub);
    }

    // one equation block per degree: entries of f^q = d_T^{q-1} h^q + h^{q+1} d_S^q
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for q in deg_lo..=deg_hi {
        let (m, n) = (tgt.dim(q), src.dim(q));
        if m * n == 0 {
            continue;
        }
        let fq = f.component(q);
        let dt = tgt.diff(q - 1);
        let ds = src.diff(q);
        // coefficient of each unknown on each entry (r, c) of degree q
        let mut block = vec![vec![ring.zero(); total]; m * n];
        let qi = (q - deg_lo) as usize;
        // d_T^{q-1} h^q term: h^q has shape tgt.dim(q-1) x n
        {
            let sub = &bases[qi];
            let hcols = n;
            for b in 0..sub.dim() {
                let hvec = sub.basis.row(b); // vectorized tgt.dim(q-1) x n
                for r in 0..m {
                    for c in 0..n {
                        let mut acc = ring.zero();
                        for k in 0..tgt.dim(q - 1) {
                            let coeff = dt.get(r, k);
                            if ring.is_zero(coeff) {
                                continue;
                            }
                            acc = ring.add(&acc, &ring.mul(coeff, &hvec[k * hcols + c]));
                        }
                        let cell = &mut block[r * n + c][offsets[qi] + b];
                        *cell = ring.add(cell, &acc);
                    }
                }
            }
        }
        // h^{q+1} d_S^q term: h^{q+1} has shape m x src.dim(q+1)
        if q + 1 <= deg_hi {
            let qj = (q + 1 - deg_lo) as usize;
            let sub = &bases[qj];
            let hcols = src.dim(q + 1);
            for b in 0..sub.dim() {
                let hvec = sub.basis.row(b);
                for r in 0..m {
                    for c in 0..n {
                        let mut acc = ring.zero();
                        for k in 0..hcols {
                            let coeff = ds.get(k, c);
                            if ring.is_zero(coeff) {
                                continue;
                            }
                            acc = ring.add(&acc, &ring.mul(&hvec[r * hcols + k], coeff));
                        }
                        let cell = &mut block[r * n + c][offsets[qj] + b];
                        *cell = ring.add(cell, &acc);
                    }
                }
            }
        }
        for r in 0..m {
            for c in 0..n {
                rows.push(block[r * n + c].clone());
                rhs.push(fq.get(r, c).clone());
            }
        }
    }

    if rows.is_empty() {
        return Ok(Some(FilteredHomotopy { deg_lo, components: vec![] }));
    }
    let system = Matrix::from_rows(&ring, rows);
    let Some(solution) = system.solve(&rhs)? else {
        return Ok(None);
    };
    // reassemble the h components from subspace coordinates
    let mut components = Vec::new();
    for (qi, q) in (deg_lo..=deg_hi).enumerate() {
        let (hrows, hcols) = (tgt.dim(q - 1), src.dim(q));
        let sub = &bases[qi];
        let mut h = Matrix::zero(&ring, hrows, hcols);
        for b in 0..sub.dim() {
            let coeff = &solution[offsets[qi] + b];
            if ring.is_zero(coeff) {
                continue;
            }
            let hvec = sub.basis.row(b);
            for r in 0..hrows {
                for c in 0..hcols {
                    let v = ring.add(h.get(r, c), &ring.mul(coeff, &hvec[r * hcols + c]));
                    h.set(r, c, v);
                }
            }
        }
        components.push(h);
    }
    Ok(Some(FilteredHomotopy { deg_lo, components }))
}

/// f + d h + h d (used to perturb maps by a homotopy in tests and checks).
pub fn add_homotopy(f: &ChainMap, h: &FilteredHomotopy) -> Result<ChainMap> {
    let src = f.source.clone();
    let tgt = f.target.clone();
    let ring = src.ring().clone();
    let f2 = f.clone();
    let h2 = h.clone();
    ChainMap::new(src.clone(), tgt.clone(), move |q| {
        let base = f2.component(q);
        let hq = h2.component(q, tgt.dim(q - 1), src.dim(q), &ring);
        let hq1 = h2.component(q + 1, tgt.dim(q), src.dim(q + 1), &ring);
        base.add(&tgt.diff(q - 1).mul(&hq)).add(&hq1.mul(&src.diff(q)))
    })
}

/// Verify f = d h + h d exactly.
pub fn homotopy_witnesses(f: &ChainMap, h: &FilteredHomotopy) -> bool {
    let src = &f.source;
    let tgt = &f.target;
    let ring = src.ring().clone();
    let lo = src.deg_lo.min(tgt.deg_lo) - 1;
    let hi = src.deg_hi.max(tgt.deg_hi) + 1;
    for q in lo..=hi {
        let hq = h.component(q, tgt.dim(q - 1), src.dim(q), &ring);
        let hq1 = h.component(q + 1, tgt.dim(q), src.dim(q + 1), &ring);
        let rhs = tgt.diff(q - 1).mul(&hq).add(&hq1.mul(&src.diff(q)));
        if f.component(q) != rhs {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;
    use crate::filtcomplex::complex::FilteredComplex;
    use crate::filtmod::module::FilteredModule;

    #[test]
    fn zero_map_has_zero_homotopy() {
        let q = Ring::rationals();
        let m = FilteredModule::trivial(&q, 2, 2);
        let c = FilteredComplex::one_term(m, 0);
        let z = ChainMap::zero(&c, &c).unwrap();
        let h = is_null_homotopic(&z).unwrap().unwrap();
        assert!(homotopy_witnesses(&z, &h));
    }

    #[test]
    fn identity_on_contractible_complex_is_null_homotopic() {
        // 0 -> Q -> Q -> 0 with the identity differential
        let q = Ring::rationals();
        let m = FilteredModule::trivial(&q, 1, 1);
        let c = FilteredComplex::new(0, vec![m.clone(), m], vec![Matrix::identity(&q, 1)]).unwrap();
        let id = ChainMap::identity(&c);
        let h = is_null_homotopic(&id).unwrap().expect("contractible");
        assert!(homotopy_witnesses(&id, &h));
    }

    #[test]
    fn identity_on_module_is_not_null_homotopic() {
        let q = Ring::rationals();
        let m = FilteredModule::trivial(&q, 1, 1);
        let c = FilteredComplex::one_term(m, 0);
        let id = ChainMap::identity(&c);
        assert!(is_null_homotopic(&id).unwrap().is_none());
    }
}
