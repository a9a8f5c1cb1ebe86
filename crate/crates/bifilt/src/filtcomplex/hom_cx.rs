//! The filtered Hom complex: term m is the product over q of the filtered
//! Hom modules Hom(E^q, F^{q+m}), with differential
//! d^m = prod_q ((-1)^{m+1} pre(d_E^q) + post(d_F^{q+m})).

use crate::error::Result;
use crate::exactlin::Matrix;
use crate::filtcomplex::complex::FilteredComplex;
use crate::filtmod::hom_tensor::hom_filtered;
use crate::filtmod::module::FilteredModule;

/// Coordinate layout of one Hom-complex term: for each source degree q the
/// block Hom(E^q, F^{q+m}) with its offset and matrix shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBlock {
    pub q: i64,
    pub offset: usize,
    /// target side: dim F^{q+m}
    pub rows: usize,
    /// source side: dim E^q
    pub cols: usize,
}

pub fn hom_layout(e: &FilteredComplex, f: &FilteredComplex, m: i64) -> Vec<HomBlock> {
    let mut out = Vec::new();
    let mut offset = 0;
    for q in e.deg_lo..=e.deg_hi {
        let rows = f.dim(q + m);
        let cols = e.dim(q);
        out.push(HomBlock { q, offset, rows, cols });
        offset += rows * cols;
    }
    out
}

fn hom_term(e: &FilteredComplex, f: &FilteredComplex, m: i64) -> Result<FilteredModule> {
    let mut acc = FilteredModule::trivial(e.ring(), 0, e.n());
    for q in e.deg_lo..=e.deg_hi {
        let block = hom_filtered(&e.term_owned(q), &f.term_owned(q + m))?;
        acc = acc.direct_sum(&block)?;
    }
    Ok(acc)
}

fn hom_diff(e: &FilteredComplex, f: &FilteredComplex, m: i64) -> Matrix {
    let ring = e.ring().clone();
    let src_layout = hom_layout(e, f, m);
    let tgt_layout = hom_layout(e, f, m + 1);
    let src_dim: usize = src_layout.iter().map(|b| b.rows * b.cols).sum();
    let tgt_dim: usize = tgt_layout.iter().map(|b| b.rows * b.cols).sum();
    let mut d = Matrix::zero(&ring, tgt_dim, src_dim);
    let sign = if (m + 1).rem_euclid(2) == 0 { ring.one() } else { ring.neg(&ring.one()) };
    for tb in &tgt_layout {
        if tb.rows * tb.cols == 0 {
            continue;
        }
        // post-composition with d_F^{q+m}: from the block at the same q
        if let Some(sb) = src_layout.iter().find(|b| b.q == tb.q) {
            if sb.rows * sb.cols > 0 {
                let df = f.diff(tb.q + m);
                let block = df.kronecker(&Matrix::identity(&ring, sb.cols));
                write_block(&mut d, &block, tb.offset, sb.offset);
            }
        }
        // (-1)^{m+1} pre-composition with d_E^q: from the block at q + 1
        if let Some(sb) = src_layout.iter().find(|b| b.q == tb.q + 1) {
            if sb.rows * sb.cols > 0 {
                let de = e.diff(tb.q);
                let block = Matrix::identity(&ring, sb.rows)
                    .kronecker(&de.transpose())
                    .scale(&sign);
                write_block(&mut d, &block, tb.offset, sb.offset);
            }
        }
    }
    d
}

fn write_block(d: &mut Matrix, block: &Matrix, row_off: usize, col_off: usize) {
    for r in 0..block.rows {
        for c in 0..block.cols {
            let v = d.ring.add(d.get(row_off + r, col_off + c), block.get(r, c));
            d.set(row_off + r, col_off + c, v);
        }
    }
}

/// The filtered Hom complex of two bounded filtered complexes.
pub fn hom_complex(e: &FilteredComplex, f: &FilteredComplex) -> Result<FilteredComplex> {
    let lo = f.deg_lo - e.deg_hi;
    let hi = f.deg_hi - e.deg_lo;
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for m in lo..=hi {
        terms.push(hom_term(e, f, m)?);
        if m < hi {
            diffs.push(hom_diff(e, f, m));
        }
    }
    FilteredComplex::new(lo, terms, diffs)
}

/// View a vector of the degree-m Hom term as matrices per source degree.
pub fn unpack_hom_vector(
    e: &FilteredComplex,
    f: &FilteredComplex,
    m: i64,
    v: &[crate::exactlin::Scalar],
) -> Vec<(i64, Matrix)> {
    let ring = e.ring();
    hom_layout(e, f, m)
        .into_iter()
        .map(|b| {
            let mat = Matrix::from_fn(ring, b.rows, b.cols, |r, c| {
                v[b.offset + r * b.cols + c].clone()
            });
            (b.q, mat)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;
    use crate::fixtures;

    #[test]
    fn hom_complex_squares_to_zero() {
        let e = FilteredComplex::new(
            0,
            vec![fixtures::remark_2_3_source(), fixtures::remark_2_3_target()],
            vec![fixtures::remark_2_3_morphism().map],
        )
        .unwrap();
        let h = hom_complex(&e, &e).unwrap();
        h.validate().unwrap();
        for m in h.deg_lo..h.deg_hi {
            assert!(h.diff(m + 1).mul(&h.diff(m)).is_zero());
        }
    }

    #[test]
    fn h0_of_zero_piece_for_one_term_trivial_modules() {
        let q = Ring::rationals();
        let m = crate::filtmod::module::FilteredModule::trivial(&q, 2, 1);
        let c = FilteredComplex::one_term(m, 0);
        let h = hom_complex(&c, &c).unwrap();
        // endomorphism space has dimension 4; piece (1,0) is everything,
        // differential is zero
        assert_eq!(h.cohomology_dim(0, &[(1, 0)]).unwrap(), 4);
        assert_eq!(h.cohomology_dim(0, &[(1, -1)]).unwrap(), 0);
    }
}
