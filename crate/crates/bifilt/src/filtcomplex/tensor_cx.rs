//! The filtered tensor complex: total complex of the double complex
//! E^p (x) F^q with the Koszul sign (d_E (x) 1) + (-1)^p (1 (x) d_F) and the
//! image filtration summed over l + m = k blockwise.

use crate::error::Result;
use crate::exactlin::Matrix;
use crate::filtcomplex::complex::FilteredComplex;
use crate::filtmod::hom_tensor::tensor_filtered;
use crate::filtmod::module::FilteredModule;

/// Layout of one total-degree term: blocks (p, q = t - p) in ascending p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorBlock {
    pub p: i64,
    pub offset: usize,
    pub dim_e: usize,
    pub dim_f: usize,
}

pub fn tensor_layout(e: &FilteredComplex, f: &FilteredComplex, t: i64) -> Vec<TensorBlock> {
    let mut out = Vec::new();
    let mut offset = 0;
    for p in e.deg_lo..=e.deg_hi {
        let q = t - p;
        let (de, df) = (e.dim(p), f.dim(q));
        out.push(TensorBlock { p, offset, dim_e: de, dim_f: df });
        offset += de * df;
    }
    out
}

fn tensor_term(e: &FilteredComplex, f: &FilteredComplex, t: i64) -> Result<FilteredModule> {
    let mut acc = FilteredModule::trivial(e.ring(), 0, e.n());
    for p in e.deg_lo..=e.deg_hi {
        let block = tensor_filtered(&e.term_owned(p), &f.term_owned(t - p))?;
        acc = acc.direct_sum(&block)?;
    }
    Ok(acc)
}

fn tensor_diff(e: &FilteredComplex, f: &FilteredComplex, t: i64) -> Matrix {
    let ring = e.ring().clone();
    let src = tensor_layout(e, f, t);
    let tgt = tensor_layout(e, f, t + 1);
    let src_dim: usize = src.iter().map(|b| b.dim_e * b.dim_f).sum();
    let tgt_dim: usize = tgt.iter().map(|b| b.dim_e * b.dim_f).sum();
    let mut d = Matrix::zero(&ring, tgt_dim, src_dim);
    for sb in &src {
        if sb.dim_e * sb.dim_f == 0 {
            continue;
        }
        let q = t - sb.p;
        // d_E (x) 1 into block (p+1, q)
        if let Some(tb) = tgt.iter().find(|b| b.p == sb.p + 1) {
            if tb.dim_e * tb.dim_f > 0 {
                let block = e.diff(sb.p).kronecker(&Matrix::identity(&ring, sb.dim_f));
                write_block(&mut d, &block, tb.offset, sb.offset);
            }
        }
        // (-1)^p (1 (x) d_F) into block (p, q+1)
        if let Some(tb) = tgt.iter().find(|b| b.p == sb.p) {
            if tb.dim_e * tb.dim_f > 0 {
                let sign = if sb.p.rem_euclid(2) == 0 { ring.one() } else { ring.neg(&ring.one()) };
                let block = Matrix::identity(&ring, sb.dim_e)
                    .kronecker(&f.diff(q))
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

/// The filtered tensor product of two bounded filtered complexes.
pub fn tensor_complex(e: &FilteredComplex, f: &FilteredComplex) -> Result<FilteredComplex> {
    let lo = e.deg_lo + f.deg_lo;
    let hi = e.deg_hi + f.deg_hi;
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for t in lo..=hi {
        terms.push(tensor_term(e, f, t)?);
        if t < hi {
            diffs.push(tensor_diff(e, f, t));
        }
    }
    FilteredComplex::new(lo, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Ring;
    use crate::fixtures;

    #[test]
    fn tensor_with_unit_complex_preserves_everything() {
        let ring = Ring::rationals();
        let e = FilteredComplex::new(
            0,
            vec![fixtures::remark_2_3_source(), fixtures::remark_2_3_target()],
            vec![fixtures::remark_2_3_morphism().map],
        )
        .unwrap();
        let unit = FilteredComplex::one_term(FilteredModule::trivial(&ring, 1, 2), 0);
        let t = tensor_complex(&e, &unit).unwrap();
        t.validate().unwrap();
        assert_eq!(t.deg_lo, 0);
        assert_eq!(t.dim(0), 4);
        assert_eq!(t.dim(1), 2);
        for q in 0..=1 {
            for k1 in -2..=2 {
                for k2 in -2..=2 {
                    assert_eq!(
                        t.term(q).piece(&[(1, k1), (2, k2)]).unwrap().dim(),
                        e.term(q).piece(&[(1, k1), (2, k2)]).unwrap().dim()
                    );
                }
            }
        }
    }

    #[test]
    fn koszul_sign_gives_a_complex() {
        // two two-term complexes; d squared must vanish on the total complex
        let ring = Ring::rationals();
        let m = FilteredModule::trivial(&ring, 2, 1);
        let d = Matrix::from_i64_rows(&ring, &[&[1, 0], &[0, 0]]);
        let c = FilteredComplex::new(0, vec![m.clone(), m.clone()], vec![d]).unwrap();
        let t = tensor_complex(&c, &c).unwrap();
        t.validate().unwrap();
        for q in t.deg_lo..t.deg_hi {
            assert!(t.diff(q + 1).mul(&t.diff(q)).is_zero());
        }
    }
}
