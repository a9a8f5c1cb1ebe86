//! Canonical subspaces of a fixed coordinate module and the lattice operations
//! on them. A subspace is stored as the unique RREF basis of its row space, so
//! structural equality is semantic equality.

use crate::error::{Error, Result};
use crate::exactlin::matrix::Matrix;
use crate::exactlin::ring::{Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ring: Ring,
    pub ambient_dim: usize,
    /// RREF basis, one basis vector per row; rows == dim.
    pub basis: Matrix,
}

impl Subspace {
    pub fn zero(ring: &Ring, ambient_dim: usize) -> Subspace {
        Subspace { ring: ring.clone(), ambient_dim, basis: Matrix::zero(ring, 0, ambient_dim) }
    }

    pub fn full(ring: &Ring, ambient_dim: usize) -> Subspace {
        Subspace { ring: ring.clone(), ambient_dim, basis: Matrix::identity(ring, ambient_dim) }
    }

    /// Span of the rows of `gens` (not required to be independent).
    pub fn span(gens: &Matrix) -> Subspace {
        let (rank, red) = gens.rref();
        let basis = Matrix::from_fn(&gens.ring, rank, gens.cols, |r, c| red.get(r, c).clone());
        Subspace { ring: gens.ring.clone(), ambient_dim: gens.cols, basis }
    }

    pub fn span_i64(ring: &Ring, ambient_dim: usize, gens: &[&[i64]]) -> Subspace {
        if gens.is_empty() {
            return Subspace::zero(ring, ambient_dim);
        }
        Subspace::span(&Matrix::from_i64_rows(ring, gens))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "ambient {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        // v in row space of basis  <=>  basis^T x = v solvable
        self.basis.transpose().solve(v).expect("shape checked").is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.check_compatible(other).expect("incompatible subspaces");
        (0..other.dim()).all(|r| self.contains_vector(&other.basis.row(r)))
    }

    /// Sum of subspaces: canonical span of the union of bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)))
    }

    /// Intersection by the Zassenhaus block trick.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let ring = &self.ring;
        let n = self.ambient_dim;
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zero(ring, other.dim(), n));
        let (_, red) = top.vstack(&bottom).rref();
        let mut rows = Vec::new();
        for r in 0..red.rows {
            let left_zero = (0..n).all(|c| ring.is_zero(red.get(r, c)));
            let right = (n..2 * n).map(|c| red.get(r, c).clone()).collect::<Vec<_>>();
            let right_zero = right.iter().all(|s| ring.is_zero(s));
            if left_zero && !right_zero {
                rows.push(right);
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(ring, n));
        }
        Ok(Subspace::span(&Matrix::from_rows(ring, rows)))
    }

    /// Image of this subspace under the map `a` (column convention, so `a` is
    /// (target dim) x (ambient_dim)).
    pub fn image_under(&self, a: &Matrix) -> Result<Subspace> {
        if a.cols != self.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "map expects source dim {}, subspace ambient {}",
                a.cols, self.ambient_dim
            )));
        }
        Ok(Subspace::span(&self.basis.mul(&a.transpose())))
    }

    /// Preimage {x : a x in self} of this subspace under `a`
    /// ((self ambient) x (source dim)).
    pub fn preimage_under(&self, a: &Matrix) -> Result<Subspace> {
        if a.rows != self.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "map lands in dim {}, subspace ambient {}",
                a.rows, self.ambient_dim
            )));
        }
        let quot = QuotientView::new(&Subspace::full(&self.ring, self.ambient_dim), self)?;
        let comp = quot.proj.mul(a);
        Ok(Subspace::span(&comp.kernel()))
    }

    /// All vectors of the subspace, for brute-force oracles over small finite
    /// fields. Panics over Q.
    pub fn enumerate_vectors(&self) -> Vec<Vec<Scalar>> {
        let q = self.ring.size().expect("enumeration needs a finite field");
        let d = self.dim();
        let total = (q as u128).pow(d as u32) as u64;
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut v = vec![self.ring.zero(); self.ambient_dim];
            for r in 0..d {
                let coeff = Scalar::Fp(idx % q);
                idx /= q;
                if self.ring.is_zero(&coeff) {
                    continue;
                }
                for c in 0..self.ambient_dim {
                    let term = self.ring.mul(&coeff, self.basis.get(r, c));
                    v[c] = self.ring.add(&v[c], &term);
                }
            }
            out.push(v);
        }
        out
    }
}

/// The drop-to-quotient data for V/W (W inside V): coset representatives that
/// extend W's basis to V's, plus the projection matrix onto the quotient
/// coordinates. Representative rows come from V's RREF basis in order, then
/// the projection is cut out of the inverse of a completed ambient basis
/// (completion by lexicographically first standard vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientView {
    pub ring: Ring,
    pub ambient_dim: usize,
    /// dim(V/W) x ambient: rows are coset representatives.
    pub reps: Matrix,
    /// dim(V/W) x ambient: proj . x gives quotient coordinates; kills W.
    pub proj: Matrix,
}

impl QuotientView {
    pub fn new(v: &Subspace, w: &Subspace) -> Result<QuotientView> {
        if v.ring != w.ring {
            return Err(Error::RingMismatch(v.ring.to_string(), w.ring.to_string()));
        }
        if v.ambient_dim != w.ambient_dim {
            return Err(Error::DimMismatch(format!(
                "ambient {} vs {}",
                v.ambient_dim, w.ambient_dim
            )));
        }
        if !v.contains(w) {
            return Err(Error::NotContained(format!(
                "quotient denominator (dim {}) not inside numerator (dim {})",
                w.dim(),
                v.dim()
            )));
        }
        let ring = v.ring.clone();
        let n = v.ambient_dim;
        let qdim = v.dim() - w.dim();

        // Greedily pick rows of V's basis that grow W.
        let mut chosen: Vec<Vec<Scalar>> = Vec::with_capacity(qdim);
        let mut current = w.basis.clone();
        let mut rank = w.dim();
        for r in 0..v.dim() {
            let cand = Matrix::from_rows(&ring, vec![v.basis.row(r)]);
            let stacked = current.vstack(&cand);
            let (new_rank, _) = stacked.rref();
            if new_rank > rank {
                chosen.push(v.basis.row(r));
                current = stacked;
                rank = new_rank;
            }
        }
        debug_assert_eq!(chosen.len(), qdim);
        let reps = if qdim == 0 {
            Matrix::zero(&ring, 0, n)
        } else {
            Matrix::from_rows(&ring, chosen)
        };

        // Complete [W; reps] to an ambient basis with standard vectors.
        let mut full = w.basis.vstack(&reps);
        let mut rank = full.rank();
        let mut completion_rows = Vec::new();
        for j in 0..n {
            if rank == n {
                break;
            }
            let mut e = vec![ring.zero(); n];
            e[j] = ring.one();
            let cand = full.vstack(&Matrix::from_rows(&ring, vec![e.clone()]));
            let r = cand.rank();
            if r > rank {
                completion_rows.push(e);
                full = cand;
                rank = r;
            }
        }
        // Coordinates with respect to the completed basis: x = B^T y.
        let bt = full.transpose();
        let aug = bt.hstack(&Matrix::identity(&ring, n));
        let (_, red) = aug.rref();
        let inv = Matrix::from_fn(&ring, n, n, |r, c| red.get(r, c + n).clone());
        let proj = Matrix::from_fn(&ring, qdim, n, |r, c| inv.get(w.dim() + r, c).clone());
        Ok(QuotientView { ring, ambient_dim: n, reps, proj })
    }

    pub fn dim(&self) -> usize {
        self.reps.rows
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.proj.apply(v)
    }

    /// Representative in the ambient module of quotient coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.reps.transpose().apply(coords)
    }

    /// Matrix of the induced map on quotients for `a: V -> V'` with
    /// a(W) inside W'; shape other.dim() x self.dim().
    pub fn induced_map(&self, a: &Matrix, target: &QuotientView) -> Matrix {
        target.proj.mul(&a.mul(&self.reps.transpose()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn intersect_trivial_cases() {
        let full = Subspace::full(&q(), 2);
        let v = Subspace::span_i64(&q(), 2, &[&[1, 1]]);
        assert_eq!(full.intersect(&v).unwrap(), v);
        let e1 = Subspace::span_i64(&q(), 2, &[&[1, 0]]);
        let e2 = Subspace::span_i64(&q(), 2, &[&[0, 1]]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn intersect_plane_pair_in_q3() {
        // span{(1,0,1),(0,1,1)} meet span{(1,1,2),(1,0,0)} = span{(1,1,2)}
        let u = Subspace::span_i64(&q(), 3, &[&[1, 0, 1], &[0, 1, 1]]);
        let v = Subspace::span_i64(&q(), 3, &[&[1, 1, 2], &[1, 0, 0]]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w, Subspace::span_i64(&q(), 3, &[&[1, 1, 2]]));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let u = Subspace::full(&q(), 2);
        let v = Subspace::full(&q(), 3);
        assert!(matches!(u.intersect(&v), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn quotient_of_plane_by_line() {
        let v = Subspace::full(&q(), 2);
        let w = Subspace::span_i64(&q(), 2, &[&[1, 0]]);
        let quot = QuotientView::new(&v, &w).unwrap();
        assert_eq!(quot.dim(), 1);
        assert_eq!(quot.reps, Matrix::from_i64_rows(&q(), &[&[0, 1]]));
        // kills W, identity on the representative
        assert!(quot.project(&[q().from_i64(5), q().from_i64(0)]).iter().all(|s| q().is_zero(s)));
        assert_eq!(quot.project(&[q().from_i64(0), q().from_i64(1)]), vec![q().from_i64(1)]);
    }

    #[test]
    fn quotient_requires_containment() {
        let v = Subspace::span_i64(&q(), 2, &[&[1, 0]]);
        let w = Subspace::span_i64(&q(), 2, &[&[0, 1]]);
        assert!(matches!(QuotientView::new(&v, &w), Err(Error::NotContained(_))));
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let a = Matrix::from_i64_rows(&q(), &[&[1, 0, 1], &[0, 0, 0]]);
        let z = Subspace::zero(&q(), 2);
        let pre = z.preimage_under(&a).unwrap();
        assert_eq!(pre, Subspace::span(&a.kernel()));
        assert_eq!(pre.dim(), 2);
    }

    #[test]
    fn modular_law_small() {
        let u = Subspace::span_i64(&q(), 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let v = Subspace::span_i64(&q(), 3, &[&[0, 1, 1]]);
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
    }

    #[test]
    fn f2_enumeration_agrees_with_lattice_ops() {
        let f2 = Ring::prime_field(2).unwrap();
        let u = Subspace::span_i64(&f2, 3, &[&[1, 1, 0], &[0, 1, 1]]);
        let v = Subspace::span_i64(&f2, 3, &[&[1, 0, 1]]);
        let inter = u.intersect(&v).unwrap();
        let brute: Vec<_> = u
            .enumerate_vectors()
            .into_iter()
            .filter(|x| v.contains_vector(x))
            .collect();
        assert_eq!(brute.len(), 1usize << inter.dim());
        for x in brute {
            assert!(inter.contains_vector(&x));
        }
    }
}
