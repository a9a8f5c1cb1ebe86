//! Dense exact matrices over a [`Ring`], stored row-major.
//!
//! Linear maps use the column convention: `f: E -> F` with `dim E = n`,
//! `dim F = m` is an `m x n` matrix acting as `x -> A x` on column vectors.
//! Subspace bases elsewhere are stored as the *rows* of a matrix.

use crate::error::{Error, Result};
use crate::exactlin::ring::{Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, entries }
    }

    /// Rows given as integer literals; mostly for tests and fixtures.
    pub fn from_i64_rows(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix::from_fn(ring, rows.len(), ncols, |r, c| ring.from_i64(rows[r][c]))
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Scalar>>) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Matrix { ring: ring.clone(), rows: nrows, cols: ncols, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| self.ring.neg(self.get(r, c)))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| {
            self.ring.add(self.get(r, c), other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| self.ring.mul(s, self.get(r, c)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in mul");
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols);
        let ring = &self.ring;
        Matrix::from_fn(ring, self.rows, other.cols, |r, c| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.get(r, k), other.get(k, c)));
            }
            acc
        })
    }

    /// Apply the map to a (column) vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.ring.zero();
                for c in 0..self.cols {
                    acc = self.ring.add(&acc, &self.ring.mul(self.get(r, c), &v[c]));
                }
                acc
            })
            .collect()
    }

    /// Stack rows: [self; other].
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Concatenate columns: [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Matrix::from_fn(&self.ring, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { other.get(r, c - self.cols).clone() }
        })
    }

    /// Block-diagonal sum of maps.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let ring = &self.ring;
        Matrix::from_fn(ring, self.rows + other.rows, self.cols + other.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                ring.zero()
            }
        })
    }

    /// Kronecker product with index order (a, b) -> a * other.rows + b on rows
    /// and columns alike.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let ring = &self.ring;
        Matrix::from_fn(ring, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (ra, rb) = (r / other.rows, r % other.rows);
            let (ca, cb) = (c / other.cols, c % other.cols);
            ring.mul(self.get(ra, ca), other.get(rb, cb))
        })
    }

    /// Reduced row-echelon form; returns (rank, reduced). The reduced form is
    /// the unique RREF of the row space, zero rows at the bottom.
    pub fn rref(&self) -> (usize, Matrix) {
        let ring = self.ring.clone();
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !ring.is_zero(m.get(r, col))) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(src, c).clone();
                    let b = m.get(pivot_row, c).clone();
                    m.set(src, c, b);
                    m.set(pivot_row, c, a);
                }
            }
            let inv = ring.inv(m.get(pivot_row, col));
            for c in col..m.cols {
                let v = ring.mul(&inv, m.get(pivot_row, c));
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || ring.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = ring.sub(m.get(r, c), &ring.mul(&factor, m.get(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        (pivot_row, m)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Pivot columns of the RREF (assumes `self` is already in RREF).
    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            if let Some(c) = (0..self.cols).find(|&c| !self.ring.is_zero(self.get(r, c))) {
                out.push(c);
            }
        }
        out
    }

    /// Basis of the right null space {x : A x = 0}, returned as rows (each row
    /// one kernel vector of length `cols`), in RREF.
    pub fn kernel(&self) -> Matrix {
        let ring = self.ring.clone();
        let (rank, red) = self.rref();
        let pivots = red.pivot_cols();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        if free.is_empty() {
            return Matrix::zero(&ring, 0, self.cols);
        }
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![ring.zero(); self.cols];
            v[fc] = ring.one();
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = ring.neg(red.get(r, fc));
            }
            rows.push(v);
        }
        let (_, canon) = Matrix::from_rows(&ring, rows).rref();
        canon
    }

    /// Solve A x = b exactly; returns a witness iff b lies in the column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimMismatch(format!(
                "solve: rhs length {} vs {} rows",
                b.len(),
                self.rows
            )));
        }
        let ring = &self.ring;
        let bmat = Matrix::from_fn(ring, self.rows, 1, |r, _| b[r].clone());
        let aug = self.hstack(&bmat);
        let (_, red) = aug.rref();
        let mut x = vec![ring.zero(); self.cols];
        for r in 0..red.rows {
            let Some(lead) = (0..red.cols).find(|&c| !ring.is_zero(red.get(r, c))) else {
                continue;
            };
            if lead == self.cols {
                return Ok(None); // row [0 .. 0 | 1]: inconsistent
            }
            x[lead] = red.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn rref_identity_and_zero() {
        let (rank, red) = Matrix::identity(&q(), 2).rref();
        assert_eq!(rank, 2);
        assert_eq!(red, Matrix::identity(&q(), 2));
        let z = Matrix::zero(&q(), 3, 4);
        let (rank, red) = z.rref();
        assert_eq!(rank, 0);
        assert_eq!(red, z);
    }

    #[test]
    fn rref_rank_one() {
        // hand Gaussian elimination: [[2,4],[1,2]] -> [[1,2],[0,0]]
        let m = Matrix::from_i64_rows(&q(), &[&[2, 4], &[1, 2]]);
        let (rank, red) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(red, Matrix::from_i64_rows(&q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_i64_rows(&q(), &[&[1, 3, 1], &[2, 7, 3], &[1, 5, 3]]);
        let (_, r1) = m.rref();
        let (_, r2) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn solve_back_substitution() {
        // A x = b with A = [[1,1],[0,1]], b = (3,1): x = (2,1)
        let a = Matrix::from_i64_rows(&q(), &[&[1, 1], &[0, 1]]);
        let b = vec![q().from_i64(3), q().from_i64(1)];
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, vec![q().from_i64(2), q().from_i64(1)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::from_i64_rows(&q(), &[&[1, 2], &[2, 4]]);
        let b = vec![q().from_i64(1), q().from_i64(3)];
        assert_eq!(a.solve(&b).unwrap(), None);
    }

    #[test]
    fn kernel_of_projection() {
        let a = Matrix::from_i64_rows(&q(), &[&[1, 0, 0], &[0, 1, 0]]);
        let k = a.kernel();
        assert_eq!(k.rows, 1);
        assert_eq!(k, Matrix::from_i64_rows(&q(), &[&[0, 0, 1]]));
    }

    #[test]
    fn empty_shapes_are_legal() {
        let m = Matrix::zero(&q(), 0, 3);
        let (rank, _) = m.rref();
        assert_eq!(rank, 0);
        let k = Matrix::zero(&q(), 2, 0).kernel();
        assert_eq!(k.rows, 0);
        let prod = Matrix::zero(&q(), 2, 0).mul(&Matrix::zero(&q(), 0, 3));
        assert!(prod.is_zero());
    }
}
