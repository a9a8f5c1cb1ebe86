//! Exact linear algebra over Q, F_p, and small Galois fields: matrices in
//! canonical form, RREF subspaces, and the lattice operations every other
//! module consumes.

pub mod matrix;
pub mod ring;
pub mod subspace;

pub use matrix::Matrix;
pub use ring::{Ring, Scalar};
pub use subspace::{QuotientView, Subspace};
