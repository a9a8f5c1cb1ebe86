//! Shared fixtures: the summation counterexample (a bifiltered morphism that
//! is strict in each filtration separately but not strict), trivial-filtration
//! batteries, and small helpers for building named instances in tests and in
//! the CLI `fixtures` subcommand.

use crate::exactlin::{Matrix, Ring, Subspace};
use crate::filtmod::chain::FiltrationChain;
use crate::filtmod::module::FilteredModule;
use crate::filtmod::morphism::FilteredMorphism;

/// Source of the summation counterexample: E = M + M with M = Q^2,
/// N = span{(1,0)}; the first filtration jumps through N + 0, the second
/// through 0 + N.
pub fn remark_2_3_source() -> FilteredModule {
    let q = Ring::rationals();
    let zero = Subspace::zero(&q, 4);
    let full = Subspace::full(&q, 4);
    let n_left = Subspace::span_i64(&q, 4, &[&[1, 0, 0, 0]]);
    let n_right = Subspace::span_i64(&q, 4, &[&[0, 0, 1, 0]]);
    let c1 = FiltrationChain::new(-1, vec![zero.clone(), n_left, full.clone()]).unwrap();
    let c2 = FiltrationChain::new(-1, vec![zero, n_right, full]).unwrap();
    FilteredModule::new(q, 4, vec![c1, c2]).unwrap()
}

/// Target of the summation counterexample: F = M = Q^2 with both filtrations
/// equal to 0 < N < M, N = span{(1,0)}.
pub fn remark_2_3_target() -> FilteredModule {
    let q = Ring::rationals();
    let zero = Subspace::zero(&q, 2);
    let full = Subspace::full(&q, 2);
    let n = Subspace::span_i64(&q, 2, &[&[1, 0]]);
    let chain = FiltrationChain::new(-1, vec![zero, n, full]).unwrap();
    FilteredModule::new(q, 2, vec![chain.clone(), chain]).unwrap()
}

/// The summation map (a, b) -> a + b as a bifiltered morphism. Strict for
/// each filtration separately; not strict, with the violation at levels
/// (0, 0) of filtrations (1, 2).
pub fn remark_2_3_morphism() -> FilteredMorphism {
    let q = Ring::rationals();
    let map = Matrix::from_i64_rows(&q, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
    FilteredMorphism::new(remark_2_3_source(), remark_2_3_target(), map).unwrap()
}

/// A bifiltered module over an arbitrary ring shaped like the counterexample
/// target: both chains run 0 < first-coordinate line < full plane.
pub fn n_chain_plane(ring: &Ring) -> FilteredModule {
    let zero = Subspace::zero(ring, 2);
    let full = Subspace::full(ring, 2);
    let n = Subspace::span_i64(ring, 2, &[&[1, 0]]);
    let chain = FiltrationChain::new(-1, vec![zero, n, full]).unwrap();
    FilteredModule::new(ring.clone(), 2, vec![chain.clone(), chain]).unwrap()
}
