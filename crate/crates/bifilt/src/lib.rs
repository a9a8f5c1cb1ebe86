//! Exact-arithmetic calculus of bifiltered modules and complexes over a
//! field: strictness of morphisms, strict exactness, filtered
//! quasi-isomorphisms, the special injective and flat constructions, filtered
//! RHom and derived tensor, and base change along small field extensions.
//!
//! Everything is computed with exact scalars (arbitrary-precision rationals
//! or finite-field residues); there is no floating point anywhere, so every
//! strictness question reduces to an equality of canonical-form subspaces.

pub mod error;
pub mod exactlin;

pub use error::{Error, Result};

pub mod filtmod;
pub mod fixtures;
pub mod filtcomplex;
