//! Filtered and bifiltered modules and morphisms: strictness, pieces, gr,
//! shifts, filtered Hom and tensor, and the special product/sum constructions.

pub mod chain;
pub mod hom_tensor;
pub mod module;
pub mod morphism;
pub mod special;

pub use chain::FiltrationChain;
pub use module::FilteredModule;
pub use morphism::{FilteredMorphism, StrictnessWitness};
