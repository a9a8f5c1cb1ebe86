//! Bounded bifiltered complexes: cohomology, strict exactness, cones,
//! filtered quasi-isomorphisms, the gr criterion, filtered homotopy, and the
//! filtered Hom and tensor complexes.

pub mod chain_map;
pub mod complex;
pub mod hom_cx;
pub mod homotopy;
pub mod tensor_cx;

pub use chain_map::{cone, gr_qis_criterion, is_filtered_qis, ChainMap};
pub use complex::{gr_complex, piece_complex, FilteredComplex, PlainComplex};
pub use hom_cx::{hom_complex, hom_layout, unpack_hom_vector};
pub use homotopy::{add_homotopy, is_null_homotopic, FilteredHomotopy};
pub use tensor_cx::{tensor_complex, tensor_layout};
