//! Quadratic forms over dyadic local fields: square classes, quadratic spaces,
//! lattices given by bases of norm generators (BONGs), the lattice
//! representation criterion, and decision procedures for n-universality.

pub mod bong;
pub mod error;
pub mod ext;
pub mod field;
pub mod json;
pub mod represent;
pub mod residue;
pub mod ring;
pub mod sample;
pub mod space;
pub mod universal;

pub use bong::{make_block, BongLattice, Block};
pub use error::{Error, Result};
pub use ext::Ext;
pub use field::{make_field, FieldContext, FieldElement, FieldSpec, SquareClass};
pub use represent::{represents, RepVerdict};
pub use space::SpaceInv;
pub use universal::{is_n_universal, testing_set, Method, UnivVerdict};
