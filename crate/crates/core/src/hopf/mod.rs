//! The graded Hopf algebra on equivalence classes of irreducible tuples.

pub mod chip;
pub mod key;
pub mod ops;
pub mod psi;
pub mod vector;
pub mod verify;

pub use key::{canonicalize, BasisKey};
pub use ops::{coproduct, counit, product, takeuchi_antipode, top_to_random};
pub use psi::antipode;
pub use vector::{HopfVector, Tensor};
