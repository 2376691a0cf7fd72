//! Subword complexes over crystallographic Coxeter systems and the Hopf algebra they span.
//!
//! Positions, generators and letters are 0-based internally; the JSON layer and the
//! `Display` impls use 1-based labels.

pub mod clusters;
pub mod coxeter;
pub mod error;
pub mod fixtures;
pub mod flats;
pub mod graph;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod subsystem;
pub mod subword;

pub use clusters::{cluster_instance, rotate, sorting_word, ClusterInstance};
pub use coxeter::{CoxeterSystem, GroupElement, RootVector, Word, INFINITY};
pub use error::{CoxeterError, Result, SubwordError};
pub use flats::{Flat, FlatDecomposition, RestrictedTuple, Tuple};
pub use graph::SimpleGraph;
pub use hopf::{antipode, canonicalize, coproduct, product, takeuchi_antipode, BasisKey, HopfVector, Tensor};
pub use linalg::{Rational, Subspace};
pub use subsystem::{restrict_inversions, InversionRestriction, RootSubsystem};
pub use subword::{Facet, FlipOutcome, SubwordInstance};
