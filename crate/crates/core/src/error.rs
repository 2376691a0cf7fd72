use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("Coxeter matrix is empty")]
    Empty,
    #[error("Coxeter matrix row {row} has length {len}, expected {rank}")]
    Ragged { row: usize, len: usize, rank: usize },
    #[error("Coxeter matrix entry m[{i}][{j}] = {value} is invalid: {reason}")]
    InvalidEntry {
        i: usize,
        j: usize,
        value: u32,
        reason: &'static str,
    },
    #[error("Cartan matrix entry A[{i}][{j}] = {value} is invalid: {reason}")]
    InvalidCartan {
        i: usize,
        j: usize,
        value: i64,
        reason: &'static str,
    },
    #[error("Cartan entries A[{i}][{j}]={a_ij}, A[{j}][{i}]={a_ji} imply m={implied}, but the Coxeter matrix has m={given}")]
    CartanMismatch {
        i: usize,
        j: usize,
        a_ij: i64,
        a_ji: i64,
        implied: u32,
        given: u32,
    },
    #[error("Cartan matrix is not symmetrizable (inconsistent cycle through generators {i} and {j})")]
    NotSymmetrizable { i: usize, j: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("unknown Coxeter type `{0}`")]
    UnknownType(String),
    #[error("the Coxeter group is infinite")]
    Infinite,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubwordError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("position {position} out of range 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("positions {0:?} do not form a facet")]
    NotAFacet(Vec<usize>),
    #[error("positions {0:?} do not form a face")]
    NotAFace(Vec<usize>),
    #[error("position {0} is not in the facet")]
    NotInFacet(usize),
    #[error("the subword complex is reducible; restrict to the span of the root configuration first")]
    Reducible,
    #[error("flat is not irreducible")]
    FlatNotIrreducible,
    #[error("canonicalization bound exceeded: rank {rank} > {bound}")]
    CanonicalizationBound { rank: usize, bound: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = SubwordError> = std::result::Result<T, E>;
