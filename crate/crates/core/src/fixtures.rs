//! Worked instances used throughout the tests, benches and the example corpus.
//!
//! Words and facets are written with 1-based labels, as in the literature.

use crate::coxeter::{CoxeterSystem, Word};
use crate::flats::Tuple;
use crate::subword::{Facet, SubwordInstance};

fn word(labels: &[usize]) -> Word {
    Word::from_one_based(labels).expect("fixture labels are 1-based")
}

fn facet(labels: &[usize]) -> Facet {
    Facet::from_one_based(labels).expect("fixture labels are 1-based")
}

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::from_type(name).expect("fixture type is valid")
}

fn instance(sys: CoxeterSystem, q: &[usize], pi: &Word) -> SubwordInstance {
    SubwordInstance::from_words(sys, word(q), pi).expect("fixture instance is valid")
}

fn longest(sys: &CoxeterSystem) -> Word {
    sys.longest_word().expect("fixture group is finite")
}

/// `SC((s1,s2,s1,s2,s1), s1 s2)` in type A2.
pub fn a2_instance() -> SubwordInstance {
    instance(system("A2"), &[1, 2, 1, 2, 1], &word(&[1, 2]))
}

pub const A2_FACET: &[usize] = &[2, 3, 5];

pub fn a2_tuple() -> Tuple {
    Tuple::new(a2_instance(), facet(A2_FACET)).expect("facet")
}

/// The dual 3-dimensional associahedron: `Q = (s1,s2,s3,s1,s2,s3,s1,s2,s1)`, `pi = w0`.
pub fn a3_associahedron() -> SubwordInstance {
    let sys = system("A3");
    let w0 = longest(&sys);
    instance(sys, &[1, 2, 3, 1, 2, 3, 1, 2, 1], &w0)
}

/// The multi-associahedron of 2-triangulations of an octagon.
pub fn a3k2_instance() -> SubwordInstance {
    let sys = system("A3");
    let w0 = longest(&sys);
    instance(sys, &[1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 1], &w0)
}

pub const A3K2_FACET: &[usize] = &[1, 3, 7, 8, 9, 10];
pub const A3K2_FLAT: &[usize] = &[1, 3, 5, 6, 8, 9, 11];

pub fn a3k2_tuple() -> Tuple {
    Tuple::new(a3k2_instance(), facet(A3K2_FACET)).expect("facet")
}

/// Affine A2 with `Q = (s0,s1,s2)^3` and `pi = (s0 s1 s2)^2`; `s_k` is label `k + 1`.
pub fn affine_a2_instance() -> SubwordInstance {
    instance(
        system("At2"),
        &[1, 2, 3, 1, 2, 3, 1, 2, 3],
        &word(&[1, 2, 3, 1, 2, 3]),
    )
}

pub const AFFINE_A2_FACET: &[usize] = &[3, 4, 5];
/// Enumerated facet count of the affine A2 complex: `{1,2,3}` through `{7,8,9}`.
pub const AFFINE_A2_FACET_COUNT: usize = 7;
pub const AFFINE_A2_FLAT: &[usize] = &[2, 3, 5, 6];

pub fn affine_a2_tuple() -> Tuple {
    Tuple::new(affine_a2_instance(), facet(AFFINE_A2_FACET)).expect("facet")
}

/// The word `(s1, s0, s1, s1)` in affine A1, with `s0` as label 1.
pub fn affine_a1_word() -> (CoxeterSystem, Word) {
    (system("At1"), word(&[2, 1, 2, 2]))
}

/// The rank-0 instance with empty word.
pub fn empty_instance() -> SubwordInstance {
    let sys = CoxeterSystem::new(Vec::new()).expect("rank 0");
    SubwordInstance::from_words(sys, Word::default(), &Word::default()).expect("empty")
}

pub fn one_based_facet(labels: &[usize]) -> Facet {
    facet(labels)
}

pub fn one_based_word(labels: &[usize]) -> Word {
    word(labels)
}
