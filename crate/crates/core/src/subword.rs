//! Subword complexes `SC(Q, pi)`: facets, root functions, flips and links.
//!
//! Positions are 0-based internally; `Facet::to_one_based` gives the external labels.

use std::fmt;

use crate::coxeter::{CoxeterSystem, GroupElement, RootVector, Word};
use crate::error::{Result, SubwordError};
use crate::linalg::Subspace;

/// A sorted set of word positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet(pub Vec<usize>);

impl Facet {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        Facet(positions)
    }

    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        labels
            .iter()
            .map(|&p| {
                p.checked_sub(1).ok_or(SubwordError::PositionOutOfRange {
                    position: p,
                    len: 0,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Facet::new)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "}}")
    }
}

/// The data `(W, Q, pi)` of a subword complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubwordInstance {
    sys: CoxeterSystem,
    word: Word,
    pi: GroupElement,
    pi_inverse: GroupElement,
    pi_length: usize,
}

/// All facets of an instance; `void` is set when `Q` contains no reduced word for `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetList {
    pub facets: Vec<Facet>,
    pub void: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipOutcome {
    Flipped { facet: Facet, partner: usize },
    /// No complement position carries `±r_I(i)`.
    NonFlippable,
}

/// An instance obtained by deleting letters, with `origin[k]` the original position of letter `k`.
#[derive(Clone, Debug)]
pub struct LinkInstance {
    pub instance: SubwordInstance,
    pub origin: Vec<usize>,
}

impl SubwordInstance {
    pub fn new(sys: CoxeterSystem, word: Word, pi: GroupElement) -> Result<Self> {
        sys.check_word(&word)?;
        assert_eq!(pi.rank(), sys.rank(), "element rank does not match the system");
        let pi_inverse = sys.inverse(&pi);
        let pi_length = sys.element_length(&pi);
        Ok(SubwordInstance {
            sys,
            word,
            pi,
            pi_inverse,
            pi_length,
        })
    }

    /// `pi` given by any (not necessarily reduced) word.
    pub fn from_words(sys: CoxeterSystem, word: Word, pi_word: &Word) -> Result<Self> {
        sys.check_word(pi_word)?;
        let pi = sys.word_to_element(pi_word);
        Self::new(sys, word, pi)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn pi(&self) -> &GroupElement {
        &self.pi
    }

    pub fn pi_length(&self) -> usize {
        self.pi_length
    }

    pub fn facet_size(&self) -> Option<usize> {
        self.len().checked_sub(self.pi_length)
    }

    fn check_positions(&self, positions: &[usize]) -> Result<()> {
        for &p in positions {
            if p >= self.len() {
                return Err(SubwordError::PositionOutOfRange {
                    position: p + 1,
                    len: self.len(),
                });
            }
        }
        Ok(())
    }

    /// Whether `v s` is a length-additive prefix of `pi`, given that `v` is one.
    fn extends_prefix(&self, v: &GroupElement, s: usize) -> bool {
        let gamma = v.image_of_simple(s);
        gamma.is_positive() && self.pi_inverse.apply(&gamma).is_negative()
    }

    /// Depth-first search over positions; visits each facet in lexicographic order.
    fn search<F: FnMut(&[usize]) -> bool>(&self, visit: &mut F) {
        let Some(size) = self.facet_size() else {
            return;
        };
        let mut facet = Vec::with_capacity(size);
        let start = GroupElement::identity(self.sys.rank());
        self.search_from(0, &start, 0, &mut facet, visit);
    }

    /// Returns `false` to abort the search.
    fn search_from<F: FnMut(&[usize]) -> bool>(
        &self,
        k: usize,
        v: &GroupElement,
        len_v: usize,
        facet: &mut Vec<usize>,
        visit: &mut F,
    ) -> bool {
        let r = self.len();
        if k == r {
            return if len_v == self.pi_length {
                visit(facet)
            } else {
                true
            };
        }
        let remaining = r - k - 1;
        // position k in the facet
        if remaining >= self.pi_length - len_v {
            facet.push(k);
            let go_on = self.search_from(k + 1, v, len_v, facet, visit);
            facet.pop();
            if !go_on {
                return false;
            }
        }
        // position k in the complement
        let s = self.word.0[k];
        if len_v < self.pi_length && self.extends_prefix(v, s) {
            let w = self.sys.right_multiply(v, s);
            if !self.search_from(k + 1, &w, len_v + 1, facet, visit) {
                return false;
            }
        }
        true
    }

    pub fn enumerate_facets(&self) -> FacetList {
        let mut facets = Vec::new();
        self.search(&mut |f| {
            facets.push(Facet(f.to_vec()));
            true
        });
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        let void = facets.is_empty();
        FacetList { facets, void }
    }

    pub fn facets(&self) -> Vec<Facet> {
        self.enumerate_facets().facets
    }

    pub fn is_void(&self) -> bool {
        let mut found = false;
        self.search(&mut |_| {
            found = true;
            false
        });
        !found
    }

    pub fn is_facet(&self, positions: &Facet) -> Result<bool> {
        self.check_positions(positions.positions())?;
        let complement = self.complement_word(positions);
        Ok(complement.len() == self.pi_length
            && self.sys.is_reduced(&complement)
            && self.sys.word_to_element(&complement) == self.pi)
    }

    pub fn complement(&self, facet: &Facet) -> Vec<usize> {
        (0..self.len()).filter(|p| !facet.contains(*p)).collect()
    }

    pub fn complement_word(&self, facet: &Facet) -> Word {
        Word(self.complement(facet).iter().map(|&p| self.word.0[p]).collect())
    }

    fn require_facet(&self, facet: &Facet) -> Result<()> {
        if self.is_facet(facet)? {
            Ok(())
        } else {
            Err(SubwordError::NotAFacet(facet.to_one_based()))
        }
    }

    /// `r_I(j) = (product of complement letters before j)(alpha_{q_j})` for every position.
    pub fn root_function(&self, facet: &Facet) -> Result<Vec<RootVector>> {
        self.require_facet(facet)?;
        Ok(self.root_function_unchecked(facet))
    }

    pub(crate) fn root_function_unchecked(&self, facet: &Facet) -> Vec<RootVector> {
        let mut v = GroupElement::identity(self.sys.rank());
        self.word
            .0
            .iter()
            .enumerate()
            .map(|(j, &q)| {
                let root = v.image_of_simple(q);
                root.assert_root();
                if !facet.contains(j) {
                    v = self.sys.right_multiply(&v, q);
                }
                root
            })
            .collect()
    }

    /// The root configuration `R(I)`: roots at facet positions.
    pub fn root_configuration(&self, facet: &Facet) -> Result<Vec<RootVector>> {
        let roots = self.root_function(facet)?;
        Ok(facet.0.iter().map(|&i| roots[i].clone()).collect())
    }

    pub fn flip(&self, facet: &Facet, i: usize) -> Result<FlipOutcome> {
        self.require_facet(facet)?;
        if !facet.contains(i) {
            return Err(SubwordError::NotInFacet(i + 1));
        }
        let roots = self.root_function_unchecked(facet);
        let target = roots[i].abs();
        let partners: Vec<usize> = (0..self.len())
            .filter(|j| !facet.contains(*j) && roots[*j].abs() == target)
            .collect();
        let partner = match partners.as_slice() {
            [] => return Ok(FlipOutcome::NonFlippable),
            [j] => *j,
            _ => {
                return Err(SubwordError::Internal(format!(
                    "several complement positions carry ±{}",
                    roots[i]
                )))
            }
        };
        // sign rule
        let expected = if i < partner {
            roots[i].clone()
        } else {
            -roots[i].clone()
        };
        if roots[partner] != expected {
            return Err(SubwordError::Internal(format!(
                "flip sign rule violated at positions {} and {}",
                i + 1,
                partner + 1
            )));
        }
        let mut positions: Vec<usize> = facet.0.iter().copied().filter(|p| *p != i).collect();
        positions.push(partner);
        let flipped = Facet::new(positions);
        if !self.is_facet(&flipped)? {
            return Err(SubwordError::Internal(format!(
                "flip of {} at {} is not a facet",
                facet,
                i + 1
            )));
        }
        // reflection update rule
        let new_roots = self.root_function_unchecked(&flipped);
        let (lo, hi) = (i.min(partner), i.max(partner));
        for k in 0..self.len() {
            let predicted = if lo < k && k <= hi {
                self.sys.reflect(&roots[i], &roots[k])
            } else {
                roots[k].clone()
            };
            if new_roots[k] != predicted {
                return Err(SubwordError::Internal(format!(
                    "root function update rule violated at position {}",
                    k + 1
                )));
            }
        }
        Ok(FlipOutcome::Flipped {
            facet: flipped,
            partner,
        })
    }

    /// Whether the root configuration spans the whole space.
    pub fn is_irreducible(&self, facet: &Facet) -> Result<bool> {
        let config = self.root_configuration(facet)?;
        let span = Subspace::span(self.sys.rank(), config.iter().map(|r| r.coords()));
        Ok(span.dim() == self.sys.rank())
    }

    /// Deletes the letters at `face`, keeping `pi`.
    pub fn link(&self, face: &Facet) -> Result<LinkInstance> {
        self.check_positions(face.positions())?;
        let origin: Vec<usize> = (0..self.len()).filter(|p| !face.contains(*p)).collect();
        let word = Word(origin.iter().map(|&p| self.word.0[p]).collect());
        let instance = SubwordInstance {
            sys: self.sys.clone(),
            word,
            pi: self.pi.clone(),
            pi_inverse: self.pi_inverse.clone(),
            pi_length: self.pi_length,
        };
        if instance.is_void() {
            return Err(SubwordError::NotAFace(face.to_one_based()));
        }
        Ok(LinkInstance { instance, origin })
    }

    pub fn is_face(&self, positions: &Facet) -> Result<bool> {
        match self.link(positions) {
            Ok(_) => Ok(true),
            Err(SubwordError::NotAFace(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl LinkInstance {
    /// Facets of the link in the labels of the original word.
    pub fn facets_in_original_labels(&self) -> Vec<Facet> {
        self.instance
            .facets()
            .into_iter()
            .map(|f| Facet::new(f.0.iter().map(|&k| self.origin[k]).collect()))
            .collect()
    }
}

/// Facets adjacent when they differ in exactly one position; checks connectivity of that graph.
pub fn flip_graph_connected(facets: &[Facet]) -> bool {
    if facets.is_empty() {
        return true;
    }
    let adjacent = |a: &Facet, b: &Facet| {
        a.len() == b.len() && a.0.iter().filter(|p| !b.contains(**p)).count() == 1
    };
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..facets.len() {
            if !seen[v] && adjacent(&facets[u], &facets[v]) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn a2_instance() -> SubwordInstance {
        let sys = CoxeterSystem::from_type("A2").unwrap();
        SubwordInstance::from_words(sys, Word(vec![0, 1, 0, 1, 0]), &Word(vec![0, 1])).unwrap()
    }

    fn f(labels: &[usize]) -> Facet {
        Facet::from_one_based(labels).unwrap()
    }

    #[test]
    fn a2_facets() {
        let list = a2_instance().enumerate_facets();
        assert!(!list.void);
        assert_eq!(list.facets, vec![f(&[1, 2, 5]), f(&[2, 3, 5]), f(&[3, 4, 5])]);
    }

    #[test]
    fn empty_word() {
        let sys = CoxeterSystem::from_type("A2").unwrap();
        let inst = SubwordInstance::from_words(sys.clone(), Word::default(), &Word::default()).unwrap();
        assert_eq!(inst.facets(), vec![Facet::default()]);
        let void = SubwordInstance::from_words(sys, Word(vec![0]), &Word(vec![1])).unwrap();
        let list = void.enumerate_facets();
        assert!(list.void && list.facets.is_empty());
    }

    #[test]
    fn is_facet_checks() {
        let inst = a2_instance();
        assert!(inst.is_facet(&f(&[2, 3, 5])).unwrap());
        assert!(!inst.is_facet(&f(&[1, 3, 5])).unwrap());
        assert!(!inst.is_facet(&f(&[1, 2, 3, 4, 5])).unwrap());
        assert!(inst.is_facet(&f(&[9])).is_err());
    }

    #[test]
    fn a2_flip() {
        let inst = a2_instance();
        let roots = inst.root_function(&f(&[2, 3, 5])).unwrap();
        let expected: Vec<RootVector> = [[1, 0], [1, 1], [-1, 0], [1, 1], [0, 1]]
            .iter()
            .map(|v| RootVector(v.to_vec()))
            .collect();
        assert_eq!(roots, expected);
        match inst.flip(&f(&[2, 3, 5]), 2).unwrap() {
            FlipOutcome::Flipped { facet, partner } => {
                assert_eq!(facet, f(&[1, 2, 5]));
                assert_eq!(partner, 0);
                match inst.flip(&facet, partner).unwrap() {
                    FlipOutcome::Flipped { facet, partner } => {
                        assert_eq!(facet, f(&[2, 3, 5]));
                        assert_eq!(partner, 2);
                    }
                    FlipOutcome::NonFlippable => panic!("flip back failed"),
                }
            }
            FlipOutcome::NonFlippable => panic!("expected a flip"),
        }
        assert!(matches!(
            inst.flip(&f(&[2, 3, 5]), 0),
            Err(SubwordError::NotInFacet(1))
        ));
        assert!(inst.is_irreducible(&f(&[2, 3, 5])).unwrap());
    }

    #[test]
    fn links() {
        let inst = a2_instance();
        let link = inst.link(&f(&[5])).unwrap();
        assert_eq!(
            link.facets_in_original_labels(),
            vec![f(&[1, 2]), f(&[2, 3]), f(&[3, 4])]
        );
        assert!(inst.is_face(&f(&[2, 5])).unwrap());
        assert!(!inst.is_face(&f(&[1, 4])).unwrap());
        let same = inst.link(&Facet::default()).unwrap();
        assert_eq!(same.facets_in_original_labels(), inst.facets());
    }

    #[test]
    fn a3_cluster_count() {
        let sys = CoxeterSystem::from_type("A3").unwrap();
        let w0 = sys.longest_word().unwrap();
        let inst = SubwordInstance::from_words(
            sys,
            Word(vec![0, 1, 2, 0, 1, 2, 0, 1, 0]),
            &w0,
        )
        .unwrap();
        let facets = inst.facets();
        assert_eq!(facets.len(), 14);
        assert!(flip_graph_connected(&facets));
    }
}
