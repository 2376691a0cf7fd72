//! Reflection subgroups cut out of a root system, and restriction of inversion lists to them.

use crate::coxeter::{CoxeterSystem, GroupElement, RootVector, Word};
use crate::error::{Result, SubwordError};
use crate::linalg::Subspace;

/// A root subsystem `Phi'`: either `Phi ∩ U` for a subspace `U`, or an explicit root list.
#[derive(Clone, Debug)]
pub enum RootSubsystem {
    Subspace(Subspace),
    /// Closed under its own reflections; membership is up to sign.
    Roots(Vec<RootVector>),
}

impl RootSubsystem {
    pub fn contains(&self, root: &RootVector) -> bool {
        match self {
            RootSubsystem::Subspace(u) => u.contains(root.coords()),
            RootSubsystem::Roots(list) => {
                let a = root.abs();
                list.iter().any(|r| r.abs() == a)
            }
        }
    }
}

/// Reflection in `beta` as a group element.
pub fn reflection_element(sys: &CoxeterSystem, beta: &RootVector) -> GroupElement {
    let cols: Vec<RootVector> = (0..sys.rank())
        .map(|j| sys.reflect(beta, &sys.simple_root(j)))
        .collect();
    GroupElement::from_columns(&cols)
}

/// Whether the positive root `delta` of `sub` is simple there: `inv(s_delta) ∩ Phi' = {delta}`.
pub fn is_simple_in(sys: &CoxeterSystem, sub: &RootSubsystem, delta: &RootVector) -> bool {
    if !delta.is_positive() || !sub.contains(delta) {
        return false;
    }
    let s = reflection_element(sys, delta);
    let word = sys.reduced_word(&s);
    let inversions = sys.inversion_sequence(&word);
    let inside: Vec<&RootVector> = inversions.iter().filter(|g| sub.contains(g)).collect();
    inside.len() == 1 && inside[0] == delta
}

/// Simple roots `beta_1..beta_k` of a reflection subgroup, with the Coxeter system they generate.
#[derive(Clone, Debug)]
pub struct RestrictedSystem {
    pub simple_roots: Vec<RootVector>,
    /// `cartan[a][b] = 2<beta_a, beta_b> / <beta_a, beta_a>`.
    pub cartan: Vec<Vec<i64>>,
    pub system: CoxeterSystem,
}

impl RestrictedSystem {
    pub fn from_simple_roots(host: &CoxeterSystem, simple_roots: Vec<RootVector>) -> Result<Self> {
        let cartan: Vec<Vec<i64>> = simple_roots
            .iter()
            .map(|a| simple_roots.iter().map(|b| host.cartan_integer(a, b)).collect())
            .collect();
        let system = CoxeterSystem::from_cartan(cartan.clone())?;
        Ok(RestrictedSystem {
            simple_roots,
            cartan,
            system,
        })
    }

    /// The host vector `sum_a x_a beta_a` for coordinates `x` over the restricted simple roots.
    pub fn to_host(&self, x: &RootVector) -> RootVector {
        let n = self.simple_roots.first().map_or(0, |b| b.0.len());
        let mut v = vec![0i64; n];
        for (c, beta) in x.0.iter().zip(&self.simple_roots) {
            for (vi, bi) in v.iter_mut().zip(&beta.0) {
                *vi += c * bi;
            }
        }
        RootVector(v)
    }
}

/// Result of restricting `inv(P)` to a root subsystem.
#[derive(Clone, Debug)]
pub struct InversionRestriction {
    /// Positions of `P` whose inversion lies in `Phi'`.
    pub retained: Vec<usize>,
    pub filtered: Vec<RootVector>,
    /// `P'` over the restricted generators (indices into `restricted.simple_roots`).
    pub word: Word,
    pub restricted: RestrictedSystem,
    /// Whether the first retained inversion passed the simplicity test on its own.
    pub first_is_simple: bool,
}

/// Filters `inv(P)` to `sub` and reconstructs the word `P'` whose inversion list it is.
pub fn restrict_inversions(
    sys: &CoxeterSystem,
    word: &Word,
    sub: &RootSubsystem,
) -> Result<InversionRestriction> {
    sys.check_word(word)?;
    let inversions = sys.inversion_sequence(word);
    let mut retained = Vec::new();
    let mut filtered = Vec::new();
    for (k, g) in inversions.into_iter().enumerate() {
        if sub.contains(&g) {
            retained.push(k);
            filtered.push(g);
        }
    }
    let first_is_simple = filtered
        .first()
        .is_none_or(|g| is_simple_in(sys, sub, g));
    let mut simple: Vec<RootVector> = Vec::new();
    let mut letters = Vec::new();
    let mut w = GroupElement::identity(sys.rank());
    for gamma in &filtered {
        let beta = sys.inverse(&w).apply(gamma);
        let index = match simple.iter().position(|b| *b == beta) {
            Some(i) => i,
            None => {
                if !is_simple_in(sys, sub, &beta) {
                    return Err(SubwordError::Internal(format!(
                        "restricted inversion {gamma} pulls back to the non-simple root {beta}"
                    )));
                }
                simple.push(beta.clone());
                simple.len() - 1
            }
        };
        letters.push(index);
        w = w.compose(&reflection_element(sys, &beta));
    }
    let restricted = RestrictedSystem::from_simple_roots(sys, simple)?;
    Ok(InversionRestriction {
        retained,
        filtered,
        word: Word(letters),
        restricted,
        first_is_simple,
    })
}

impl InversionRestriction {
    /// `inv(P')` computed in the restricted system and mapped back to host coordinates.
    pub fn restricted_inversions_in_host(&self) -> Vec<RootVector> {
        self.restricted
            .system
            .inversion_sequence(&self.word)
            .iter()
            .map(|x| self.restricted.to_host(x))
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.restricted_inversions_in_host() == self.filtered
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_line() {
        let sys = CoxeterSystem::from_type("A2").unwrap();
        let sub = RootSubsystem::Subspace(Subspace::span(2, [&[0, 1][..]]));
        let r = restrict_inversions(&sys, &Word(vec![0, 1, 0]), &sub).unwrap();
        assert_eq!(r.filtered, vec![RootVector(vec![0, 1])]);
        assert_eq!(r.word, Word(vec![0]));
        assert_eq!(r.restricted.simple_roots, vec![RootVector(vec![0, 1])]);
        assert!(r.first_is_simple && r.is_consistent());
    }

    #[test]
    fn full_subsystem_is_identity() {
        let sys = CoxeterSystem::from_type("B3").unwrap();
        let sub = RootSubsystem::Subspace(Subspace::full(3));
        let p = Word(vec![0, 1, 2, 1, 0, 2]);
        let r = restrict_inversions(&sys, &p, &sub).unwrap();
        assert_eq!(r.word, p);
        assert_eq!(r.restricted.cartan, sys.cartan());
        assert!(r.is_consistent());
    }

    #[test]
    fn non_reduced_affine() {
        let sys = CoxeterSystem::from_type("At2").unwrap();
        let sub = RootSubsystem::Subspace(Subspace::span(3, [&[1, 1, 0][..], &[1, 0, 1][..]]));
        let p = Word(vec![0, 1, 2, 0, 1, 2, 0, 1, 2, 2]);
        let r = restrict_inversions(&sys, &p, &sub).unwrap();
        assert!(r.first_is_simple && r.is_consistent());
    }

    #[test]
    fn explicit_root_list() {
        let sys = CoxeterSystem::from_type("A3").unwrap();
        // A1 x A1 spanned by alpha_1 and alpha_3
        let sub = RootSubsystem::Roots(vec![RootVector(vec![1, 0, 0]), RootVector(vec![0, 0, 1])]);
        let w0 = sys.longest_word().unwrap();
        let r = restrict_inversions(&sys, &w0, &sub).unwrap();
        assert_eq!(r.filtered.len(), 2);
        assert_eq!(r.restricted.system.coxeter_matrix(), &[vec![2, 2], vec![2, 2]]);
        assert!(r.is_consistent());
    }

    #[test]
    fn simplicity() {
        let sys = CoxeterSystem::from_type("A2").unwrap();
        let full = RootSubsystem::Subspace(Subspace::full(2));
        assert!(is_simple_in(&sys, &full, &RootVector(vec![1, 0])));
        assert!(!is_simple_in(&sys, &full, &RootVector(vec![1, 1])));
        let line = RootSubsystem::Subspace(Subspace::span(2, [&[1, 1][..]]));
        assert!(is_simple_in(&sys, &line, &RootVector(vec![1, 1])));
    }
}
