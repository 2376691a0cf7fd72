//! Flats of a root function, restriction to flats, and flat decompositions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::coxeter::{CoxeterSystem, GroupElement, RootVector, Word};
use crate::error::{Result, SubwordError};
use crate::linalg::{Rational, Subspace};
use crate::subsystem::{is_simple_in, RestrictedSystem, RootSubsystem};
use crate::subword::{Facet, SubwordInstance};

/// A facet of a subword complex together with its root function: the tuple `(W, Q, pi, I)`.
#[derive(Clone, Debug)]
pub struct Tuple {
    instance: SubwordInstance,
    facet: Facet,
    roots: Vec<RootVector>,
}

impl Tuple {
    pub fn new(instance: SubwordInstance, facet: Facet) -> Result<Self> {
        let roots = instance.root_function(&facet)?;
        Ok(Tuple {
            instance,
            facet,
            roots,
        })
    }

    /// The tuple whose `pi` is the product of the complement of `facet`.
    pub fn from_word_and_facet(sys: CoxeterSystem, word: Word, facet: Facet) -> Result<Self> {
        for &p in facet.positions() {
            if p >= word.len() {
                return Err(SubwordError::PositionOutOfRange {
                    position: p + 1,
                    len: word.len(),
                });
            }
        }
        let complement = Word(
            (0..word.len())
                .filter(|p| !facet.contains(*p))
                .map(|p| word.0[p])
                .collect(),
        );
        let instance = SubwordInstance::from_words(sys, word, &complement)?;
        Self::new(instance, facet)
    }

    pub fn instance(&self) -> &SubwordInstance {
        &self.instance
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.instance.system()
    }

    pub fn word(&self) -> &Word {
        self.instance.word()
    }

    pub fn facet(&self) -> &Facet {
        &self.facet
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.system().rank()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn configuration_span(&self) -> Subspace {
        Subspace::span(
            self.rank(),
            self.facet.positions().iter().map(|&i| self.roots[i].coords()),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        self.configuration_span().dim() == self.rank()
    }

    /// `cl(S)`: all positions whose root lies in `U`.
    pub fn closure_of_subspace(&self, u: Subspace) -> Flat {
        let positions = (0..self.len())
            .filter(|&j| u.contains(self.roots[j].coords()))
            .collect();
        Flat::new(positions, u)
    }

    /// Closure of a set of positions.
    pub fn closure(&self, positions: &[usize]) -> Flat {
        let u = Subspace::span(self.rank(), positions.iter().map(|&j| self.roots[j].coords()));
        self.closure_of_subspace(u)
    }

    pub fn full_flat(&self) -> Flat {
        self.closure_of_subspace(Subspace::full(self.rank()))
    }

    pub fn empty_flat(&self) -> Flat {
        self.closure_of_subspace(Subspace::zero(self.rank()))
    }

    /// Builds the flat with the given positions, checking closure.
    pub fn flat_from_positions(&self, positions: &[usize]) -> Result<Flat> {
        let flat = self.closure(positions);
        let mut sorted = positions.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if flat.positions != sorted {
            return Err(SubwordError::Unsupported(format!(
                "positions {:?} are not closed; their closure is {:?}",
                sorted.iter().map(|p| p + 1).collect::<Vec<_>>(),
                flat.to_one_based()
            )));
        }
        Ok(flat)
    }

    /// `span V_F = span R(I_F)`, i.e. the roots of `F` at facet positions span `F`.
    pub fn is_irreducible_flat(&self, flat: &Flat) -> bool {
        let u = Subspace::span(
            self.rank(),
            flat.positions
                .iter()
                .filter(|j| self.facet.contains(**j))
                .map(|&j| self.roots[j].coords()),
        );
        u.dim() == flat.dim()
    }

    /// All flats, sorted by `(dim, J)`; includes the empty and the full flat.
    pub fn enumerate_flats(&self) -> Vec<Flat> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut flats = Vec::new();
        let empty = self.empty_flat();
        seen.insert(empty.positions.clone());
        let mut frontier = vec![empty.clone()];
        flats.push(empty);
        while let Some(f) = frontier.pop() {
            for p in 0..self.len() {
                if f.contains(p) {
                    continue;
                }
                let mut u = f.subspace.clone();
                u.insert(self.roots[p].coords());
                let g = self.closure_of_subspace(u);
                if seen.insert(g.positions.clone()) {
                    frontier.push(g.clone());
                    flats.push(g);
                }
            }
        }
        flats.sort();
        flats
    }

    /// The restricted tuple `(W_F, Q_F, pi_F, I_F)` carried by `flat`.
    pub fn restrict(&self, flat: &Flat) -> Result<RestrictedTuple> {
        let sys = self.system();
        let word = self.word();
        let mut v = GroupElement::identity(sys.rank());
        let mut betas = Vec::with_capacity(flat.positions.len());
        for j in 0..self.len() {
            let q = word.0[j];
            if flat.contains(j) {
                betas.push(v.image_of_simple(q));
            } else if !self.facet.contains(j) {
                v = sys.right_multiply(&v, q);
            }
        }
        let sub = RootSubsystem::Subspace(flat.subspace.clone());
        let mut simple: Vec<RootVector> = Vec::new();
        let mut letters = Vec::with_capacity(betas.len());
        for beta in &betas {
            let index = match simple.iter().position(|b| b == beta) {
                Some(i) => i,
                None => {
                    if !is_simple_in(sys, &sub, beta) {
                        return Err(SubwordError::Internal(format!(
                            "restricted root {beta} is not simple in the flat's root subsystem"
                        )));
                    }
                    simple.push(beta.clone());
                    simple.len() - 1
                }
            };
            letters.push(index);
        }
        if Subspace::span(sys.rank(), simple.iter().map(|b| b.coords())).dim() != simple.len() {
            return Err(SubwordError::Internal(
                "restricted simple roots are linearly dependent".into(),
            ));
        }
        let restricted = RestrictedSystem::from_simple_roots(sys, simple)?;
        let facet = Facet::new(
            flat.positions
                .iter()
                .enumerate()
                .filter(|(_, j)| self.facet.contains(**j))
                .map(|(k, _)| k)
                .collect(),
        );
        let tuple = Tuple::from_word_and_facet(restricted.system.clone(), Word(letters), facet)?;
        Ok(RestrictedTuple {
            betas,
            restricted,
            origin: flat.positions.clone(),
            tuple,
        })
    }

    /// The face `I \ Ī_F` whose link is isomorphic to the restricted complex.
    pub fn link_face(&self, flat: &Flat) -> Facet {
        Facet::new(
            self.facet
                .positions()
                .iter()
                .copied()
                .filter(|j| !flat.contains(*j))
                .collect(),
        )
    }

    /// Checks root-function transport and the link isomorphism for one flat.
    pub fn verify_decomposition_theorem(&self, flat: &Flat) -> DecompositionReport {
        let restricted = match self.restrict(flat) {
            Ok(r) => r,
            Err(e) => {
                return DecompositionReport::fail(format!("restriction failed: {e}"));
            }
        };
        let r_f = restricted.tuple.roots();
        for (k, &j) in restricted.origin.iter().enumerate() {
            let host = restricted.restricted.to_host(&r_f[k]);
            if host != self.roots[j] {
                return DecompositionReport::fail(format!(
                    "transport fails at restricted position {}: {} maps to {} but r_I({}) = {}",
                    k + 1,
                    r_f[k],
                    host,
                    j + 1,
                    self.roots[j]
                ));
            }
        }
        let link = match self.instance.link(&self.link_face(flat)) {
            Ok(l) => l,
            Err(e) => return DecompositionReport::fail(format!("link failed: {e}")),
        };
        let link_facets = link.facets_in_original_labels();
        let mapped: Vec<Facet> = restricted
            .tuple
            .instance()
            .facets()
            .into_iter()
            .map(|f| Facet::new(f.0.iter().map(|&k| restricted.origin[k]).collect()))
            .collect();
        let mut sorted = mapped.clone();
        sorted.sort();
        if sorted != link_facets {
            return DecompositionReport::fail(format!(
                "link facets {:?} differ from restricted facets {:?}",
                link_facets.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                sorted.iter().map(|f| f.to_string()).collect::<Vec<_>>()
            ));
        }
        DecompositionReport {
            passed: true,
            message: None,
            link_facets,
        }
    }

    /// Ordered tuples of irreducible flats of positive dimension whose spans form a direct sum.
    ///
    /// `length = None` returns decompositions of every length.
    pub fn flat_decompositions(&self, length: Option<usize>) -> Result<Vec<FlatDecomposition>> {
        if !self.is_irreducible() {
            return Err(SubwordError::Reducible);
        }
        let candidates: Vec<Flat> = self
            .enumerate_flats()
            .into_iter()
            .filter(|f| f.dim() >= 1 && self.is_irreducible_flat(f))
            .collect();
        let n = self.rank();
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        fn extend(
            candidates: &[Flat],
            n: usize,
            length: Option<usize>,
            span: &Subspace,
            current: &mut Vec<usize>,
            out: &mut Vec<FlatDecomposition>,
        ) {
            if span.dim() == n {
                if length.is_none_or(|l| l == current.len()) && !current.is_empty() {
                    out.push(FlatDecomposition {
                        parts: current.iter().map(|&i| candidates[i].clone()).collect(),
                    });
                }
                return;
            }
            if length.is_some_and(|l| current.len() >= l) {
                return;
            }
            for (i, f) in candidates.iter().enumerate() {
                let joined = span.join(&f.subspace);
                if joined.dim() != span.dim() + f.dim() {
                    continue;
                }
                current.push(i);
                extend(candidates, n, length, &joined, current, out);
                current.pop();
            }
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        extend(&candidates, n, length, &Subspace::zero(n), &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    /// Whether two flats are orthogonal in the root list: every pair of their roots has zero
    /// form value and the flat spanned by both carries no further roots, so that it splits as
    /// the product of the two.
    pub fn flats_orthogonal(&self, a: &Flat, b: &Flat) -> bool {
        let sys = self.system();
        let pairwise = a.positions.iter().all(|&i| {
            b.positions
                .iter()
                .all(|&j| sys.orthogonal(&self.roots[i], &self.roots[j]))
        });
        if !pairwise {
            return false;
        }
        let mut union: Vec<usize> = a.positions.iter().chain(&b.positions).copied().collect();
        union.sort_unstable();
        union.dedup();
        self.closure_of_subspace(a.subspace.join(&b.subspace)).positions == union
    }

    /// Splits a flat into the connected components of its non-orthogonality graph.
    pub fn orthogonal_components(&self, flat: &Flat) -> Vec<Flat> {
        let sys = self.system();
        let pos = &flat.positions;
        let mut component = vec![usize::MAX; pos.len()];
        let mut count = 0;
        for start in 0..pos.len() {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = count;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for b in 0..pos.len() {
                    if component[b] == usize::MAX
                        && !sys.orthogonal(&self.roots[pos[a]], &self.roots[pos[b]])
                    {
                        component[b] = count;
                        stack.push(b);
                    }
                }
            }
            count += 1;
        }
        let mut parts: Vec<Flat> = (0..count)
            .map(|c| {
                let members: Vec<usize> = (0..pos.len())
                    .filter(|&a| component[a] == c)
                    .map(|a| pos[a])
                    .collect();
                let f = self.closure(&members);
                assert_eq!(f.positions, members, "orthogonal component is not closed");
                f
            })
            .collect();
        parts.sort();
        parts
    }

    /// The finest refinement of `d` obtained by splitting each part into orthogonal components.
    ///
    /// Components stay grouped under their parent part, in `(dim, J)` order within each part.
    pub fn maximal_refinement(&self, d: &FlatDecomposition) -> FlatDecomposition {
        let parts: Vec<Flat> = d
            .parts
            .iter()
            .flat_map(|p| self.orthogonal_components(p))
            .collect();
        let refined = FlatDecomposition { parts };
        assert!(
            self.is_flat_decomposition(&refined),
            "maximal refinement is not a flat decomposition"
        );
        refined
    }

    pub fn is_flat_decomposition(&self, d: &FlatDecomposition) -> bool {
        let mut span = Subspace::zero(self.rank());
        for p in &d.parts {
            if p.dim() == 0 || !self.is_irreducible_flat(p) {
                return false;
            }
            let joined = span.join(&p.subspace);
            if joined.dim() != span.dim() + p.dim() {
                return false;
            }
            span = joined;
        }
        span.dim() == self.rank()
    }

    /// `coarse ≤ fine`: the parts of `fine` group consecutively into pairwise orthogonal
    /// blocks whose unions are the parts of `coarse`.
    pub fn refinement_leq(&self, coarse: &FlatDecomposition, fine: &FlatDecomposition) -> bool {
        let mut k = 0;
        for part in &coarse.parts {
            let mut union: BTreeSet<usize> = BTreeSet::new();
            let start = k;
            while k < fine.parts.len() && union.len() < part.positions.len() {
                union.extend(fine.parts[k].positions.iter().copied());
                k += 1;
            }
            if union.iter().copied().collect::<Vec<_>>() != part.positions {
                return false;
            }
            for a in start..k {
                for b in (a + 1)..k {
                    if !self.flats_orthogonal(&fine.parts[a], &fine.parts[b]) {
                        return false;
                    }
                }
            }
        }
        k == fine.parts.len()
    }

    /// The tuple restricted to the span of its root configuration, which is irreducible.
    pub fn irreducible_reduction(&self) -> Result<RestrictedTuple> {
        let flat = self.closure_of_subspace(self.configuration_span());
        self.restrict(&flat)
    }
}

/// A flat: positions `J_F` of the root list lying in a subspace, with their span.
#[derive(Clone, Debug)]
pub struct Flat {
    positions: Vec<usize>,
    subspace: Subspace,
}

impl Flat {
    fn new(positions: Vec<usize>, subspace: Subspace) -> Self {
        Flat {
            positions,
            subspace,
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p + 1).collect()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Reduced row echelon basis of the span.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.subspace.rref()
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.positions == other.positions
    }
}

impl Eq for Flat {}

impl Hash for Flat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.positions.hash(state);
    }
}

impl Ord for Flat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim(), &self.positions).cmp(&(other.dim(), &other.positions))
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J={:?} dim={}", self.to_one_based(), self.dim())
    }
}

/// An ordered tuple of flats whose spans form a direct sum decomposition of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlatDecomposition {
    pub parts: Vec<Flat>,
}

impl FlatDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl Ord for FlatDecomposition {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |d: &FlatDecomposition| {
            (
                d.parts.len(),
                d.parts.iter().map(|p| p.positions.clone()).collect::<Vec<_>>(),
            )
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for FlatDecomposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The data carried by a flat.
#[derive(Clone, Debug)]
pub struct RestrictedTuple {
    /// `beta_k` for every position of the flat, in host coordinates.
    pub betas: Vec<RootVector>,
    pub restricted: RestrictedSystem,
    /// `origin[k] = j_k`.
    pub origin: Vec<usize>,
    pub tuple: Tuple,
}

impl RestrictedTuple {
    /// `Ī_F`: host positions of the restricted facet.
    pub fn bar_facet(&self) -> Facet {
        Facet::new(
            self.tuple
                .facet()
                .positions()
                .iter()
                .map(|&k| self.origin[k])
                .collect(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub passed: bool,
    pub message: Option<String>,
    pub link_facets: Vec<Facet>,
}

impl DecompositionReport {
    fn fail(message: String) -> Self {
        DecompositionReport {
            passed: false,
            message: Some(message),
            link_facets: Vec::new(),
        }
    }
}

/// Counts of the number of flats per dimension, for summaries.
pub fn flats_by_dimension(flats: &[Flat]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for f in flats {
        *m.entry(f.dim()).or_insert(0) += 1;
    }
    m
}
