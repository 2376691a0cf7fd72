//! Canonical representatives of equivalence classes of tuples `(W, Q, pi, I)`.
//!
//! Two tuples are identified when a generator relabeling preserving the Coxeter matrix
//! maps one word to the other up to commutation of adjacent commuting letters, carrying
//! facet to facet. The key is the lexicographically least `(matrix, word, facet)` over
//! all such relabelings, with each word in its least commutation normal form.

use std::fmt;

use crate::coxeter::{CoxeterSystem, Word, INFINITY};
use crate::error::{Result, SubwordError};
use crate::flats::Tuple;
use crate::subword::Facet;

/// Largest rank for which the relabeling search is attempted.
pub const CANONICALIZATION_RANK_BOUND: usize = 8;

/// Canonical form of a tuple. Ordering is by rank, matrix code, word, then facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    rank: usize,
    /// Upper triangle of the Coxeter matrix, column by column: `m[0][1], m[0][2], m[1][2], ...`.
    code: Vec<u32>,
    word: Vec<usize>,
    facet: Vec<usize>,
}

fn code_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Comparison value for a matrix entry; 2 first so that sparse diagrams sort low.
fn entry_rank(m: u32) -> u32 {
    match m {
        INFINITY => u32::MAX,
        v => v,
    }
}

impl BasisKey {
    /// The unit: the empty tuple of rank 0.
    pub fn unit() -> Self {
        BasisKey {
            rank: 0,
            code: Vec::new(),
            word: Vec::new(),
            facet: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.rank == 0
    }

    /// Degree `n`: the rank of the Coxeter group.
    pub fn degree(&self) -> usize {
        self.rank
    }

    pub fn word_length(&self) -> usize {
        self.word.len()
    }

    /// The least `m ≥ 2` with every finite `m_ij` (`i != j`) at most `m`: the first index of
    /// the `(m, ℓ)` filtration containing the key.
    pub fn filtration_m(&self) -> u32 {
        self.code
            .iter()
            .copied()
            .filter(|&m| m != INFINITY)
            .max()
            .unwrap_or(2)
            .max(2)
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank;
        let mut m = vec![vec![2u32; n]; n];
        for j in 0..n {
            for i in 0..j {
                let v = self.code[code_index(i, j)];
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        m
    }

    pub fn word(&self) -> Word {
        Word(self.word.clone())
    }

    pub fn facet(&self) -> Facet {
        Facet(self.facet.clone())
    }

    /// The system with the default Cartan matrix for this key's Coxeter matrix.
    pub fn system(&self) -> CoxeterSystem {
        CoxeterSystem::new(self.coxeter_matrix()).expect("key matrices are valid")
    }

    /// Realizes the key as a tuple; `pi` is the complement product.
    pub fn to_tuple(&self) -> Tuple {
        Tuple::from_word_and_facet(self.system(), self.word(), self.facet())
            .expect("key facets are facets of their complement product")
    }

    /// Builds a key from raw parts, canonicalizing them.
    pub fn from_parts(coxeter: &[Vec<u32>], word: &Word, facet: &Facet) -> Result<Self> {
        canonical_key(coxeter, word, facet)
    }

    /// Concatenation: block-diagonal Coxeter matrix, concatenated word, shifted facet.
    pub fn concat(keys: &[&BasisKey]) -> (Vec<Vec<u32>>, Word, Facet) {
        let n: usize = keys.iter().map(|k| k.rank).sum();
        let mut m = vec![vec![2u32; n]; n];
        let mut word = Vec::new();
        let mut facet = Vec::new();
        let mut offset = 0;
        for k in keys {
            let km = k.coxeter_matrix();
            for i in 0..k.rank {
                for j in 0..k.rank {
                    m[offset + i][offset + j] = km[i][j];
                }
            }
            let shift = word.len();
            facet.extend(k.facet.iter().map(|p| p + shift));
            word.extend(k.word.iter().map(|l| l + offset));
            offset += k.rank;
        }
        (m, Word(word), Facet(facet))
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        write!(f, "<m=[")?;
        for (k, v) in self.code.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if *v == INFINITY {
                write!(f, "inf")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        write!(f, "] Q={} I={}>", self.word(), self.facet())
    }
}

/// Canonical key of an irreducible tuple.
pub fn canonicalize(tuple: &Tuple) -> Result<BasisKey> {
    if !tuple.is_irreducible() {
        return Err(SubwordError::Reducible);
    }
    canonical_key(tuple.system().coxeter_matrix(), tuple.word(), tuple.facet())
}

/// Least commutation normal form of `word`; `order[k]` is the original position of letter `k`.
pub fn commutation_normal_form(word: &[usize], commute: impl Fn(usize, usize) -> bool) -> (Vec<usize>, Vec<usize>) {
    let r = word.len();
    // blockers[p]: earlier positions whose letter does not commute with word[p]
    let mut pending = vec![0usize; r];
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); r];
    for p in 0..r {
        for q in 0..p {
            if !commute(word[q], word[p]) {
                pending[p] += 1;
                successors[q].push(p);
            }
        }
    }
    let mut available: std::collections::BTreeSet<(usize, usize)> =
        (0..r).filter(|&p| pending[p] == 0).map(|p| (word[p], p)).collect();
    let mut letters = Vec::with_capacity(r);
    let mut order = Vec::with_capacity(r);
    while let Some((l, p)) = available.pop_first() {
        letters.push(l);
        order.push(p);
        for &s in &successors[p] {
            pending[s] -= 1;
            if pending[s] == 0 {
                available.insert((word[s], s));
            }
        }
    }
    assert_eq!(order.len(), r, "heap of a word is acyclic");
    (letters, order)
}

fn canonical_key(coxeter: &[Vec<u32>], word: &Word, facet: &Facet) -> Result<BasisKey> {
    let n = coxeter.len();
    if n > CANONICALIZATION_RANK_BOUND {
        return Err(SubwordError::CanonicalizationBound {
            rank: n,
            bound: CANONICALIZATION_RANK_BOUND,
        });
    }
    // Search for the relabelings minimizing the matrix code; perm[new] = old.
    let mut best_code: Option<Vec<u32>> = None;
    let mut optimal: Vec<Vec<usize>> = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut code = Vec::new();
    search(coxeter, &mut perm, &mut used, &mut code, &mut best_code, &mut optimal);
    let best_code = best_code.unwrap_or_default();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let commute = |a: usize, b: usize| a != b && coxeter_new(&best_code, a, b) == 2;
    for perm in &optimal {
        let mut inverse = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let relabeled: Vec<usize> = word.0.iter().map(|&l| inverse[l]).collect();
        let (letters, order) = commutation_normal_form(&relabeled, commute);
        let mut f: Vec<usize> = (0..order.len()).filter(|&k| facet.contains(order[k])).collect();
        f.sort_unstable();
        let candidate = (letters, f);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    let (word, facet) = best.unwrap_or_default();
    Ok(BasisKey {
        rank: n,
        code: best_code,
        word,
        facet,
    })
}

fn coxeter_new(code: &[u32], a: usize, b: usize) -> u32 {
    if a == b {
        1
    } else {
        code[code_index(a.min(b), a.max(b))]
    }
}

fn compare_prefix(code: &[u32], best: &[u32]) -> std::cmp::Ordering {
    let a = code.iter().map(|&m| entry_rank(m));
    let b = best[..code.len()].iter().map(|&m| entry_rank(m));
    a.cmp(b)
}

fn search(
    m: &[Vec<u32>],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    code: &mut Vec<u32>,
    best: &mut Option<Vec<u32>>,
    optimal: &mut Vec<Vec<usize>>,
) {
    let n = m.len();
    let k = perm.len();
    if k == n {
        match best {
            Some(b) => match compare_prefix(code, b) {
                std::cmp::Ordering::Less => {
                    *b = code.clone();
                    optimal.clear();
                    optimal.push(perm.clone());
                }
                std::cmp::Ordering::Equal => optimal.push(perm.clone()),
                std::cmp::Ordering::Greater => {}
            },
            None => {
                *best = Some(code.clone());
                optimal.push(perm.clone());
            }
        }
        return;
    }
    for old in 0..n {
        if used[old] {
            continue;
        }
        let before = code.len();
        for &prev in perm.iter() {
            code.push(m[prev][old]);
        }
        if best
            .as_ref()
            .is_none_or(|b| compare_prefix(code, b) != std::cmp::Ordering::Greater)
        {
            used[old] = true;
            perm.push(old);
            search(m, perm, used, code, best, optimal);
            perm.pop();
            used[old] = false;
        }
        code.truncate(before);
    }
}
