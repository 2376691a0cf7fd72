//! Crystallographic Coxeter systems and their geometric representation on roots.
//!
//! Roots and group elements are kept in the basis of simple roots. The action of
//! generator `i` is `s_i(v) = v - (sum_j v_j A[i][j]) e_i` for the Cartan matrix `A`,
//! and the invariant symmetric form is `B = D A` for a positive diagonal `D`.
//! Only `m_ij` in {2, 3, 4, 6, infinity} are supported, so every coordinate is an integer.

use std::fmt;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::CoxeterError;
use crate::linalg::{self, rational, Rational};

/// `m_ij = infinity` is encoded as 0 throughout.
pub const INFINITY: u32 = 0;

/// Coxeter exponent implied by the product `A[i][j] * A[j][i]`.
pub fn coxeter_exponent_from_product(product: i64) -> u32 {
    match product {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => INFINITY,
    }
}

fn default_cartan_pair(m: u32) -> (i64, i64) {
    match m {
        2 => (0, 0),
        3 => (-1, -1),
        4 => (-1, -2),
        6 => (-1, -3),
        _ => (-2, -2),
    }
}

/// An integer vector in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|x| *x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|x| *x <= 0)
    }

    /// The positive root among `±self`.
    pub fn abs(&self) -> RootVector {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Asserts the sign dichotomy every root satisfies.
    pub fn assert_root(&self) {
        assert!(
            self.is_positive() || self.is_negative(),
            "vector {self} is not a root: mixed signs or zero"
        );
    }
}

impl std::ops::Neg for RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A finite word in the generators; letters are 0-based internally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// Builds a word from 1-based generator labels.
    pub fn from_one_based(labels: &[usize]) -> Result<Self, CoxeterError> {
        labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or(CoxeterError::GeneratorOutOfRange { index: l, rank: 0 })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|l| l + 1).collect()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l + 1)?;
        }
        write!(f, ")")
    }
}

/// A group element, stored as its integer matrix on the simple-root basis.
///
/// Entry `(i, j)` is the coefficient of `alpha_i` in the image of `alpha_j`.
/// The geometric representation is faithful, so equality of matrices is equality in `W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    rank: usize,
    entries: Vec<i64>,
}

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        let mut entries = vec![0; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        GroupElement { rank, entries }
    }

    /// Builds the matrix whose column `j` is `cols[j]`; no group-membership check.
    pub fn from_columns(cols: &[RootVector]) -> Self {
        let rank = cols.len();
        let mut entries = vec![0; rank * rank];
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.0.len(), rank, "column length does not match rank");
            for i in 0..rank {
                entries[i * rank + j] = c.0[i];
            }
        }
        GroupElement { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }

    /// Image of the simple root `alpha_j` (column `j`).
    pub fn image_of_simple(&self, j: usize) -> RootVector {
        RootVector((0..self.rank).map(|i| self.entry(i, j)).collect())
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        let n = self.rank;
        RootVector(
            (0..n)
                .map(|i| (0..n).map(|j| self.entries[i * n + j] * v.0[j]).sum())
                .collect(),
        )
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let n = self.rank;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        entries[i * n + j] += a * other.entries[k * n + j];
                    }
                }
            }
        }
        GroupElement { rank: n, entries }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| self.entries[i * self.rank..(i + 1) * self.rank].to_vec())
            .collect()
    }
}

/// A crystallographic Coxeter system with its Cartan data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    rank: usize,
    coxeter: Vec<Vec<u32>>,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Rational>,
    /// Integer multiple of `D A`; symmetric with positive diagonal.
    form: Vec<Vec<i64>>,
    generators: Vec<GroupElement>,
}

fn validate_coxeter_matrix(m: &[Vec<u32>]) -> Result<(), CoxeterError> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(CoxeterError::Ragged {
                row: i,
                len: row.len(),
                rank: n,
            });
        }
    }
    for i in 0..n {
        // 1 (textbook) and 2 (JSON convention) are both accepted on the diagonal.
        if !matches!(m[i][i], 1 | 2) {
            return Err(CoxeterError::InvalidEntry {
                i,
                j: i,
                value: m[i][i],
                reason: "diagonal entries must be 1 or 2",
            });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = m[i][j];
            if !matches!(v, 2 | 3 | 4 | 6 | INFINITY) {
                let reason = if v == 5 || v > 6 {
                    "non-crystallographic value (only 2, 3, 4, 6 and infinity = 0 are supported)"
                } else {
                    "off-diagonal entries must be in {2, 3, 4, 6, 0 = infinity}"
                };
                return Err(CoxeterError::InvalidEntry { i, j, value: v, reason });
            }
            if m[j][i] != v {
                return Err(CoxeterError::InvalidEntry {
                    i,
                    j,
                    value: v,
                    reason: "matrix is not symmetric",
                });
            }
        }
    }
    Ok(())
}

/// Solves `d_i A_ij = d_j A_ji` by propagation along spanning trees of the Coxeter graph.
fn symmetrize(cartan: &[Vec<i64>]) -> Result<Vec<Rational>, CoxeterError> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Rational::one());
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().expect("visited");
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = di.clone() * rational(cartan[i][j]) / rational(cartan[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(CoxeterError::NotSymmetrizable { i, j })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(d.into_iter().map(|x| x.expect("all assigned")).collect())
}

impl CoxeterSystem {
    /// Builds the system with the default Cartan assignment.
    pub fn new(coxeter: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        Self::with_cartan(coxeter, None)
    }

    /// Builds the system, optionally with an explicit Cartan matrix validated against `coxeter`.
    pub fn with_cartan(
        coxeter: Vec<Vec<u32>>,
        cartan: Option<Vec<Vec<i64>>>,
    ) -> Result<Self, CoxeterError> {
        let mut coxeter = coxeter;
        let n = coxeter.len();
        validate_coxeter_matrix(&coxeter)?;
        for (i, row) in coxeter.iter_mut().enumerate() {
            row[i] = 2;
        }
        let cartan = match cartan {
            Some(a) => {
                Self::validate_cartan(&coxeter, &a)?;
                a
            }
            None => {
                let mut a = vec![vec![0i64; n]; n];
                for i in 0..n {
                    a[i][i] = 2;
                    for j in (i + 1)..n {
                        let (x, y) = default_cartan_pair(coxeter[i][j]);
                        a[i][j] = x;
                        a[j][i] = y;
                    }
                }
                a
            }
        };
        let symmetrizer = symmetrize(&cartan)?;
        // Clear denominators so the form is integral.
        let lcm = symmetrizer
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, d| acc.lcm(d.denom()));
        let scaled: Vec<i64> = symmetrizer
            .iter()
            .map(|d| {
                let v = d * Rational::from_integer(lcm.clone());
                i64::try_from(v.to_integer()).expect("symmetrizer fits in i64")
            })
            .collect();
        let form = (0..n)
            .map(|i| (0..n).map(|j| scaled[i] * cartan[i][j]).collect())
            .collect();
        let generators = (0..n)
            .map(|i| {
                let mut g = GroupElement::identity(n);
                // column j: alpha_j - A[i][j] alpha_i
                for j in 0..n {
                    g.entries[i * n + j] -= cartan[i][j];
                }
                g
            })
            .collect();
        let sys = CoxeterSystem {
            rank: n,
            coxeter,
            cartan,
            symmetrizer,
            form,
            generators,
        };
        Ok(sys)
    }

    fn validate_cartan(coxeter: &[Vec<u32>], a: &[Vec<i64>]) -> Result<(), CoxeterError> {
        let n = coxeter.len();
        if a.len() != n {
            return Err(CoxeterError::Ragged {
                row: a.len(),
                len: a.len(),
                rank: n,
            });
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::Ragged {
                    row: i,
                    len: row.len(),
                    rank: n,
                });
            }
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CoxeterError::InvalidCartan {
                    i,
                    j: i,
                    value: a[i][i],
                    reason: "diagonal entries must be 2",
                });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(CoxeterError::InvalidCartan {
                        i,
                        j,
                        value: a[i][j],
                        reason: "off-diagonal entries must be nonpositive",
                    });
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CoxeterError::InvalidCartan {
                        i,
                        j,
                        value: a[i][j],
                        reason: "A[i][j] = 0 must coincide with A[j][i] = 0",
                    });
                }
                let implied = coxeter_exponent_from_product(a[i][j] * a[j][i]);
                if implied != coxeter[i][j] {
                    return Err(CoxeterError::CartanMismatch {
                        i,
                        j,
                        a_ij: a[i][j],
                        a_ji: a[j][i],
                        implied,
                        given: coxeter[i][j],
                    });
                }
            }
        }
        Ok(())
    }

    /// Builds the system whose Cartan matrix is given; the Coxeter matrix is derived from it.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, CoxeterError> {
        let n = cartan.len();
        let mut coxeter = vec![vec![2u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    coxeter[i][j] = coxeter_exponent_from_product(cartan[i][j] * cartan[j][i]);
                }
            }
        }
        Self::with_cartan(coxeter, Some(cartan))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// `m_ij`, or `None` for infinity.
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        match self.coxeter[i][j] {
            INFINITY => None,
            v => Some(v),
        }
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        i != j && self.coxeter[i][j] == 2
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    /// The symmetric bilinear form `B = D A` with the rational symmetrizer.
    pub fn bilinear_form(&self) -> Vec<Vec<Rational>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.symmetrizer[i].clone() * rational(self.cartan[i][j]))
                    .collect()
            })
            .collect()
    }

    /// Integer positive multiple of the invariant form; use for sign and zero tests.
    pub fn form_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn form(&self, x: &RootVector, y: &RootVector) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            let mut t = 0;
            for j in 0..n {
                t += self.form[i][j] * y.0[j];
            }
            s += x.0[i] * t;
        }
        s
    }

    pub fn orthogonal(&self, x: &RootVector, y: &RootVector) -> bool {
        self.form(x, y) == 0
    }

    /// Cartan integer `2<beta,gamma>/<beta,beta>`.
    pub fn cartan_integer(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        let num = 2 * self.form(beta, gamma);
        let den = self.form(beta, beta);
        assert!(den > 0, "root {beta} has nonpositive norm");
        assert!(
            num % den == 0,
            "non-integral Cartan integer for {beta}, {gamma}"
        );
        num / den
    }

    pub fn check_generator(&self, i: usize) -> Result<(), CoxeterError> {
        if i >= self.rank {
            Err(CoxeterError::GeneratorOutOfRange {
                index: i + 1,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, word: &Word) -> Result<(), CoxeterError> {
        word.0.iter().try_for_each(|&l| self.check_generator(l))
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        RootVector::simple(self.rank, i)
    }

    pub fn generator(&self, i: usize) -> &GroupElement {
        &self.generators[i]
    }

    /// `s_i(root)`.
    pub fn act_on_root(&self, i: usize, root: &RootVector) -> RootVector {
        let mut v = root.0.clone();
        let c: i64 = (0..self.rank).map(|j| root.0[j] * self.cartan[i][j]).sum();
        v[i] -= c;
        RootVector(v)
    }

    /// Reflection `s_beta(x) = x - (2<beta,x>/<beta,beta>) beta`.
    pub fn reflect(&self, beta: &RootVector, x: &RootVector) -> RootVector {
        let c = self.cartan_integer(beta, x);
        RootVector(x.0.iter().zip(&beta.0).map(|(a, b)| a - c * b).collect())
    }

    /// `g * s_i`.
    pub fn right_multiply(&self, g: &GroupElement, i: usize) -> GroupElement {
        // (g s_i)(alpha_j) = g(alpha_j) - A[i][j] g(alpha_i)
        let n = self.rank;
        let mut out = g.clone();
        for j in 0..n {
            let c = self.cartan[i][j];
            if c != 0 {
                for r in 0..n {
                    out.entries[r * n + j] -= c * g.entries[r * n + i];
                }
            }
        }
        out
    }

    pub fn word_to_element(&self, word: &Word) -> GroupElement {
        word.0
            .iter()
            .fold(GroupElement::identity(self.rank), |g, &l| self.right_multiply(&g, l))
    }

    /// A reduced word for `g`, found by greedy right descents.
    ///
    /// Terminates for every element of every Coxeter group, since each step lowers the length.
    pub fn reduced_word(&self, g: &GroupElement) -> Word {
        let mut g = g.clone();
        let mut letters = Vec::new();
        'outer: loop {
            for i in 0..self.rank {
                let col = g.image_of_simple(i);
                if col.is_negative() {
                    g = self.right_multiply(&g, i);
                    letters.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        assert!(g.is_identity(), "greedy descent did not reach the identity");
        letters.reverse();
        Word(letters)
    }

    pub fn element_length(&self, g: &GroupElement) -> usize {
        self.reduced_word(g).len()
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        self.word_to_element(&self.reduced_word(g).reversed())
    }

    /// `gamma_i = p_1 ... p_{i-1}(alpha_{p_i})`.
    pub fn inversion_sequence(&self, word: &Word) -> Vec<RootVector> {
        let mut g = GroupElement::identity(self.rank);
        word.0
            .iter()
            .map(|&l| {
                let gamma = g.image_of_simple(l);
                gamma.assert_root();
                g = self.right_multiply(&g, l);
                gamma
            })
            .collect()
    }

    pub fn is_reduced(&self, word: &Word) -> bool {
        self.inversion_sequence(word).iter().all(|r| r.is_positive())
    }

    /// Positive definiteness of the invariant form.
    pub fn is_finite(&self) -> bool {
        linalg::is_positive_definite(&self.bilinear_form())
    }

    /// The longest element as a reduced word, when the group is finite.
    pub fn longest_word(&self) -> Option<Word> {
        if !self.is_finite() {
            return None;
        }
        let mut g = GroupElement::identity(self.rank);
        let mut letters = Vec::new();
        'outer: loop {
            for i in 0..self.rank {
                if g.image_of_simple(i).is_positive() {
                    g = self.right_multiply(&g, i);
                    letters.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        Some(Word(letters))
    }

    pub fn longest_element(&self) -> Option<GroupElement> {
        self.longest_word().map(|w| self.word_to_element(&w))
    }

    /// Block-diagonal union; generators of `other` are shifted past those of `self`.
    pub fn direct_product(&self, other: &CoxeterSystem) -> CoxeterSystem {
        let n = self.rank + other.rank;
        let mut m = vec![vec![2u32; n]; n];
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..self.rank {
            for j in 0..self.rank {
                m[i][j] = self.coxeter[i][j];
                a[i][j] = self.cartan[i][j];
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                m[self.rank + i][self.rank + j] = other.coxeter[i][j];
                a[self.rank + i][self.rank + j] = other.cartan[i][j];
            }
        }
        CoxeterSystem::with_cartan(m, Some(a)).expect("product of valid systems is valid")
    }

    /// Parses names such as `A3`, `B4`, `C3`, `D4`, `E6`, `F4`, `G2`, `At2` (affine),
    /// and products like `A1xA1`.
    pub fn from_type(name: &str) -> Result<Self, CoxeterError> {
        let parts: Vec<&str> = name.split(['x', '*']).map(str::trim).collect();
        let mut sys: Option<CoxeterSystem> = None;
        for part in parts {
            let (m, a) = named_type(part).ok_or_else(|| CoxeterError::UnknownType(name.into()))?;
            let s = CoxeterSystem::with_cartan(m, a)?;
            sys = Some(match sys {
                None => s,
                Some(prev) => prev.direct_product(&s),
            });
        }
        sys.ok_or_else(|| CoxeterError::UnknownType(name.into()))
    }
}

fn chain(n: usize, bonds: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2u32; n]; n];
    for &(i, j, v) in bonds {
        m[i][j] = v;
        m[j][i] = v;
    }
    m
}

fn path_bonds(n: usize) -> Vec<(usize, usize, u32)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect()
}

type NamedType = (Vec<Vec<u32>>, Option<Vec<Vec<i64>>>);

fn named_type(name: &str) -> Option<NamedType> {
    let name = name.trim();
    let (family, affine, digits) = if let Some(rest) = name.strip_prefix("At") {
        ("A", true, rest)
    } else if let Some(rest) = name.strip_prefix("~A") {
        ("A", true, rest)
    } else {
        let (f, d) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
        (f, false, d)
    };
    let n: usize = digits.parse().ok()?;
    if n == 0 {
        return None;
    }
    if affine {
        // generators s~_0, ..., s~_n are labels 1..=n+1
        return Some(if n == 1 {
            (chain(2, &[(0, 1, INFINITY)]), None)
        } else {
            let bonds: Vec<_> = (0..=n).map(|i| (i, (i + 1) % (n + 1), 3)).collect();
            (chain(n + 1, &bonds), None)
        });
    }
    let m = match family {
        "A" => chain(n, &path_bonds(n)),
        "B" | "C" if n >= 2 => {
            let mut b = path_bonds(n);
            b[0].2 = 4;
            chain(n, &b)
        }
        "D" if n >= 4 => {
            let mut b = path_bonds(n - 1);
            b.push((n - 3, n - 1, 3));
            chain(n, &b)
        }
        "E" if (6..=8).contains(&n) => {
            // Bourbaki labels: 1-3-4-5-..., 2 attached to 4
            let mut b = vec![(0, 2, 3), (1, 3, 3)];
            b.extend((2..n - 1).map(|i| (i, i + 1, 3)));
            chain(n, &b)
        }
        "F" if n == 4 => chain(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
        "G" if n == 2 => chain(2, &[(0, 1, 6)]),
        _ => return None,
    };
    let cartan = if family == "C" {
        // transpose of the default B assignment on the double bond
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            for j in (i + 1)..n {
                let (x, y) = default_cartan_pair(m[i][j]);
                a[i][j] = y;
                a[j][i] = x;
            }
        }
        Some(a)
    } else {
        None
    };
    Some((m, cartan))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::new(vec![vec![2, 3], vec![3, 2]]).unwrap()
    }

    #[test]
    fn default_cartan_a2() {
        let s = a2();
        assert_eq!(s.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(s.form_matrix(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn b2_symmetrizer() {
        let s = CoxeterSystem::new(vec![vec![2, 4], vec![4, 2]]).unwrap();
        assert_eq!(s.cartan(), &[vec![2, -1], vec![-2, 2]]);
        let d = s.symmetrizer();
        // d_0 A_01 = d_1 A_10  =>  d_0 = 2 d_1
        assert_eq!(d[0].clone() / d[1].clone(), rational(2));
        let b = s.bilinear_form();
        assert_eq!(b[0][1], b[1][0]);
    }

    #[test]
    fn rank_one() {
        let s = CoxeterSystem::new(vec![vec![2]]).unwrap();
        assert_eq!(s.cartan(), &[vec![2]]);
        assert_eq!(s.longest_word().unwrap(), Word(vec![0]));
    }

    #[test]
    fn rejects_bad_matrices() {
        let err = CoxeterSystem::new(vec![vec![2, 5], vec![5, 2]]).unwrap_err();
        assert!(matches!(err, CoxeterError::InvalidEntry { i: 0, j: 1, value: 5, .. }));
        let err = CoxeterSystem::new(vec![vec![2, 3], vec![4, 2]]).unwrap_err();
        assert!(matches!(err, CoxeterError::InvalidEntry { .. }));
        let err = CoxeterSystem::new(vec![vec![2, 3]]).unwrap_err();
        assert!(matches!(err, CoxeterError::Ragged { .. }));
        let err = CoxeterSystem::with_cartan(
            vec![vec![2, 3], vec![3, 2]],
            Some(vec![vec![2, -1], vec![-2, 2]]),
        )
        .unwrap_err();
        assert!(matches!(err, CoxeterError::CartanMismatch { implied: 4, given: 3, .. }));
    }

    #[test]
    fn user_cartan_for_infinite_bond() {
        let s = CoxeterSystem::with_cartan(
            vec![vec![2, 0], vec![0, 2]],
            Some(vec![vec![2, -1], vec![-4, 2]]),
        )
        .unwrap();
        assert!(!s.is_finite());
    }

    #[test]
    fn action_rules() {
        let s = a2();
        assert_eq!(s.act_on_root(0, &s.simple_root(1)), RootVector(vec![1, 1]));
        for i in 0..2 {
            assert_eq!(s.act_on_root(i, &s.simple_root(i)), -s.simple_root(i));
        }
        let at2 = CoxeterSystem::from_type("At2").unwrap();
        assert_eq!(at2.act_on_root(0, &at2.simple_root(1)), RootVector(vec![1, 1, 0]));
    }

    #[test]
    fn words_and_lengths() {
        let s = a2();
        let e = s.word_to_element(&Word::default());
        assert!(e.is_identity());
        assert_eq!(s.element_length(&e), 0);
        let g = s.word_to_element(&Word(vec![0, 1, 0, 1, 0, 1]));
        assert!(g.is_identity());
        let w = Word(vec![0, 1, 0]);
        assert_eq!(s.element_length(&s.word_to_element(&w)), 3);
        assert!(s.is_reduced(&w));
        assert!(!s.is_reduced(&Word(vec![0, 1, 1])));
    }

    #[test]
    fn inversion_sequences_from_appendix() {
        let s = a2();
        let p = Word(vec![0, 1, 0, 1, 0, 1, 0, 1]);
        let expected: Vec<RootVector> = [
            [1, 0],
            [1, 1],
            [0, 1],
            [-1, 0],
            [-1, -1],
            [0, -1],
            [1, 0],
            [1, 1],
        ]
        .iter()
        .map(|v| RootVector(v.to_vec()))
        .collect();
        assert_eq!(s.inversion_sequence(&p), expected);

        // affine A1 with labels (alpha_0, alpha_1) = generators (0, 1)
        let at1 = CoxeterSystem::from_type("At1").unwrap();
        let p = Word(vec![1, 0, 1, 1]);
        let expected: Vec<RootVector> = [[0, 1], [1, 2], [2, 3], [-2, -3]]
            .iter()
            .map(|v| RootVector(v.to_vec()))
            .collect();
        assert_eq!(at1.inversion_sequence(&p), expected);
        assert!(s.inversion_sequence(&Word::default()).is_empty());
    }

    #[test]
    fn affine_a1_action_matches_cartan_choice() {
        let at1 = CoxeterSystem::from_type("At1").unwrap();
        // s_0(alpha_1) = 2 alpha_0 + alpha_1
        assert_eq!(at1.act_on_root(0, &at1.simple_root(1)), RootVector(vec![2, 1]));
    }

    #[test]
    fn finiteness() {
        assert!(a2().is_finite());
        assert_eq!(a2().longest_word().unwrap(), Word(vec![0, 1, 0]));
        let at2 = CoxeterSystem::from_type("At2").unwrap();
        assert!(!at2.is_finite());
        assert!(at2.longest_word().is_none());
        for (name, len) in [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24)] {
            let s = CoxeterSystem::from_type(name).unwrap();
            assert_eq!(s.longest_word().unwrap().len(), len, "{name}");
        }
    }

    #[test]
    fn form_is_invariant() {
        for name in ["A3", "B3", "C3", "G2", "At2", "At1", "D4"] {
            let s = CoxeterSystem::from_type(name).unwrap();
            let n = s.rank();
            for g in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let (x, y) = (s.simple_root(i), s.simple_root(j));
                        assert_eq!(
                            s.form(&s.act_on_root(g, &x), &s.act_on_root(g, &y)),
                            s.form(&x, &y),
                            "{name}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_and_reflection() {
        let s = CoxeterSystem::from_type("B3").unwrap();
        let w = Word(vec![0, 1, 2, 1, 0]);
        let g = s.word_to_element(&w);
        assert!(g.compose(&s.inverse(&g)).is_identity());
        let beta = RootVector(vec![1, 1, 0]);
        assert_eq!(s.reflect(&beta, &beta), -beta.clone());
        for i in 0..3 {
            let x = s.simple_root(i);
            assert_eq!(s.reflect(&x, &s.simple_root(1)), s.act_on_root(i, &s.simple_root(1)));
        }
    }
}
