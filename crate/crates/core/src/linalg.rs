//! Exact linear algebra over the integers and rationals.
//!
//! Subspaces are kept as integer echelon forms with primitive rows, which keeps
//! membership and rank tests free of rational arithmetic. A reduced row echelon
//! basis over the rationals is available for normalized output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn gcd_row(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |g, &x| g.gcd(&x))
}

fn make_primitive(row: &mut [i128]) {
    let g = gcd_row(row);
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
    // normalize sign so the first nonzero entry is positive
    if let Some(&first) = row.iter().find(|x| **x != 0) {
        if first < 0 {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// A subspace of `Q^n` spanned by integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Echelon rows; `pivots[k]` is the leading column of `rows[k]`, strictly increasing.
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            let mut e = vec![0i64; ambient];
            e[i] = 1;
            s.insert(&e);
        }
        s
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the echelon rows; the result is zero iff `v` lies in the span.
    fn reduce(&self, v: &[i64]) -> Vec<i128> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p] != 0 {
                let a = row[p];
                let b = w[p];
                let g = a.gcd(&b);
                let (fa, fb) = (a / g, b / g);
                for (x, r) in w.iter_mut().zip(row) {
                    *x = *x * fa - r * fb;
                }
                let g = gcd_row(&w);
                if g > 1 {
                    for x in w.iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|x| *x == 0)
    }

    /// Adds `v` to the spanning set. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| *x != 0) else {
            return false;
        };
        make_primitive(&mut w);
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| {
            let v: Vec<i64> = r.iter().map(|&x| x as i64).collect();
            self.contains(&v)
        })
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            let v: Vec<i64> = r.iter().map(|&x| x as i64).collect();
            s.insert(&v);
        }
        s
    }

    /// Integer spanning vectors (the echelon rows).
    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// Reduced row echelon basis over the rationals.
    pub fn rref(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
            .collect();
        for k in (0..rows.len()).rev() {
            let p = self.pivots[k];
            let lead = rows[k][p].clone();
            for x in rows[k].iter_mut() {
                *x = &*x / &lead;
            }
            for j in 0..k {
                let f = rows[j][p].clone();
                if !f.is_zero() {
                    for c in 0..self.ambient {
                        let delta = &f * &rows[k][c];
                        rows[j][c] -= delta;
                    }
                }
            }
        }
        rows
    }
}

/// Rank over the rationals of a list of integer vectors.
pub fn rank<'a, I>(ambient: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a [i64]>,
{
    Subspace::span(ambient, vectors).dim()
}

/// Coordinates of `target` in terms of the linearly independent `basis`, if it lies in their span.
pub fn coordinates_in_basis(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // Solve sum_a x_a basis[a] = target: an n x (k+1) augmented system.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| rational(b[i])).collect();
            row.push(rational(target[i]));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if pivot_cols.len() < k {
        return None;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &c) in m.iter().zip(&pivot_cols) {
        x[c] = row[k].clone();
    }
    Some(x)
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn determinant(mat: &[Vec<Rational>]) -> Rational {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let lead = m[c][c].clone();
        det *= &lead;
        for i in (c + 1)..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &lead;
                for j in c..n {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    det
}

/// Sylvester's criterion: all leading principal minors positive.
pub fn is_positive_definite(mat: &[Vec<Rational>]) -> bool {
    (1..=mat.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = mat[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_rank() {
        let s = Subspace::span(3, [&[1, 1, 0][..], &[0, 1, 1][..]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, -1]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(rank(3, [&[1, 2, 3][..], &[2, 4, 6][..], &[-1, -2, -3][..]]), 1);
        assert_eq!(rank(2, std::iter::empty()), 0);
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, [&[2, 2, 0][..], &[0, 3, 3][..]]);
        let b = Subspace::span(3, [&[1, 0, -1][..], &[1, 2, 1][..]]);
        assert_eq!(a.rref(), b.rref());
        let r = a.rref();
        assert_eq!(r[0], vec![rational(1), rational(0), rational(-1)]);
    }

    #[test]
    fn coordinates() {
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let x = coordinates_in_basis(&basis, &[2, -1, 1]).unwrap();
        assert_eq!(x, vec![rational(2), rational(-1)]);
        assert!(coordinates_in_basis(&basis, &[0, 0, 1]).is_none());
    }

    #[test]
    fn definiteness() {
        let a2 = vec![vec![rational(2), rational(-1)], vec![rational(-1), rational(2)]];
        assert!(is_positive_definite(&a2));
        let affine = vec![
            vec![rational(2), rational(-1), rational(-1)],
            vec![rational(-1), rational(2), rational(-1)],
            vec![rational(-1), rational(-1), rational(2)],
        ];
        assert!(determinant(&affine).is_zero());
        assert!(!is_positive_definite(&affine));
    }
}
