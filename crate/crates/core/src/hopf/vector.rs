//! Finite rational linear combinations of basis keys and of tensors of basis keys.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::key::BasisKey;
use crate::linalg::Rational;

/// An element of the algebra: a finite map from keys to nonzero rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfVector {
    terms: BTreeMap<BasisKey, Rational>,
}

impl HopfVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::from_key(BasisKey::unit())
    }

    pub fn from_key(key: BasisKey) -> Self {
        let mut v = Self::zero();
        v.add_term(key, Rational::one());
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisKey, Rational)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let remove = {
            let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *entry += coeff;
            entry.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &HopfVector) -> HopfVector {
        let mut v = self.clone();
        for (k, c) in &other.terms {
            v.add_term(k.clone(), c.clone());
        }
        v
    }

    pub fn sub(&self, other: &HopfVector) -> HopfVector {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> HopfVector {
        HopfVector::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    pub fn coefficient(&self, key: &BasisKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasisKey> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all keys, if there is one.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|k| k.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Applies a linear map defined on keys.
    pub fn map_linear<F, E>(&self, mut f: F) -> Result<HopfVector, E>
    where
        F: FnMut(&BasisKey) -> Result<HopfVector, E>,
    {
        let mut out = HopfVector::zero();
        for (k, c) in &self.terms {
            out = out.add(&f(k)?.scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for HopfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{k}")?;
        }
        Ok(())
    }
}

/// An element of a tensor power: a finite map from key sequences to nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<BasisKey>, Rational>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, keys: Vec<BasisKey>, coeff: Rational) {
        assert_eq!(keys.len(), self.arity, "tensor arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let remove = {
            let entry = self.terms.entry(keys.clone()).or_insert_with(Rational::zero);
            *entry += coeff;
            entry.is_zero()
        };
        if remove {
            self.terms.remove(&keys);
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        for (k, c) in &other.terms {
            t.add_term(k.clone(), c.clone());
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        for (k, x) in &self.terms {
            t.add_term(k.clone(), x * c);
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<BasisKey>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, keys: &[BasisKey]) -> Rational {
        self.terms.get(keys).cloned().unwrap_or_else(Rational::zero)
    }

    /// `a ⊗ b` for vectors or tensors.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut t = Tensor::zero(self.arity + other.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut keys = a.clone();
                keys.extend(b.iter().cloned());
                t.add_term(keys, x * y);
            }
        }
        t
    }

    pub fn from_vector(v: &HopfVector) -> Tensor {
        let mut t = Tensor::zero(1);
        for (k, c) in v.terms() {
            t.add_term(vec![k.clone()], c.clone());
        }
        t
    }

    /// Permutes tensor factors: factor `i` of the result is factor `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            t.add_term(perm.iter().map(|&i| k[i].clone()).collect(), c.clone());
        }
        t
    }

    /// Applies a linear map to factor `i`.
    pub fn map_factor<F, E>(&self, i: usize, mut f: F) -> Result<Tensor, E>
    where
        F: FnMut(&BasisKey) -> Result<HopfVector, E>,
    {
        let mut t = Tensor::zero(self.arity);
        for (keys, c) in &self.terms {
            for (k, x) in f(&keys[i])?.terms() {
                let mut new_keys = keys.clone();
                new_keys[i] = k.clone();
                t.add_term(new_keys, c * x);
            }
        }
        Ok(t)
    }

    /// Replaces factor `i` by a tensor of arity `m`, giving arity `self.arity + m - 1`.
    pub fn expand_factor<F, E>(&self, i: usize, mut f: F) -> Result<Tensor, E>
    where
        F: FnMut(&BasisKey) -> Result<Tensor, E>,
    {
        let mut out: Option<Tensor> = None;
        for (keys, c) in &self.terms {
            let image = f(&keys[i])?;
            let acc = out.get_or_insert_with(|| Tensor::zero(self.arity + image.arity - 1));
            for (ks, x) in image.terms() {
                let mut new_keys: Vec<BasisKey> = keys[..i].to_vec();
                new_keys.extend(ks.iter().cloned());
                new_keys.extend(keys[i + 1..].iter().cloned());
                acc.add_term(new_keys, c * x);
            }
        }
        Ok(out.unwrap_or_else(|| Tensor::zero(self.arity + 1)))
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (ks, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*")?;
            for (j, k) in ks.iter().enumerate() {
                if j > 0 {
                    write!(f, " ⊗ ")?;
                }
                write!(f, "{k}")?;
            }
        }
        Ok(())
    }
}
