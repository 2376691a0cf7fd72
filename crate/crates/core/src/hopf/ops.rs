//! Product, coproduct, counit and Takeuchi antipode.

use num_traits::{One, Zero};

use super::key::{canonicalize, BasisKey};
use super::vector::{HopfVector, Tensor};
use crate::error::Result;
use crate::flats::{Flat, Tuple};
use crate::linalg::Rational;

/// Canonical product of several keys.
pub fn product_keys(keys: &[&BasisKey]) -> Result<BasisKey> {
    let (m, w, f) = BasisKey::concat(keys);
    BasisKey::from_parts(&m, &w, &f)
}

pub fn product(x: &HopfVector, y: &HopfVector) -> Result<HopfVector> {
    let mut out = HopfVector::zero();
    for (a, c) in x.terms() {
        for (b, d) in y.terms() {
            out.add_term(product_keys(&[a, b])?, c * d);
        }
    }
    Ok(out)
}

/// `m`: multiplies the factors of every term of a tensor.
pub fn multiply(t: &Tensor) -> Result<HopfVector> {
    let mut out = HopfVector::zero();
    for (keys, c) in t.terms() {
        let refs: Vec<&BasisKey> = keys.iter().collect();
        out.add_term(product_keys(&refs)?, c.clone());
    }
    Ok(out)
}

/// Key of the tuple carried by a flat.
pub fn restricted_key(tuple: &Tuple, flat: &Flat) -> Result<BasisKey> {
    canonicalize(&tuple.restrict(flat)?.tuple)
}

/// `Δ` on a key: the sum over 2-flat decompositions plus the unit terms `x ⊗ 1` and `1 ⊗ x`.
///
/// The unit terms come from the splittings `(full, empty)` and `(empty, full)`; flat
/// decompositions themselves only use parts of positive dimension.
pub fn coproduct_key(key: &BasisKey) -> Result<Tensor> {
    let mut t = Tensor::zero(2);
    let unit = BasisKey::unit();
    if key.is_unit() {
        t.add_term(vec![unit.clone(), unit], Rational::one());
        return Ok(t);
    }
    t.add_term(vec![key.clone(), unit.clone()], Rational::one());
    t.add_term(vec![unit, key.clone()], Rational::one());
    let tuple = key.to_tuple();
    for d in tuple.flat_decompositions(Some(2))? {
        let a = restricted_key(&tuple, &d.parts[0])?;
        let b = restricted_key(&tuple, &d.parts[1])?;
        t.add_term(vec![a, b], Rational::one());
    }
    Ok(t)
}

pub fn coproduct(x: &HopfVector) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (k, c) in x.terms() {
        out = out.add(&coproduct_key(k)?.scale(c));
    }
    Ok(out)
}

/// `ε`: the coefficient of the unit.
pub fn counit(x: &HopfVector) -> Rational {
    x.coefficient(&BasisKey::unit())
}

fn sign(length: usize) -> Rational {
    if length % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `S(x) = Σ_{FD} (-1)^ℓ (W_F, Q_F, pi_F, I_F)` over all flat decompositions.
pub fn takeuchi_antipode_key(key: &BasisKey) -> Result<HopfVector> {
    if key.is_unit() {
        return Ok(HopfVector::unit());
    }
    let tuple = key.to_tuple();
    let mut out = HopfVector::zero();
    for d in tuple.flat_decompositions(None)? {
        let keys = d
            .parts
            .iter()
            .map(|p| restricted_key(&tuple, p))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&BasisKey> = keys.iter().collect();
        out.add_term(product_keys(&refs)?, sign(d.len()));
    }
    Ok(out)
}

pub fn takeuchi_antipode(x: &HopfVector) -> Result<HopfVector> {
    x.map_linear(takeuchi_antipode_key)
}

/// `m ∘ (π_1 ⊗ π_{n-1}) ∘ Δ` on a key of degree `n`.
pub fn top_to_random_key(key: &BasisKey) -> Result<HopfVector> {
    let n = key.degree();
    let mut out = HopfVector::zero();
    if n < 2 {
        return Ok(out);
    }
    let tuple = key.to_tuple();
    for d in tuple.flat_decompositions(Some(2))? {
        if d.parts[0].dim() != 1 {
            continue;
        }
        let a = restricted_key(&tuple, &d.parts[0])?;
        let b = restricted_key(&tuple, &d.parts[1])?;
        out.add_term(product_keys(&[&a, &b])?, Rational::one());
    }
    Ok(out)
}

pub fn top_to_random(x: &HopfVector) -> Result<HopfVector> {
    x.map_linear(top_to_random_key)
}

/// Sum of the coefficients, useful for mass bookkeeping.
pub fn total_mass(x: &HopfVector) -> Rational {
    x.terms().fold(Rational::zero(), |acc, (_, c)| acc + c)
}
