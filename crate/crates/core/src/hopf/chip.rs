//! Iteration of the top-to-random operator `T = m_{1,n-1} ∘ Δ_{1,n-1}`.
//!
//! On a degree-`n` key, `T` only produces keys of the same degree; keys whose Coxeter
//! matrix is a product of `A1` factors ("gems") are eigenvectors with eigenvalue `n`.
//! Every other key `y` satisfies `T(y) = d_y y + (terms strictly further chipped)` with
//! `d_y < n`, so `T^k(x) / n^k` converges to a combination of gems, which is computed
//! exactly from `L(y) = Σ_{z≠y} T(y, z) L(z) / (n - d_y)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::key::BasisKey;
use super::ops::top_to_random_key;
use super::vector::HopfVector;
use crate::coxeter::INFINITY;
use crate::error::{Result, SubwordError};
use crate::linalg::{rational, Rational};

/// Whether every pair of distinct generators commutes.
pub fn is_gem(key: &BasisKey) -> bool {
    let m = key.coxeter_matrix();
    (0..m.len()).all(|i| (0..m.len()).all(|j| i == j || m[i][j] == 2))
}

/// For a gem, the number of letters of each `A1` factor.
pub fn gem_quality(key: &BasisKey) -> Option<Vec<usize>> {
    if !is_gem(key) {
        return None;
    }
    let mut counts = vec![0; key.degree()];
    for &l in key.word().letters() {
        counts[l] += 1;
    }
    Some(counts)
}

/// Whether some `m_ij` is infinite.
pub fn has_infinite_bond(key: &BasisKey) -> bool {
    key.coxeter_matrix()
        .iter()
        .enumerate()
        .any(|(i, row)| row.iter().enumerate().any(|(j, &m)| i != j && m == INFINITY))
}

#[derive(Clone, Debug)]
pub struct ChipReport {
    pub degree: usize,
    /// `T^k(x)`, divided by `n^k` when renormalized.
    pub trajectory: Vec<HopfVector>,
    /// First `k` with `supp T^k(x) = supp T^{k+1}(x)`.
    pub support_stable_at: Option<usize>,
    /// Keys reachable from `supp x` under `T`.
    pub reachable: BTreeSet<BasisKey>,
    /// Closed communicating classes of the transition graph (singletons here).
    pub stable_states: Vec<BasisKey>,
    pub stable_states_are_gems: bool,
    /// `lim T^k(x) / n^k`.
    pub limit: HopfVector,
    pub limit_is_gems_only: bool,
    /// First `k` at which the literal support of `T^k(x)` consists of gems only.
    pub literal_gems_only_at: Option<usize>,
}

impl ChipReport {
    /// Support stabilized within the iteration budget and every absorbing state is a gem.
    pub fn stabilizes_on_gems(&self) -> bool {
        self.support_stable_at.is_some() && self.stable_states_are_gems && self.limit_is_gems_only
    }
}

struct Transitions {
    images: BTreeMap<BasisKey, HopfVector>,
}

impl Transitions {
    fn explore(start: impl IntoIterator<Item = BasisKey>) -> Result<Self> {
        let mut images = BTreeMap::new();
        let mut stack: Vec<BasisKey> = start.into_iter().collect();
        while let Some(k) = stack.pop() {
            if images.contains_key(&k) {
                continue;
            }
            let image = top_to_random_key(&k)?;
            for z in image.keys() {
                if !images.contains_key(z) {
                    stack.push(z.clone());
                }
            }
            images.insert(k, image);
        }
        Ok(Transitions { images })
    }

    fn reaches(&self, from: &BasisKey) -> BTreeSet<BasisKey> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from.clone()];
        while let Some(k) = stack.pop() {
            if seen.insert(k.clone()) {
                stack.extend(self.images[&k].keys().cloned());
            }
        }
        seen
    }

    /// Keys `y` whose every reachable key reaches `y` back.
    fn closed_classes(&self) -> Vec<BasisKey> {
        let reach: BTreeMap<&BasisKey, BTreeSet<BasisKey>> =
            self.images.keys().map(|k| (k, self.reaches(k))).collect();
        self.images
            .keys()
            .filter(|y| reach[y].iter().all(|z| reach[z].contains(*y)))
            .cloned()
            .collect()
    }

    fn limit_of(
        &self,
        y: &BasisKey,
        n: usize,
        memo: &mut BTreeMap<BasisKey, HopfVector>,
        active: &mut BTreeSet<BasisKey>,
    ) -> Result<HopfVector> {
        if let Some(v) = memo.get(y) {
            return Ok(v.clone());
        }
        if !active.insert(y.clone()) {
            return Err(SubwordError::Internal(format!(
                "top-to-random transitions through {y} form a cycle"
            )));
        }
        let image = &self.images[y];
        let nn = rational(n as i64);
        let d = image.coefficient(y);
        let limit = if d == nn {
            if image.len() != 1 {
                return Err(SubwordError::Internal(format!(
                    "{y} has eigenvalue n but is not an eigenvector"
                )));
            }
            HopfVector::from_key(y.clone())
        } else {
            let mut acc = HopfVector::zero();
            for (z, c) in image.terms() {
                if z != y {
                    acc = acc.add(&self.limit_of(z, n, memo, active)?.scale(c));
                }
            }
            acc.scale(&(Rational::one() / (nn - d)))
        };
        active.remove(y);
        memo.insert(y.clone(), limit.clone());
        Ok(limit)
    }
}

/// Iterates `T` up to `max_iter` times and analyses where the mass settles.
pub fn chip_to_gems(x: &HopfVector, max_iter: usize, renormalize: bool) -> Result<ChipReport> {
    let degree = x.degree().ok_or_else(|| {
        SubwordError::Unsupported("chipping needs a nonzero homogeneous vector".into())
    })?;
    let transitions = Transitions::explore(x.keys().cloned())?;
    let scale = if renormalize && degree >= 2 {
        Rational::new(BigInt::one(), BigInt::from(degree))
    } else {
        Rational::one()
    };
    let mut trajectory = vec![x.clone()];
    for _ in 0..max_iter {
        let last = trajectory.last().expect("nonempty");
        let next = last
            .map_linear(|k| Ok::<_, SubwordError>(transitions.images[k].clone()))?
            .scale(&scale);
        trajectory.push(next);
    }
    let support = |v: &HopfVector| v.keys().cloned().collect::<BTreeSet<_>>();
    let support_stable_at =
        (0..max_iter).find(|&k| support(&trajectory[k]) == support(&trajectory[k + 1]));
    let literal_gems_only_at = trajectory
        .iter()
        .position(|v| !v.is_zero() && v.keys().all(is_gem));
    let reachable: BTreeSet<BasisKey> = transitions.images.keys().cloned().collect();
    let (stable_states, limit) = if degree < 2 {
        // T vanishes below degree 2; the keys themselves are terminal.
        (x.keys().cloned().collect::<Vec<_>>(), x.clone())
    } else {
        let mut memo = BTreeMap::new();
        let mut limit = HopfVector::zero();
        for (k, c) in x.terms() {
            let l = transitions.limit_of(k, degree, &mut memo, &mut BTreeSet::new())?;
            limit = limit.add(&l.scale(c));
        }
        (transitions.closed_classes(), limit)
    };
    let stable_states_are_gems = stable_states.iter().all(is_gem);
    let limit_is_gems_only = !limit.is_zero() && limit.keys().all(is_gem);
    Ok(ChipReport {
        degree,
        trajectory,
        support_stable_at,
        reachable,
        stable_states,
        stable_states_are_gems,
        limit,
        limit_is_gems_only,
        literal_gems_only_at,
    })
}

/// Mass of `v` on non-gem keys relative to its total mass.
pub fn non_gem_fraction(v: &HopfVector) -> Rational {
    let total: Rational = v.terms().map(|(_, c)| c.clone()).sum();
    if total.is_zero() {
        return Rational::zero();
    }
    let rest: Rational = v
        .terms()
        .filter(|(k, _)| !is_gem(k))
        .map(|(_, c)| c.clone())
        .sum();
    rest / total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2_tuple, a3k2_tuple};
    use crate::hopf::key::canonicalize;

    #[test]
    fn a2_chips_in_one_hit() {
        let x = canonicalize(&a2_tuple()).unwrap();
        assert!(!is_gem(&x));
        let r = chip_to_gems(&HopfVector::from_key(x), 10, false).unwrap();
        assert_eq!(r.literal_gems_only_at, Some(1));
        assert_eq!(r.support_stable_at, Some(1));
        assert!(r.stabilizes_on_gems());
        for k in r.limit.keys() {
            assert_eq!(gem_quality(k).unwrap().len(), 2);
        }
    }

    #[test]
    fn a3k2_absorbs_into_gems() {
        let x = canonicalize(&a3k2_tuple()).unwrap();
        let r = chip_to_gems(&HopfVector::from_key(x), 10, true).unwrap();
        assert!(r.stabilizes_on_gems());
        // rocks of type A1 x A2 keep chipping themselves back
        assert_eq!(r.literal_gems_only_at, None);
        let last = r.trajectory.last().unwrap();
        assert!(non_gem_fraction(last) < Rational::new(1.into(), 100.into()));
        let fixed = crate::hopf::ops::top_to_random(&r.limit).unwrap();
        assert_eq!(fixed, r.limit.scale(&rational(r.degree as i64)));
    }

    #[test]
    fn infinite_bonds() {
        let x = canonicalize(&crate::fixtures::affine_a2_tuple()).unwrap();
        assert!(!has_infinite_bond(&x));
        assert!(!is_gem(&x));
    }
}
