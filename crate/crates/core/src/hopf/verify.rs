//! Checks of the Hopf algebra axioms on finite samples.

use super::key::BasisKey;
use super::ops::{coproduct, coproduct_key, counit, multiply, product, takeuchi_antipode_key};
use super::psi::antipode_key;
use super::vector::{HopfVector, Tensor};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: (!passed).then(detail),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, prefix: &str) -> (usize, usize) {
        let matching: Vec<&Check> = self.checks.iter().filter(|c| c.name.starts_with(prefix)).collect();
        (matching.iter().filter(|c| c.passed).count(), matching.len())
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }
}

/// `Δ(x) Δ(y)` with factorwise products.
fn tensor_product(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let left = product(&HopfVector::from_key(ka[0].clone()), &HopfVector::from_key(kb[0].clone()))?;
            let right = product(&HopfVector::from_key(ka[1].clone()), &HopfVector::from_key(kb[1].clone()))?;
            let l = left.keys().next().expect("product of keys is a key").clone();
            let r = right.keys().next().expect("product of keys is a key").clone();
            out.add_term(vec![l, r], ca * cb);
        }
    }
    Ok(out)
}

/// `(ε ⊗ id)` or `(id ⊗ ε)` applied to a 2-tensor.
fn contract_counit(t: &Tensor, side: usize) -> HopfVector {
    let mut out = HopfVector::zero();
    let unit = BasisKey::unit();
    for (keys, c) in t.terms() {
        if keys[side] == unit {
            out.add_term(keys[1 - side].clone(), c.clone());
        }
    }
    out
}

/// Axioms involving a single element.
pub fn verify_key(x: &BasisKey) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let v = HopfVector::from_key(x.clone());
    let delta = coproduct_key(x)?;
    let label = x.to_string();

    let left = delta.expand_factor(0, coproduct_key)?;
    let right = delta.expand_factor(1, coproduct_key)?;
    report.record(format!("coassociativity {label}"), left == right, || {
        format!("(Δ⊗id)Δ = {left}\n(id⊗Δ)Δ = {right}")
    });

    let swapped = delta.permute(&[1, 0]);
    report.record(format!("cocommutativity {label}"), swapped == delta, || {
        format!("Δ = {delta}\nτΔ = {swapped}")
    });

    let l = contract_counit(&delta, 0);
    let r = contract_counit(&delta, 1);
    report.record(format!("counit {label}"), l == v && r == v, || {
        format!("(ε⊗id)Δ = {l}, (id⊗ε)Δ = {r}")
    });

    let graded = delta
        .terms()
        .all(|(ks, _)| ks[0].degree() + ks[1].degree() == x.degree());
    report.record(format!("grading {label}"), graded, || format!("Δ = {delta}"));

    let filtered = delta.terms().all(|(ks, _)| {
        ks[0].word_length() + ks[1].word_length() <= x.word_length()
            && ks[0].filtration_m() <= x.filtration_m()
            && ks[1].filtration_m() <= x.filtration_m()
    });
    report.record(format!("filtration {label}"), filtered, || format!("Δ = {delta}"));

    let eps = HopfVector::unit().scale(&counit(&v));
    let s_left = multiply(&delta.map_factor(0, takeuchi_antipode_key)?)?;
    let s_right = multiply(&delta.map_factor(1, takeuchi_antipode_key)?)?;
    report.record(
        format!("antipode convolution {label}"),
        s_left == eps && s_right == eps,
        || format!("m(S⊗id)Δ = {s_left}, m(id⊗S)Δ = {s_right}, ε = {eps}"),
    );
    let takeuchi = takeuchi_antipode_key(x)?;
    let free = antipode_key(x)?;
    report.record(format!("antipode agreement {label}"), takeuchi == free, || {
        format!("Takeuchi: {takeuchi}\ncancellation-free: {free}")
    });
    Ok(report)
}

/// Axioms involving two elements.
pub fn verify_pair(x: &BasisKey, y: &BasisKey) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let (vx, vy) = (HopfVector::from_key(x.clone()), HopfVector::from_key(y.clone()));
    let label = format!("{x} , {y}");
    let xy = product(&vx, &vy)?;
    let yx = product(&vy, &vx)?;
    report.record(format!("commutativity {label}"), xy == yx, || format!("{xy} vs {yx}"));
    let lhs = coproduct(&xy)?;
    let rhs = tensor_product(&coproduct_key(x)?, &coproduct_key(y)?)?;
    report.record(format!("compatibility {label}"), lhs == rhs, || {
        format!("Δ(xy) = {lhs}\nΔ(x)Δ(y) = {rhs}")
    });
    let k = xy.keys().next().expect("nonzero").clone();
    let filtered = k.degree() == x.degree() + y.degree()
        && k.word_length() == x.word_length() + y.word_length()
        && k.filtration_m() <= x.filtration_m().max(y.filtration_m());
    report.record(format!("product filtration {label}"), filtered, || k.to_string());
    let unit = product(&vx, &HopfVector::unit())?;
    report.record(format!("unit {label}"), unit == vx, || unit.to_string());
    Ok(report)
}

pub fn verify_triple(x: &BasisKey, y: &BasisKey, z: &BasisKey) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let (vx, vy, vz) = (
        HopfVector::from_key(x.clone()),
        HopfVector::from_key(y.clone()),
        HopfVector::from_key(z.clone()),
    );
    let a = product(&product(&vx, &vy)?, &vz)?;
    let b = product(&vx, &product(&vy, &vz)?)?;
    report.record(format!("associativity {x} , {y} , {z}"), a == b, || format!("{a} vs {b}"));
    Ok(report)
}

/// Runs every check on a sample: single-key axioms on all keys, pair axioms on all
/// pairs, and associativity on consecutive triples, skipping products of degree above
/// `max_product_degree`.
pub fn verify_bialgebra(sample: &[BasisKey], max_product_degree: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for x in sample {
        report.merge(verify_key(x)?);
    }
    for (i, x) in sample.iter().enumerate() {
        for y in &sample[i..] {
            if x.degree() + y.degree() <= max_product_degree {
                report.merge(verify_pair(x, y)?);
            }
        }
    }
    for w in sample.windows(3) {
        if w.iter().map(BasisKey::degree).sum::<usize>() <= max_product_degree {
            report.merge(verify_triple(&w[0], &w[1], &w[2])?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2_tuple, affine_a2_tuple};
    use crate::hopf::key::canonicalize;

    #[test]
    fn a2_axioms() {
        let x = canonicalize(&a2_tuple()).unwrap();
        let r = verify_key(&x).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.count("coassociativity").0 >= 1);
    }

    #[test]
    fn small_bialgebra_sample() {
        let sample = vec![
            canonicalize(&a2_tuple()).unwrap(),
            canonicalize(&affine_a2_tuple()).unwrap(),
            BasisKey::unit(),
        ];
        let r = verify_bialgebra(&sample, 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn failures_are_recorded() {
        let mut r = VerifyReport::default();
        r.record("demo", false, || "detail".into());
        r.record("demo", true, String::new);
        assert!(!r.passed());
        assert_eq!(r.count("demo"), (1, 2));
    }
}
