//! JSON schemas. Positions and generators are 1-based; `∞` Coxeter entries are `0`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, RootVector, Word};
use crate::error::{Result, SubwordError};
use crate::flats::Flat;
use crate::hopf::{BasisKey, HopfVector, Tensor};
use crate::linalg::Rational;
use crate::subword::{Facet, SubwordInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterJson {
    pub rank: usize,
    pub m: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
}

impl CoxeterJson {
    /// Omits the Cartan matrix when it is the default one for `m`.
    pub fn from_system(sys: &CoxeterSystem) -> Self {
        let m = sys.coxeter_matrix().to_vec();
        let default = CoxeterSystem::new(m.clone()).ok();
        let cartan = match default {
            Some(d) if d.cartan() == sys.cartan() => None,
            _ => Some(sys.cartan().to_vec()),
        };
        Self {
            rank: sys.rank(),
            m,
            cartan,
        }
    }

    pub fn to_system(&self) -> Result<CoxeterSystem> {
        if self.m.len() != self.rank {
            return Err(SubwordError::Unsupported(format!(
                "rank {} but the Coxeter matrix has {} rows",
                self.rank,
                self.m.len()
            )));
        }
        Ok(CoxeterSystem::with_cartan(self.m.clone(), self.cartan.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub system: CoxeterJson,
    pub word: Vec<usize>,
    pub pi_word: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<Vec<usize>>,
}

impl InstanceJson {
    pub fn from_instance(instance: &SubwordInstance, facet: Option<&Facet>) -> Self {
        let sys = instance.system();
        Self {
            system: CoxeterJson::from_system(sys),
            word: instance.word().to_one_based(),
            pi_word: sys.reduced_word(instance.pi()).to_one_based(),
            facet: facet.map(Facet::to_one_based),
        }
    }

    pub fn to_instance(&self) -> Result<(SubwordInstance, Option<Facet>)> {
        let sys = self.system.to_system()?;
        let word = Word::from_one_based(&self.word)?;
        let pi = Word::from_one_based(&self.pi_word)?;
        let instance = SubwordInstance::from_words(sys, word, &pi)?;
        let facet = match &self.facet {
            Some(f) => {
                let facet = Facet::from_one_based(f)?;
                if let Some(&p) = facet.positions().iter().find(|&&p| p >= instance.len()) {
                    return Err(SubwordError::PositionOutOfRange {
                        position: p + 1,
                        len: instance.len(),
                    });
                }
                Some(facet)
            }
            None => None,
        };
        Ok((instance, facet))
    }
}

/// A basis key: system, word and facet; `π` is the product of the complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyJson {
    pub system: CoxeterJson,
    pub word: Vec<usize>,
    pub facet: Vec<usize>,
}

impl KeyJson {
    pub fn from_key(key: &BasisKey) -> Self {
        Self {
            system: CoxeterJson {
                rank: key.degree(),
                m: key.coxeter_matrix(),
                cartan: None,
            },
            word: key.word().to_one_based(),
            facet: key.facet().to_one_based(),
        }
    }

    /// Canonicalizes the described tuple.
    pub fn to_key(&self) -> Result<BasisKey> {
        let word = Word::from_one_based(&self.word)?;
        let facet = Facet::from_one_based(&self.facet)?;
        if self.system.m.len() != self.system.rank {
            return Err(SubwordError::Unsupported("rank does not match the Coxeter matrix".into()));
        }
        BasisKey::from_parts(&self.system.m, &word, &facet)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub key: KeyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub coeff: String,
    pub keys: Vec<KeyJson>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|_| SubwordError::Unsupported(format!("`{s}` is not a rational number p/q")))
}

/// Terms in canonical key order.
pub fn vector_to_json(v: &HopfVector) -> Vec<TermJson> {
    v.terms()
        .map(|(k, c)| TermJson {
            coeff: c.to_string(),
            key: KeyJson::from_key(k),
        })
        .collect()
}

pub fn vector_from_json(terms: &[TermJson]) -> Result<HopfVector> {
    let mut v = HopfVector::zero();
    for t in terms {
        v.add_term(t.key.to_key()?, parse_rational(&t.coeff)?);
    }
    Ok(v)
}

pub fn tensor_to_json(t: &Tensor) -> Vec<TensorTermJson> {
    t.terms()
        .map(|(keys, c)| TensorTermJson {
            coeff: c.to_string(),
            keys: keys.iter().map(KeyJson::from_key).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatJson {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub dim: usize,
}

impl FlatJson {
    pub fn from_flat(flat: &Flat) -> Self {
        Self {
            j: flat.to_one_based(),
            dim: flat.dim(),
        }
    }
}

pub fn roots_to_json(roots: &[RootVector]) -> Vec<Vec<i64>> {
    roots.iter().map(|r| r.0.clone()).collect()
}
