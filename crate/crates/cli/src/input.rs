use std::fs;

use serde_json::Value;
use subword_core::json::{InstanceJson, KeyJson};
use subword_core::{canonicalize, BasisKey, CoxeterSystem, Facet, SubwordInstance, Tuple, Word};

use crate::CliError;

/// Instance selection shared by most verbs.
#[derive(clap::Args, Clone, Debug, Default)]
pub struct InstanceArgs {
    /// Coxeter type, e.g. `A3`, `B4`, `At2`, `A1xA2`.
    #[arg(long = "type")]
    pub ty: Option<String>,
    /// Comma-separated 1-based generators of Q.
    #[arg(long)]
    pub word: Option<String>,
    /// Comma-separated word for pi; `w0` for the longest element.
    #[arg(long)]
    pub pi: Option<String>,
    /// Comma-separated 1-based facet positions.
    #[arg(long)]
    pub facet: Option<String>,
    /// JSON file path or inline JSON object.
    pub input: Option<String>,
}

pub fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Parse(format!("`{t}` is not a positive integer")))
        })
        .collect()
}

pub fn parse_facet(s: &str) -> Result<Facet, CliError> {
    Ok(Facet::from_one_based(&parse_list(s)?)?)
}

pub fn system(ty: &str) -> Result<CoxeterSystem, CliError> {
    Ok(CoxeterSystem::from_type(ty)?)
}

pub fn word(sys: &CoxeterSystem, s: &str) -> Result<Word, CliError> {
    if s.trim() == "w0" {
        return sys
            .longest_word()
            .ok_or_else(|| CliError::Parse("w0 requires a finite type".into()));
    }
    let w = Word::from_one_based(&parse_list(s)?)?;
    sys.check_word(&w)?;
    Ok(w)
}

/// Reads a file, or takes the argument itself when it starts with `{`.
pub fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{arg}: {e}")))
}

pub enum Parsed {
    Instance(SubwordInstance, Option<Facet>),
    Key(BasisKey),
}

pub fn parse_value(v: Value) -> Result<Parsed, CliError> {
    if v.get("pi_word").is_some() {
        let j: InstanceJson = serde_json::from_value(v).map_err(|e| CliError::Parse(e.to_string()))?;
        let (inst, facet) = j.to_instance()?;
        Ok(Parsed::Instance(inst, facet))
    } else {
        let j: KeyJson = serde_json::from_value(v).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Parsed::Key(j.to_key()?))
    }
}

impl InstanceArgs {
    pub fn has_flags(&self) -> bool {
        self.ty.is_some() || self.word.is_some()
    }

    /// The instance and optional facet; flags override the JSON facet.
    pub fn instance(&self) -> Result<(SubwordInstance, Option<Facet>), CliError> {
        let (inst, facet) = match (&self.input, &self.ty) {
            (Some(arg), _) => match parse_value(read_json(arg)?)? {
                Parsed::Instance(i, f) => (i, f),
                Parsed::Key(k) => {
                    let t = k.to_tuple();
                    (t.instance().clone(), Some(t.facet().clone()))
                }
            },
            (None, Some(ty)) => {
                let sys = system(ty)?;
                let q = word(
                    &sys,
                    self.word
                        .as_deref()
                        .ok_or_else(|| CliError::Parse("--word is required with --type".into()))?,
                )?;
                let pi = word(&sys, self.pi.as_deref().unwrap_or("w0"))?;
                (SubwordInstance::from_words(sys, q, &pi)?, None)
            }
            (None, None) => return Err(CliError::Parse("give --type/--word/--pi or a JSON input".into())),
        };
        let facet = match &self.facet {
            Some(f) => Some(parse_facet(f)?),
            None => facet,
        };
        if let Some(f) = &facet {
            if let Some(&p) = f.positions().iter().find(|&&p| p >= inst.len()) {
                return Err(CliError::Parse(format!("position {} exceeds |Q| = {}", p + 1, inst.len())));
            }
        }
        Ok((inst, facet))
    }

    pub fn tuple(&self) -> Result<Tuple, CliError> {
        let (inst, facet) = self.instance()?;
        let facet = facet.ok_or_else(|| CliError::Parse("a facet is required (--facet or JSON `facet`)".into()))?;
        Ok(Tuple::new(inst, facet)?)
    }

    /// The basis key of the tuple, reducing to the span of its roots when reducible.
    pub fn key(&self) -> Result<BasisKey, CliError> {
        if let Some(arg) = &self.input {
            if self.facet.is_none() {
                if let Parsed::Key(k) = parse_value(read_json(arg)?)? {
                    return Ok(k);
                }
            }
        }
        key_of(&self.tuple()?)
    }
}

pub fn key_of(t: &Tuple) -> Result<BasisKey, CliError> {
    if t.is_irreducible() {
        Ok(canonicalize(t)?)
    } else {
        Ok(canonicalize(&t.irreducible_reduction()?.tuple)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_list("").unwrap(), Vec::<usize>::new());
        assert!(parse_list("1,-2").is_err());
    }

    #[test]
    fn w0_shortcut() {
        let sys = system("A3").unwrap();
        assert_eq!(word(&sys, "w0").unwrap().len(), 6);
        assert!(word(&system("At2").unwrap(), "w0").is_err());
        assert!(word(&sys, "4").is_err());
    }

    #[test]
    fn facet_flag_overrides_json() {
        let args = InstanceArgs {
            input: Some(r#"{"system":{"rank":2,"m":[[1,3],[3,1]]},"word":[1,2,1,2,1],"pi_word":[1,2],"facet":[2,3,5]}"#.into()),
            facet: Some("1,2,5".into()),
            ..InstanceArgs::default()
        };
        let (_, f) = args.instance().unwrap();
        assert_eq!(f.unwrap().to_one_based(), vec![1, 2, 5]);
    }
}
