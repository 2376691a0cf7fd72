use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::json;
use subword_core::clusters::{cluster_instance, verify_cluster_codim_one, verify_type_a_diagonal_map};
use subword_core::fixtures::{a2_instance, a3_associahedron, a3k2_instance, affine_a2_instance};
use subword_core::hopf::ops::restricted_key;
use subword_core::hopf::verify::verify_bialgebra;
use subword_core::{
    antipode, restrict_inversions, takeuchi_antipode, BasisKey, HopfVector, RootSubsystem,
    SubwordInstance, Subspace, Tuple, Word,
};

use crate::input::{key_of, system, word, InstanceArgs};
use crate::{CliError, Output, Suite};

const HOPF_DEFAULT: usize = 12;
const FACETS_DEFAULT: usize = 20;
const APPENDIX_DEFAULT_LEN: usize = 4;
const MAX_PRODUCT_DEGREE: usize = 4;

pub fn run(suite: Suite, args: &InstanceArgs, c: Option<&str>, size: Option<usize>) -> Result<Output, CliError> {
    let (failures, summary) = match suite {
        Suite::Hopf => hopf(args, size.unwrap_or(HOPF_DEFAULT))?,
        Suite::AntipodeAgreement => agreement(args, size.unwrap_or(HOPF_DEFAULT))?,
        Suite::Decomposition => decomposition(args, size.unwrap_or(FACETS_DEFAULT))?,
        Suite::ClusterFlat => cluster_flat(args, c)?,
        Suite::AppendixA => appendix(args, size.unwrap_or(APPENDIX_DEFAULT_LEN))?,
    };
    let passed = failures.is_empty();
    let mut text = format!("{}: {summary}\n", if passed { "PASS" } else { "FAIL" });
    if let Some(first) = failures.first() {
        writeln!(text, "counterexample: {first}").unwrap();
    }
    Ok(Output {
        json: json!({ "passed": passed, "summary": summary, "failures": failures }),
        text,
        ok: passed,
    })
}

fn instances(args: &InstanceArgs) -> Result<Vec<SubwordInstance>, CliError> {
    if args.has_flags() || args.input.is_some() {
        Ok(vec![args.instance()?.0])
    } else {
        Ok(vec![a2_instance(), a3_associahedron(), a3k2_instance(), affine_a2_instance()])
    }
}

/// Keys of the given tuple (or all facets of the instances) and their irreducible restrictions.
fn sample_keys(args: &InstanceArgs, size: usize) -> Result<Vec<BasisKey>, CliError> {
    let mut tuples = vec![];
    if args.facet.is_some() || (args.input.is_some() && args.instance()?.1.is_some()) {
        tuples.push(args.tuple()?);
    } else {
        for inst in instances(args)? {
            for f in inst.facets().into_iter().take(size) {
                tuples.push(Tuple::new(inst.clone(), f)?);
            }
        }
    }
    let mut keys = BTreeSet::new();
    for t in &tuples {
        keys.insert(key_of(t)?);
        for flat in t.enumerate_flats() {
            if flat.dim() >= 1 && t.is_irreducible_flat(&flat) {
                keys.insert(restricted_key(t, &flat)?);
            }
        }
    }
    let mut keys: Vec<BasisKey> = keys.into_iter().collect();
    keys.sort_by_key(|k| (k.degree(), k.word_length()));
    keys.truncate(size);
    Ok(keys)
}

fn hopf(args: &InstanceArgs, size: usize) -> Result<(Vec<String>, String), CliError> {
    let keys = sample_keys(args, size)?;
    let report = verify_bialgebra(&keys, MAX_PRODUCT_DEGREE)?;
    let failures = report
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()))
        .collect();
    Ok((failures, format!("{} keys, {} checks", keys.len(), report.checks.len())))
}

fn agreement(args: &InstanceArgs, size: usize) -> Result<(Vec<String>, String), CliError> {
    let keys = sample_keys(args, size)?;
    let mut failures = vec![];
    for k in &keys {
        let x = HopfVector::from_key(k.clone());
        let t = takeuchi_antipode(&x)?;
        let f = antipode(&x)?;
        if t != f {
            failures.push(format!("{k}: takeuchi {t} but cancellation-free {f}"));
        }
    }
    Ok((failures, format!("{} keys", keys.len())))
}

fn decomposition(args: &InstanceArgs, size: usize) -> Result<(Vec<String>, String), CliError> {
    let mut failures = vec![];
    let mut checked = 0;
    for inst in instances(args)? {
        for f in inst.facets().into_iter().take(size) {
            let t = Tuple::new(inst.clone(), f.clone())?;
            for flat in t.enumerate_flats() {
                checked += 1;
                let r = t.verify_decomposition_theorem(&flat);
                if !r.passed {
                    failures.push(format!("Q={} I={f} J={flat}: {}", inst.word(), r.message.unwrap_or_default()));
                }
            }
        }
    }
    Ok((failures, format!("{checked} (facet, flat) pairs")))
}

fn cluster_flat(args: &InstanceArgs, c: Option<&str>) -> Result<(Vec<String>, String), CliError> {
    let ty = args.ty.as_deref().ok_or_else(|| CliError::Parse("--type is required".into()))?;
    let c = c.ok_or_else(|| CliError::Parse("--c is required".into()))?;
    let sys = system(ty)?;
    let cl = cluster_instance(&sys, &word(&sys, c)?)?;
    let report = verify_cluster_codim_one(&cl)?;
    let mut failures = report.failures;
    let mut summary = format!(
        "{} facet/flat pairs checked, {} reducible flats skipped",
        report.checked, report.skipped_reducible
    );
    match verify_type_a_diagonal_map(&cl) {
        Ok(None) => summary.push_str("; diagonal model agrees"),
        Ok(Some(m)) => failures.push(format!("diagonal model: {m}")),
        Err(_) => {}
    }
    Ok((failures, summary))
}

/// Every word up to length `max_len` against every parabolic subspace and every
/// line spanned by one of its inversions.
fn appendix(args: &InstanceArgs, max_len: usize) -> Result<(Vec<String>, String), CliError> {
    let names: Vec<&str> = match &args.ty {
        Some(ty) => vec![ty.as_str()],
        None => vec!["A3", "B3", "At2"],
    };
    let systems = names.iter().map(|t| system(t)).collect::<Result<Vec<_>, _>>()?;
    let mut failures = vec![];
    let mut cases = 0;
    for sys in &systems {
        let n = sys.rank();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=max_len {
            let next: Vec<Vec<usize>> = words
                .iter()
                .filter(|w| w.len() + 1 == len)
                .flat_map(|w| (0..n).map(move |s| [w.as_slice(), &[s]].concat()))
                .collect();
            words.extend(next);
        }
        for w in words.into_iter().filter(|w| !w.is_empty()).map(Word) {
            let mut subs: Vec<Subspace> = (1u32..(1 << n))
                .map(|mask| {
                    let rows: Vec<Vec<i64>> =
                        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| sys.simple_root(i).0).collect();
                    Subspace::span(n, rows.iter().map(Vec::as_slice))
                })
                .collect();
            for g in sys.inversion_sequence(&w) {
                subs.push(Subspace::span(n, [g.coords()]));
            }
            for sub in subs {
                cases += 1;
                match restrict_inversions(sys, &w, &RootSubsystem::Subspace(sub)) {
                    Ok(r) if !r.is_consistent() => failures.push(format!("{w}: inv(P') differs from the filtered list")),
                    Ok(r) if !r.first_is_simple => failures.push(format!("{w}: first retained inversion is not simple")),
                    Ok(_) => {}
                    Err(e) => failures.push(format!("{w}: {e}")),
                }
            }
        }
    }
    Ok((failures, format!("{cases} (word, subsystem) cases up to length {max_len} over {}", names.join(", "))))
}

