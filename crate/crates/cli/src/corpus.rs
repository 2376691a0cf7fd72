//! Golden fixtures for the worked examples.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use subword_core::fixtures::{
    a2_instance, a3_associahedron, a3k2_instance, affine_a2_instance, empty_instance, one_based_facet,
    A2_FACET, A3K2_FACET, A3K2_FLAT, AFFINE_A2_FACET, AFFINE_A2_FACET_COUNT, AFFINE_A2_FLAT,
};
use subword_core::json::{roots_to_json, FlatJson, InstanceJson};
use subword_core::{Facet, SubwordInstance, Tuple};

use crate::CliError;

fn base(instance: &SubwordInstance, facet: Option<&Facet>) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(InstanceJson::from_instance(instance, facet))
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let facets: Vec<Vec<usize>> = instance.facets().iter().map(Facet::to_one_based).collect();
    v["expected_facet_count"] = json!(facets.len());
    v["expected_facets"] = json!(facets);
    if let Some(f) = facet {
        let t = Tuple::new(instance.clone(), f.clone())?;
        v["expected_root_function"] = json!(roots_to_json(t.roots()));
        let flats: Vec<FlatJson> = t.enumerate_flats().iter().map(FlatJson::from_flat).collect();
        v["expected_flats"] = serde_json::to_value(flats).map_err(|e| CliError::Parse(e.to_string()))?;
    }
    Ok(v)
}

fn restriction(instance: &SubwordInstance, facet: &[usize], flat: &[usize]) -> Result<Value, CliError> {
    let t = Tuple::new(instance.clone(), one_based_facet(facet))?;
    let f = t.flat_from_positions(&one_based_facet(flat).0)?;
    let r = t.restrict(&f)?;
    Ok(json!({
        "J": f.to_one_based(),
        "restricted": InstanceJson::from_instance(r.tuple.instance(), Some(r.tuple.facet())),
        "restricted_root_function": roots_to_json(r.tuple.roots()),
        "restricted_facets": r.tuple.instance().facets().iter().map(Facet::to_one_based).collect::<Vec<_>>(),
    }))
}

pub fn fixtures() -> Result<Vec<(&'static str, Value)>, CliError> {
    let a2 = a2_instance();
    let a2_facet = one_based_facet(A2_FACET);

    let assoc = a3_associahedron();

    let a3k2 = a3k2_instance();
    let mut a3k2_v = base(&a3k2, Some(&one_based_facet(A3K2_FACET)))?;
    a3k2_v["expected_restriction"] = restriction(&a3k2, A3K2_FACET, A3K2_FLAT)?;

    let at2 = affine_a2_instance();
    let mut at2_v = base(&at2, Some(&one_based_facet(AFFINE_A2_FACET)))?;
    at2_v["expected_restriction"] = restriction(&at2, AFFINE_A2_FACET, AFFINE_A2_FLAT)?;
    let link = at2.link(&one_based_facet(&[4]))?;
    at2_v["expected_link"] = json!({
        "face": [4],
        "facets": link.facets_in_original_labels().iter().map(Facet::to_one_based).collect::<Vec<_>>(),
    });
    at2_v["note"] = json!(format!(
        "the complex has {AFFINE_A2_FACET_COUNT} facets: the consecutive windows of length 3"
    ));

    Ok(vec![
        ("A2-example.json", base(&a2, Some(&a2_facet))?),
        ("A3-associahedron.json", base(&assoc, None)?),
        ("A3k2-multiassociahedron.json", a3k2_v),
        ("At2-example.json", at2_v),
        ("empty.json", base(&empty_instance(), Some(&Facet::default()))?),
    ])
}

pub fn emit(dir: &Path) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut written = vec![];
    for (name, value) in fixtures()? {
        let path = dir.join(name);
        let text = serde_json::to_string_pretty(&value).map_err(|e| CliError::Parse(e.to_string()))?;
        fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(name.to_string());
    }
    Ok(written)
}
