use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn subword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subword"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = subword(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn corpus_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subword-cli-{name}-{}", std::process::id()));
    let o = subword(&["corpus", dir.to_str().unwrap()]);
    assert!(o.status.success());
    dir
}

#[test]
fn a2_facets() {
    let o = subword(&["facets", "--type", "A2", "--word", "1,2,1,2,1", "--pi", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 facets\n{1,2,5}\n{2,3,5}\n{3,4,5}\n");
    let v = json(&["facets", "--type", "A2", "--word", "1,2,1,2,1", "--pi", "1,2"]);
    assert_eq!(v["facets"], serde_json::json!([[1, 2, 5], [2, 3, 5], [3, 4, 5]]));
    assert_eq!(v["void"], false);
}

#[test]
fn void_instance_is_flagged() {
    let v = json(&["facets", "--type", "A2", "--word", "1,1", "--pi", "1,2"]);
    assert_eq!(v["count"], 0);
    assert_eq!(v["void"], true);
}

#[test]
fn antipode_both_agree() {
    let dir = corpus_dir("antipode");
    let file = dir.join("A2-example.json");
    let o = subword(&["antipode", "--method", "both", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "agree: true"), "{text}");
    assert_eq!(text.matches("(2) ").count(), 6);
}

#[test]
fn cluster_flat_suite_passes() {
    let o = subword(&["verify", "cluster-flat", "--type", "A3", "--c", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn other_suites_pass() {
    for args in [
        vec!["verify", "hopf", "--size", "8"],
        vec!["verify", "antipode-agreement", "--size", "8"],
        vec!["verify", "decomposition", "--size", "2"],
        vec!["verify", "appendixA", "--size", "3"],
    ] {
        let o = subword(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn rootfn_of_a2() {
    let v = json(&["rootfn", "--type", "A2", "--word", "1,2,1,2,1", "--pi", "1,2", "--facet", "2,3,5"]);
    assert_eq!(
        v["roots"],
        serde_json::json!([[1, 0], [1, 1], [-1, 0], [1, 1], [0, 1]])
    );
}

#[test]
fn flip_and_flats() {
    let base = ["--type", "A2", "--word", "1,2,1,2,1", "--pi", "1,2", "--facet", "2,3,5"];
    let mut args = vec!["flip", "--position", "2"];
    args.extend(base);
    let v = json(&args);
    assert_eq!(v["flippable"], true);
    assert_eq!(v["facet"], serde_json::json!([3, 4, 5]));
    let mut args = vec!["flats"];
    args.extend(base);
    let v = json(&args);
    assert_eq!(v["count"], 5);
}

#[test]
fn restrict_a3k2() {
    let dir = corpus_dir("restrict");
    let file = dir.join("A3k2-multiassociahedron.json");
    let v = json(&["restrict", "--flat", "1,3,5,6,8,9,11", file.to_str().unwrap()]);
    assert_eq!(v["decomposition_theorem"], true);
    let fixture: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["roots"], fixture["expected_restriction"]["restricted_root_function"]);
}

#[test]
fn corpus_contents() {
    let dir = corpus_dir("contents");
    let read = |n: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(dir.join(n)).unwrap()).unwrap() };
    let at2 = read("At2-example.json");
    assert_eq!(at2["expected_facet_count"], 7);
    assert_eq!(at2["expected_link"]["facets"], serde_json::json!([[2, 3], [3, 5], [5, 6]]));
    let a3k2 = read("A3k2-multiassociahedron.json");
    assert_eq!(a3k2["expected_root_function"].as_array().unwrap().len(), 12);
    let empty = read("empty.json");
    assert_eq!(empty["expected_facets"], serde_json::json!([[]]));
    assert_eq!(read("A3-associahedron.json")["expected_facet_count"], 14);
}

#[test]
fn inline_json_and_product() {
    let a1 = r#"{"system":{"rank":1,"m":[[1]]},"word":[1],"facet":[1]}"#;
    let v = json(&["product", a1, a1]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["key"]["system"]["rank"], 2);
    let v = json(&["coproduct", a1]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn cluster_and_rotate() {
    let v = json(&["cluster", "--type", "B3", "--c", "1,2,3"]);
    assert_eq!(v["facet_count"], 20);
    let o = subword(&["rotate", "--type", "A2", "--c", "1,2", "--facet", "1,2", "--times", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn chip_failure_exits_one() {
    let dir = corpus_dir("chip");
    let file = dir.join("A2-example.json");
    let o = subword(&["chip", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = subword(&["chip", "--iterations", "0", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        vec!["facets", "--type", "Q9", "--word", "1"],
        vec!["facets", "--type", "A2", "--word", "1,x"],
        vec!["facets", "--type", "A2", "--word", "1,3"],
        vec!["rootfn", "--type", "A2", "--word", "1,2,1", "--facet", "9"],
        vec!["antipode", "{not json"],
        vec!["frobnicate"],
    ] {
        let o = subword(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "coproduct", "--type", "A3", "--word", "1,2,3,1,2,3,1,2,1", "--facet", "1,2,3"];
    let a = subword(&args);
    let b = subword(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
