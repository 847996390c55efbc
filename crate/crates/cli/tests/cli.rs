use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use groupoid_homology::{FinAbGroup, FiniteGroupoid, GroupoidFile};
use serde_json::Value;
use tempfile::TempDir;

fn ghom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghom")).args(args).env_remove("GH_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, preset: &str, name: &str) -> PathBuf {
    let path = dir.join(name);
    let o = ghom(&["gen", preset, "-o", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn groups_from_text(text: &str) -> Vec<FinAbGroup> {
    text.lines().filter_map(|l| l.strip_prefix("H_")).map(|l| l.split_once(" = ").unwrap().1.parse().unwrap()).collect()
}

#[test]
fn gen_writes_validated_files() {
    let dir = TempDir::new().unwrap();
    let p = gen(dir.path(), "cyclic:6", "c6.json");
    let file: GroupoidFile = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    let g = FiniteGroupoid::from_file(&file).unwrap();
    assert_eq!((g.arrow_count(), g.unit_arrows().len()), (6, 1));
    let o = ghom(&["gen", "units:1"]);
    let file: GroupoidFile = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(file.arrows, 1);
}

#[test]
fn gen_union_offsets_indices() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "cyclic:2", "a.json");
    let b = gen(dir.path(), "pair:2", "b.json");
    let spec = format!("union:{},{}", a.display(), b.display());
    let o = ghom(&["gen", &spec]);
    let file: GroupoidFile = serde_json::from_slice(&o.stdout).unwrap();
    let expected =
        FiniteGroupoid::disjoint_union(&FiniteGroupoid::one_object_cyclic(2).unwrap(), &FiniteGroupoid::pair(2));
    assert_eq!(file, expected.to_file());
    assert_eq!(file.arrows, 6);
}

#[test]
fn homology_examples() {
    let dir = TempDir::new().unwrap();
    let unit = gen(dir.path(), "units:1", "unit1.json");
    let o = ghom(&["homology", "-i", unit.to_str().unwrap(), "-N", "5"]);
    assert!(o.status.success());
    let mut expected = vec![FinAbGroup::integers()];
    expected.extend(std::iter::repeat_n(FinAbGroup::trivial(), 4));
    assert_eq!(groups_from_text(&stdout(&o)), expected);

    let c2 = gen(dir.path(), "cyclic:2", "cyclic2.json");
    let o = ghom(&["homology", "-i", c2.to_str().unwrap(), "--coeff", "z/2", "-N", "4"]);
    assert_eq!(groups_from_text(&stdout(&o))[..3], vec![FinAbGroup::cyclic(2); 3][..]);

    let p3 = gen(dir.path(), "pair:3", "pair3.json");
    let o = ghom(&["homology", "-i", p3.to_str().unwrap(), "-N", "4"]);
    assert_eq!(
        groups_from_text(&stdout(&o))[..3],
        [FinAbGroup::integers(), FinAbGroup::trivial(), FinAbGroup::trivial()]
    );
}

#[test]
fn text_and_json_agree() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(dir.path(), "cyclic:4", "c4.json");
    let json = dir.path().join("out.json");
    let o = ghom(&["homology", "-i", c4.to_str().unwrap(), "--coeff", "z+z/2+z/6", "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let from_json: Vec<FinAbGroup> =
        report["degrees"].as_array().unwrap().iter().map(|d| serde_json::from_value(d["group"].clone()).unwrap()).collect();
    assert_eq!(groups_from_text(&stdout(&o)), from_json);
    assert_eq!(from_json[1].to_string(), "Z/2 ⊕ Z/2 ⊕ Z/4");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "cyclic:2", "a.json");
    let b = gen(dir.path(), "pair:2", "b.json");
    let ab = gen(dir.path(), &format!("union:{},{}", a.display(), b.display()), "ab.json");
    let c = gen(dir.path(), "cyclic:3", "c.json");
    let triple = gen(dir.path(), &format!("union:{},{}", ab.display(), c.display()), "triple.json");
    let args = ["mv", "-i", triple.to_str().unwrap(), "--u1", "0,1,2", "--u2", "1,2,3", "-N", "3", "--json", "-"];
    let first = ghom(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, ghom(&args).stdout);
    let text = ["mv", "-i", triple.to_str().unwrap(), "--u1", "0,1,2", "--u2", "1,2,3", "-N", "3"];
    assert_eq!(ghom(&text).stdout, ghom(&text).stdout);
}

#[test]
fn uct_example_matches_everywhere() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(dir.path(), "cyclic:4", "c4.json");
    let o = ghom(&["uct", "-i", c4.to_str().unwrap(), "--coeff", "z/6", "-N", "3", "--json", "-"]);
    assert!(o.status.success());
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let degrees = report["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    assert!(degrees.iter().all(|d| d["match"] == Value::Bool(true)));
}

#[test]
fn mv_reports_every_node() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "cyclic:2", "a.json");
    let b = gen(dir.path(), "cyclic:3", "b.json");
    let ab = gen(dir.path(), &format!("union:{},{}", a.display(), b.display()), "ab.json");
    let c = gen(dir.path(), "cyclic:4", "c.json");
    let triple = gen(dir.path(), &format!("union:{},{}", ab.display(), c.display()), "triple.json");
    let o = ghom(&["mv", "-i", triple.to_str().unwrap(), "--u1", "0,1", "--u2", "1,2", "-N", "3", "--json", "-"]);
    assert!(o.status.success());
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let seq = report["sequence"].as_array().unwrap();
    // three nodes per degree plus the trailing zero
    assert_eq!(seq.len(), 3 * 3 + 1);
    assert!(seq.iter().all(|r| r["exact"] != Value::Bool(false)));
    assert_eq!(report["passed"], Value::Bool(true));
}

#[test]
fn mv_rejects_unsaturated_subsets() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "cyclic:2", "a.json");
    let b = gen(dir.path(), "pair:2", "b.json");
    let ab = gen(dir.path(), &format!("union:{},{}", a.display(), b.display()), "ab.json");
    let o = ghom(&["mv", "-i", ab.to_str().unwrap(), "--u1", "0,1", "--u2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "not_saturated");
    let o = ghom(&["mv", "-i", ab.to_str().unwrap(), "--u1", "0", "--u2", "1"]);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "cover_fails");
}

#[test]
fn sft_family_example() {
    let o = ghom(&["sft", "--family", "4", "6", "--q", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("H_0 = Z/3 ⊕ Z/6\n"), "{text}");
    assert!(text.contains("H_1 = Z/3\n"), "{text}");
    let o = ghom(&["sft", "--family", "4", "6", "--q", "6", "--primary"]);
    assert!(stdout(&o).contains("H_0 = Z/2 ⊕ Z/3 ⊕ Z/3\n"));
    let o = ghom(&["sft", "--full-shift", "7"]);
    assert!(stdout(&o).contains("H_0 = Z/6\nH_1 = 0\nmatrix route agrees: true"));
    let o = ghom(&["sft", "--family", "4", "6", "--qmax", "12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("\ttrue")).count(), 12);
}

#[test]
fn classify_flags_the_known_collision() {
    let o = ghom(&["classify", "--family", "3", "4", "--bound", "9", "--qmax", "2520", "--json", "-"]);
    assert!(o.status.success());
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["sound"], Value::Bool(true));
    let flagged = report["flagged_for_review"].as_array().unwrap();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0]["left"], serde_json::json!({"n": 2, "m": 7}));
    assert_eq!(flagged[0]["right"], serde_json::json!({"n": 3, "m": 4}));
}

#[test]
fn errors_are_structured() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"arrows\": 1,\n \"units\": [0]}").unwrap();
    let o = ghom(&["homology", "-i", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
    assert!(err["error"]["message"].as_str().unwrap().contains("line 2"));

    let mut file = FiniteGroupoid::pair(2).to_file();
    file.inverse[1] = 1;
    std::fs::write(&bad, serde_json::to_string(&file).unwrap()).unwrap();
    let o = ghom(&["homology", "-i", bad.to_str().unwrap()]);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "groupoid_axiom");

    let o = ghom(&["gen", "action:3:1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let c2 = gen(dir.path(), "cyclic:2", "c2.json");
    let o = Command::new(env!("CARGO_BIN_EXE_ghom"))
        .args(["homology", "-i", c2.to_str().unwrap()])
        .env("GH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "nerve_budget");
    let o = ghom(&["homology", "-i", c2.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
}
