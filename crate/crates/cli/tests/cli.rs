//! End-to-end tests of the binary: command output, exit codes, and
//! byte-stability of the machine-readable formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hinv"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn temp_input(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hinv-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_reports_structure() {
    let out = bin()
        .args(["analyze", "--input"])
        .arg(fixture("example_1_2.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("lambda = 0: multiplicity 4"), "{text}");
    assert!(text.contains("t = (1, 3)"), "{text}");
    assert!(text.contains("U = (e1, e2)"), "{text}");
}

#[test]
fn analyze_depth_tuple_report() {
    let out = bin()
        .args(["analyze", "--r", "1,0", "--input"])
        .arg(fixture("example_2_1.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("t = (2, 3)"), "{text}");
    assert!(text.contains("admissible true, monotone false"), "{text}");
    assert!(text.contains("W(r, U) != W(r)"), "{text}");
}

#[test]
fn analyze_json_is_byte_stable() {
    let run = || {
        let out = bin()
            .args(["analyze", "--json", "--input"])
            .arg(fixture("example_1_2.json"))
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn classify_z_flags() {
    let out = bin()
        .args(["classify", "--subspace", "Z", "--input"])
        .arg(fixture("example_1_2.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("invariant \u{2713}"), "{text}");
    assert!(text.contains("marked \u{2717}"), "{text}");
    assert!(text.contains("characteristic \u{2713}"), "{text}");
    assert!(text.contains("hyperinvariant \u{2717}"), "{text}");
    assert!(text.contains("witness"), "{text}");

    let out = bin()
        .args(["classify", "--json", "--subspace", "Z", "--input"])
        .arg(fixture("example_1_2.json"))
        .output()
        .unwrap();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["invariant"], "yes");
    assert_eq!(json["marked"], "no");
    assert_eq!(json["characteristic"], "yes");
    assert_eq!(json["hyperinvariant"], "no");
}

#[test]
fn classify_non_invariant_is_an_outcome_not_a_crash() {
    let input = temp_input(
        "noninv.json",
        r#"{
            "p": 2,
            "matrix": [[0,0,0,0],[0,0,0,0],[0,1,0,0],[0,0,1,0]],
            "subspaces": { "E2": [[0,1,0,0]] }
        }"#,
    );
    let out = bin()
        .args(["classify", "--subspace", "E2", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("invariant \u{2717}"));
}

#[test]
fn non_split_char_poly_exits_3() {
    let input = temp_input(
        "nonsplit.json",
        r#"{ "p": 2, "matrix": [[0,1],[1,1]] }"#,
    );
    let out = bin().args(["analyze", "--input"]).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("does not split"), "{}", stderr(&out));
}

#[test]
fn malformed_input_exits_2() {
    let input = temp_input("bad.json", r#"{ "p": 2, "matrix": [[0,1],[1]] }"#);
    let out = bin().args(["analyze", "--input"]).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_dot_output_is_byte_stable() {
    let dot_a = std::env::temp_dir().join(format!("hinv-{}-a.dot", std::process::id()));
    let dot_b = std::env::temp_dir().join(format!("hinv-{}-b.dot", std::process::id()));
    for dot in [&dot_a, &dot_b] {
        let out = bin()
            .args(["lattice", "--input"])
            .arg(fixture("example_1_2.json"))
            .arg("--dot")
            .arg(dot)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("hyperinvariant family: 6 subspaces"), "{text}");
        assert!(text.contains("hasse edges: 6"), "{text}");
    }
    let a = std::fs::read(&dot_a).unwrap();
    let b = std::fs::read(&dot_b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("digraph hinv {"));
    assert_eq!(text.matches("->").count(), 6);
    assert!(text.contains("dim=2\\nfV"), "{text}");
}

#[test]
fn lattice_single_block_is_a_chain() {
    let input = temp_input(
        "n4.json",
        r#"{ "p": 2, "matrix": [[0,0,0,0],[1,0,0,0],[0,1,0,0],[0,0,1,0]] }"#,
    );
    let out = bin().args(["lattice", "--input"]).arg(&input).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("hyperinvariant family: 5 subspaces"), "{text}");
    assert!(text.contains("hasse edges: 4"), "{text}");
}

#[test]
fn search_requires_gf2_unless_forced() {
    let out = bin()
        .args(["search", "--input"])
        .arg(fixture("gf3_structure.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("hyperinvariant"), "{}", stderr(&out));

    let out = bin()
        .args(["search", "--force", "--input"])
        .arg(fixture("gf3_structure.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 found"));

    let out = bin()
        .args(["search", "--input"])
        .arg(fixture("example_1_2.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 found"), "{}", stdout(&out));
    assert!(stdout(&out).contains("span{e1+e3, e4}"), "{}", stdout(&out));
}

#[test]
fn cap_overflow_exits_4() {
    let out = bin()
        .args(["search", "--cap-subspaces", "3", "--input"])
        .arg(fixture("example_1_2.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
}

#[test]
fn verify_bundled_fixtures_pass() {
    let out = bin().arg("verify").output().unwrap();
    assert!(out.status.success(), "{}\n{}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("VERIFY PASS"), "{text}");
    assert!(text.contains("fixture example_1_2: 4 expectations, 0 mismatches"));
    assert!(text.contains("property w_conditions_agree: ok"));
}

#[test]
fn verify_random_is_reproducible() {
    let run = || {
        let out = bin()
            .args(["verify", "--random", "2", "4", "6", "--seed", "9", "--json"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        out.stdout
    };
    let a = run();
    assert_eq!(a, run());
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(json["passed"], true);
}
