//! Acceptance criterion 9: the verification command must fail, with a
//! witness, on a fixture that mislabels a non-hyperinvariant subspace as
//! hyperinvariant — and must pass on the honest fixture set.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hinv"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

#[test]
fn criterion_9_negative_control() {
    let start = Instant::now();

    // the corrupted fixture claims Z is hyperinvariant; the suite must
    // fail with exit code 1 and produce the escaping-endomorphism witness
    let out = bin()
        .args(["verify", "--input"])
        .arg(fixture("negative_control.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("VERIFY FAIL"), "{text}");
    assert!(
        text.contains("hyperinvariant expected true, computed no"),
        "{text}"
    );
    assert!(text.contains("witness"), "{text}");

    // the honest twin passes with exit code 0
    let out = bin()
        .args(["verify", "--input"])
        .arg(fixture("example_1_2.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let elapsed = start.elapsed();
    println!("criterion 9: PASS ({elapsed:.2?}, budget 60.00s)");
    assert!(elapsed <= Duration::from_secs(60));
}
