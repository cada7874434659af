//! End-to-end tests against the compiled binary: exit codes, stream
//! formats, and agreement with the library on frozen counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semikit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn bundled_proof(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/proofs")
        .join(name)
}

#[test]
fn verify_main1_holds() {
    let out = run(&["verify", "--claim", "main1", "--p", "2", "--q", "3", "--max-order", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict=holds"), "{text}");
    assert!(text.contains("models_checked=3614"), "{text}");
}

#[test]
fn verify_rejects_missing_exponents() {
    let out = run(&["verify", "--claim", "main1", "--max-order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn verify_rejects_unknown_claim() {
    let out = run(&["verify", "--claim", "main9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_example_exit_codes() {
    let out = run(&["audit-example", "ex22"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("verdict=holds"));

    let out = run(&["audit-example", "ex42"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("verdict=hypothesis_never_satisfied"), "{text}");
    assert!(text.contains("(21, 8)") && text.contains("(31, 8)"), "{text}");

    let out = run(&["audit-example", "ex99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn replay_bundled_script_verifies() {
    let path = bundled_proof("lemma21.prf");
    let out = run(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("claim commutative: verified"), "{text}");
    assert!(text.contains("4 of 4 claims verified"), "{text}");
}

#[test]
fn replay_reports_failed_claims_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.prf");
    std::fs::write(&path, "claim bad: x * y = y * x\nrefl\nqed\n").unwrap();
    let out = run(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("claim bad: FAILED"), "{text}");
    assert!(text.contains("0 of 1 claims verified"), "{text}");
}

#[test]
fn replay_rejects_malformed_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.prf");
    std::fs::write(&path, "claim oops: x * = y\nqed\n").unwrap();
    let out = run(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn construct_classify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4.sg");
    let out = run(&["construct", "cyclic", "4", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty(), "file mode keeps stdout clean");

    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("group=true"), "{text}");
    assert!(text.contains("commutative=true"), "{text}");
    assert!(text.contains("identity=0"), "{text}");
}

#[test]
fn construct_rejects_bad_input() {
    assert_eq!(run(&["construct", "dihedral", "4"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "cyclic"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "cyclic", "x"]).status.code(), Some(2));
}

#[test]
fn classify_missing_file_is_usage_error() {
    let out = run(&["classify", "/nonexistent/t.sg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn enumerate_counts_match_census() {
    let out = run(&["enumerate", "--order", "3", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "113");

    let out = run(&["enumerate", "--order", "3", "--count-only", "--iso"]);
    assert_eq!(stdout(&out).trim(), "24");

    let out = run(&["enumerate", "--order", "4", "--count-only", "--jobs", "4"]);
    assert_eq!(stdout(&out).trim(), "3492");

    let out = run(&["enumerate", "--order", "4", "--count-only", "--filter", "group"]);
    assert_eq!(stdout(&out).trim(), "16");

    let out = run(&["enumerate", "--order", "2", "--count-only", "--filter", "!commutative"]);
    assert_eq!(stdout(&out).trim(), "2");

    let out = run(&["enumerate", "--order", "2", "--count-only", "--filter", "solvable"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_stream_is_deterministic_sg() {
    let first = stdout(&run(&["enumerate", "--order", "2"]));
    let second = stdout(&run(&["enumerate", "--order", "2"]));
    assert_eq!(first, second);
    let docs: Vec<&str> = first.split("\n\n").collect();
    assert_eq!(docs.len(), 8);
    assert!(docs.iter().all(|d| d.starts_with("n 2\n")));
}

#[test]
fn records_mode_emits_json() {
    let out = run(&[
        "--format", "records", "verify", "--claim", "lemma41", "--max-order", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["verdict"], "holds");
    assert_eq!(record["models_checked"], 122);

    let out = run(&["--format", "records", "enumerate", "--order", "2"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    for line in lines {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["order"], 2);
    }
}

#[test]
fn decompose_writes_parseable_documents() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("chain3.sg");
    std::fs::write(&table, "n 3\n0 0 0\n0 1 1\n0 1 2\n").unwrap();
    let out_dir = dir.path().join("parts");
    let out = run(&[
        "decompose",
        table.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<String> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "chain3.class0.sg",
            "chain3.class1.sg",
            "chain3.class2.sg",
            "chain3.quotient.sg"
        ]
    );
    for name in names {
        let text = std::fs::read_to_string(out_dir.join(name)).unwrap();
        semikit::CayleyTable::parse_sg(&text).unwrap();
    }
}

#[test]
fn decompose_summary_covers_partition() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("chain2.sg");
    std::fs::write(&table, "n 2\n0 0\n0 1\n").unwrap();
    let out = run(&["decompose", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classes=2"), "{text}");
    assert!(text.contains("separative=true"), "{text}");
    assert!(text.contains("quotient:"), "{text}");
}

#[test]
fn emit_prover9_exit_codes() {
    let out = run(&["emit-prover9", "--p", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("formulas(assumptions).\n"), "{text}");
    assert!(text.contains("formulas(goals).\nx * y = y * x.\n"), "{text}");

    let out = run(&["emit-prover9", "--p", "2", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["emit-prover9", "--p", "2", "--q", "3", "--theory", "modular"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate"]);
    assert_eq!(out.status.code(), Some(2));
}
