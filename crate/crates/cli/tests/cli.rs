//! End-to-end tests of the `binop` binary: payload shapes, the exit-code
//! contract (0 pass / 1 violation with witness / 2 input error), stderr
//! behavior, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binop"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn payload(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

fn write_fixture(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let output = run(args);
    assert_eq!(exit_code(&output), 0, "fixture generation failed");
    let path = dir.join(name);
    std::fs::write(&path, &output.stdout).unwrap();
    path
}

#[test]
fn enumerate_counts_and_modes() {
    let fast = run(&["enumerate", "--n", "2"]);
    assert_eq!(exit_code(&fast), 0);
    let doc = payload(&fast);
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["mode"], "fast");

    let brute = run(&["enumerate", "--n", "2", "--mode", "brute"]);
    assert_eq!(payload(&brute)["count"], 4);
    assert_eq!(exit_code(&brute), 0);

    let crossed = run(&["enumerate", "--n", "3", "--cross-check"]);
    assert_eq!(exit_code(&crossed), 0);
    let doc = payload(&crossed);
    assert_eq!(doc["count"], 216);
    assert_eq!(doc["equal"], true);
}

#[test]
fn enumerate_list_starts_with_the_identity_table() {
    let output = run(&["enumerate", "--n", "2", "--list"]);
    let doc = payload(&output);
    let tables = doc["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 4);
    assert_eq!(tables[0]["table"], serde_json::json!([[0, 1], [0, 1]]));
}

#[test]
fn enumerate_rejects_oversized_carriers() {
    let output = run(&["enumerate", "--n", "5"]);
    assert_eq!(exit_code(&output), 2);
    assert!(output.stdout.is_empty());

    let brute = run(&["enumerate", "--n", "4", "--mode", "brute"]);
    assert_eq!(exit_code(&brute), 2);
}

#[test]
fn env_var_lowers_but_never_raises_caps() {
    let lowered = run_with_env(&["enumerate", "--n", "3"], "BINOP_MAX_N", "2");
    assert_eq!(exit_code(&lowered), 2);

    let unraised = run_with_env(&["enumerate", "--n", "5"], "BINOP_MAX_N", "10");
    assert_eq!(exit_code(&unraised), 2);

    let unaffected = run_with_env(&["enumerate", "--n", "2"], "BINOP_MAX_N", "2");
    assert_eq!(exit_code(&unaffected), 0);
}

#[test]
fn cayley_of_two_points_is_the_four_element_abelian_group() {
    let output = run(&["cayley", "--n", "2"]);
    assert_eq!(exit_code(&output), 0);
    let doc = payload(&output);
    assert_eq!(doc["order"], 4);
    assert_eq!(doc["fingerprint"]["abelian"], true);
    assert_eq!(doc["fingerprint"]["element_orders"], serde_json::json!([1, 2, 2, 2]));
    let csv = doc["csv"].as_str().unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().all(|row| row.split(',').count() == 4));

    let too_big = run(&["cayley", "--n", "4"]);
    assert_eq!(exit_code(&too_big), 2);
}

#[test]
fn generated_conjugation_fixtures_pass_check_action() {
    let dir = tempfile::tempdir().unwrap();
    for group in ["Z2", "Z4", "S3", "Q8"] {
        let path = write_fixture(dir.path(), group, &["gen", "conj", "--group", group]);
        let checked = run(&["check-action", path.to_str().unwrap()]);
        assert_eq!(exit_code(&checked), 0, "{group}");
        let doc = payload(&checked);
        assert_eq!(doc["binary_action"], true);
        assert_eq!(doc["homomorphism"], true);
        assert_eq!(doc["induced_valid"], true);
        assert_eq!(doc["witnesses"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn generated_embeddings_pass_check_action() {
    let dir = tempfile::tempdir().unwrap();
    let fixtures = [
        ("trivial", vec!["gen", "embed", "--group", "Z4", "--action", "trivial", "--points", "3"]),
        ("regular", vec!["gen", "embed", "--group", "Z4", "--action", "regular"]),
        ("natural", vec!["gen", "embed", "--group", "S3", "--action", "natural"]),
    ];
    for (name, args) in fixtures {
        let path = write_fixture(dir.path(), name, &args);
        let checked = run(&["check-action", path.to_str().unwrap()]);
        assert_eq!(exit_code(&checked), 0, "{name}");
    }

    // The natural action only makes sense for symmetric groups.
    let bad = run(&["gen", "embed", "--group", "Z4", "--action", "natural"]);
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn corrupted_action_exits_one_with_a_witness_quadruple() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "z4", &["gen", "conj", "--group", "Z4"]);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let entry = &mut doc["act"]["1"]["table"][0][0];
    *entry = Value::from((entry.as_u64().unwrap() + 1) % 4);
    let bad_path = dir.path().join("corrupt.json");
    std::fs::write(&bad_path, serde_json::to_string(&doc).unwrap()).unwrap();

    let checked = run(&["check-action", bad_path.to_str().unwrap()]);
    assert_eq!(exit_code(&checked), 1);
    let report = payload(&checked);
    assert_eq!(report["binary_action"], false);
    let witnesses = report["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    let first = &witnesses[0];
    // A composition witness carries the full quadruple, an identity
    // witness the pair; either pins down a concrete counterexample.
    match first["kind"].as_str().unwrap() {
        "composition" => {
            for key in ["g", "h", "t", "x"] {
                assert!(first[key].is_u64(), "missing {key}");
            }
        }
        "identity" => {
            for key in ["t", "x"] {
                assert!(first[key].is_u64(), "missing {key}");
            }
        }
        other => panic!("unexpected witness kind {other}"),
    }
}

#[test]
fn malformed_and_missing_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mangled.json");
    std::fs::write(&path, "{\"group\": [not json").unwrap();
    let output = run(&["check-action", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(output.stdout.is_empty());

    let missing = run(&["check-action", "/nonexistent/action.json"]);
    assert_eq!(exit_code(&missing), 2);

    // Parseable JSON with inconsistent shape is also an input error.
    let shape = dir.path().join("shape.json");
    std::fs::write(
        &shape,
        r#"{"group":{"order":2,"mul":[[0,1],[1,0]],"identity":0},"n":1,"act":{"0":{"n":1,"table":[[0]]}}}"#,
    )
    .unwrap();
    let output = run(&["check-action", shape.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn orbit_report_on_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let conj = write_fixture(dir.path(), "s3", &["gen", "conj", "--group", "S3"]);
    let output = run(&["orbit", conj.to_str().unwrap(), "--x", "0", "--y", "2"]);
    assert_eq!(exit_code(&output), 0);
    let doc = payload(&output);
    assert_eq!(doc["orbit"]["members"], serde_json::json!([0, 1, 2, 3, 4, 5]));
    assert_eq!(doc["g_xx"]["members"], serde_json::json!([0, 1, 2, 3, 4, 5]));
    assert_eq!(doc["g_xx_invariant"], true);
    assert_eq!(doc["distributive"], true);
    assert!(doc["g_xy"]["invariant"].is_boolean());

    let trivial = write_fixture(
        dir.path(),
        "trivial",
        &["gen", "embed", "--group", "Z2", "--action", "trivial", "--points", "4"],
    );
    let output = run(&["orbit", trivial.to_str().unwrap(), "--x", "3"]);
    let doc = payload(&output);
    assert_eq!(doc["orbit"]["members"], serde_json::json!([3]));

    let out_of_range = run(&["orbit", trivial.to_str().unwrap(), "--x", "9"]);
    assert_eq!(exit_code(&out_of_range), 2);
}

#[test]
fn orbit_of_embedded_swap_action_is_both_points() {
    let dir = tempfile::tempdir().unwrap();
    let regular = write_fixture(
        dir.path(),
        "z2reg",
        &["gen", "embed", "--group", "Z2", "--action", "regular"],
    );
    let output = run(&["orbit", regular.to_str().unwrap(), "--x", "0"]);
    assert_eq!(payload(&output)["orbit"]["members"], serde_json::json!([0, 1]));
}

#[test]
fn invariants_file_and_sweep_modes() {
    let dir = tempfile::tempdir().unwrap();
    let trivial = write_fixture(
        dir.path(),
        "trivial",
        &["gen", "embed", "--group", "Z2", "--action", "trivial", "--points", "3"],
    );
    let output = run(&["invariants", trivial.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(payload(&output)["count"], 8);

    let sweep = run(&["invariants", "--sweep", "--max-order", "6"]);
    assert_eq!(exit_code(&sweep), 0);
    let doc = payload(&sweep);
    let entries = doc["sweep"].as_array().unwrap();
    assert_eq!(entries.len(), 8); // Z1..Z6, Z2xZ2, S3
    for entry in entries {
        assert!(entry["g_xx_invariant_at"].is_array());
        assert!(entry["unions_stay_invariant"].is_boolean());
    }
}

#[test]
fn distributive_command_and_its_violation_path() {
    let dir = tempfile::tempdir().unwrap();
    let conj = write_fixture(dir.path(), "z4", &["gen", "conj", "--group", "Z4"]);
    let output = run(&["distributive", conj.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let doc = payload(&output);
    assert_eq!(doc["distributive"], true);
    assert_eq!(doc["diagonal_invariance"]["violations"], serde_json::json!([]));

    // An embedded non-transitive permutation action is a valid binary
    // action but not distributive: hunt one by corrupting nothing and
    // using the natural S3 action instead.
    let natural = write_fixture(
        dir.path(),
        "nat",
        &["gen", "embed", "--group", "S3", "--action", "natural"],
    );
    let output = run(&["distributive", natural.to_str().unwrap()]);
    let doc = payload(&output);
    if doc["distributive"] == serde_json::json!(false) {
        assert_eq!(exit_code(&output), 1);
        for key in ["g", "h", "x", "x1", "x2"] {
            assert!(doc["witness"][key].is_u64(), "missing {key}");
        }
    } else {
        assert_eq!(exit_code(&output), 0);
    }
}

#[test]
fn numeric_commands_respect_the_exit_contract() {
    let pass = run(&["numeric", "axioms", "--dim", "3", "--samples", "500"]);
    assert_eq!(exit_code(&pass), 0);
    let doc = payload(&pass);
    assert_eq!(doc["checks"], 1000);
    assert_eq!(doc["seed"], 42);
    assert!(doc["failures"].as_array().unwrap().is_empty());

    let fail = run(&["numeric", "axioms", "--dim", "3", "--samples", "200", "--tol", "1e-30"]);
    assert_eq!(exit_code(&fail), 1);
    assert!(!payload(&fail)["failures"].as_array().unwrap().is_empty());

    let bad_tol = run(&["numeric", "axioms", "--tol", "0"]);
    assert_eq!(exit_code(&bad_tol), 2);

    let singleton = run(&["numeric", "singleton", "--dim", "2"]);
    assert_eq!(exit_code(&singleton), 0);
    assert_eq!(payload(&singleton)["tol"], 1e-12);

    let equivariance = run(&["numeric", "equivariance", "--dim", "3"]);
    assert_eq!(exit_code(&equivariance), 0);

    let pinned_base = run(&["numeric", "equivariance", "--dim", "2", "--base", "0.5,-0.25"]);
    assert_eq!(exit_code(&pinned_base), 0);

    let bad_base = run(&["numeric", "equivariance", "--dim", "2", "--base", "0.5"]);
    assert_eq!(exit_code(&bad_base), 2);
}

#[test]
fn union_demo_finds_witnesses_and_rejects_equal_points() {
    let output = run(&["numeric", "union-demo", "--dim", "1"]);
    assert_eq!(exit_code(&output), 0);
    let doc = payload(&output);
    assert!(doc["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["point"] == serde_json::json!([2.0])));

    let planar = run(&["numeric", "union-demo", "--dim", "2", "--x", "1,1", "--y", "0,1"]);
    assert_eq!(exit_code(&planar), 0);

    let degenerate = run(&["numeric", "union-demo", "--dim", "2", "--x", "1,1", "--y", "1,1"]);
    assert_eq!(exit_code(&degenerate), 2);
}

#[test]
fn quiet_suppresses_the_summary_but_not_the_payload() {
    let loud = run(&["enumerate", "--n", "2"]);
    assert!(!loud.stderr.is_empty());
    let quiet = run(&["enumerate", "--n", "2", "--quiet"]);
    assert!(quiet.stderr.is_empty());
    assert_eq!(loud.stdout, quiet.stdout);
}

#[test]
fn bad_flags_exit_two() {
    let output = run(&["enumerate"]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&["no-such-command"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["enumerate", "--n", "3", "--list"],
        vec!["cayley", "--n", "2"],
        vec!["gen", "conj", "--group", "S3"],
        vec!["numeric", "axioms", "--dim", "2", "--samples", "300", "--seed", "7"],
        vec!["numeric", "equivariance", "--dim", "3", "--seed", "9"],
        vec!["invariants", "--sweep"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(exit_code(&first), exit_code(&second));
    }
}
