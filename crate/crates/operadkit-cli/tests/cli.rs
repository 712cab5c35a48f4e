//! End-to-end runs of the compiled binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use operadkit::algebras::{algebra_to_json, samples};
use operadkit::linalg::{rat_int, SparseRow};

const BIN: &str = env!("CARGO_BIN_EXE_operadkit");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(BIN)
        .args(args)
        .env(key, value)
        .output()
        .expect("spawn")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(input.as_bytes())
        .expect("write");
    child.wait_with_output().expect("wait")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn inverted_series_reaches_the_tenth_coefficient() {
    let out = run(&["series", "sLeib", "--invert", "--terms", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4: 86"), "{text}");
    assert!(text.contains("10: 5150163272"), "{text}");
}

#[test]
fn saturated_dimensions_print_as_a_table() {
    let out = run(&["dims", "sLeib"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1: 1\n2: 2\n3: 2\n4: 6\n5: 24\n");
}

#[test]
fn dual_names_its_catalog_entry() {
    let out = run(&["dual", "sLeib"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("matches catalog entry: ComAdm"));
}

#[test]
fn capped_verification_skips_instead_of_failing() {
    let out = run_env(&["verify-paper"], "OPERADKIT_MAX_ARITY", "4");
    assert!(out.status.success(), "exit: {:?}", out.status);
    let text = stdout(&out);
    assert!(text.contains("SKIP"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn table_checks_split_pass_and_fail_exit_codes() {
    let good = algebra_to_json(&samples::heisenberg());
    let out = run_stdin(&["check", "-", "--type", "Lie"], &good);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));

    let mut broken = samples::heisenberg();
    let spoiled: SparseRow = vec![(0, rat_int(1))];
    broken.set_entry("br", 2, 2, spoiled);
    let out = run_stdin(&["check", "-", "--type", "Lie"], &algebra_to_json(&broken));
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn unknown_names_are_input_errors() {
    let out = run(&["dims", "NoSuchOperad"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no catalog entry"));
}

#[test]
fn emitted_free_algebra_is_valid_json() {
    let out = run(&["free", "sleib", "--gens", "2", "--degree", "3", "--emit"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(value["dim"], 8);
    assert!(value["ops"]["mul"].is_array());
}

#[test]
fn piped_construction_checks_round_trip() {
    let free = run(&["free", "sdiass", "--emit"]);
    assert!(free.status.success());
    let out = run_stdin(
        &["functor", "dialg_to_leibniz", "-", "--check", "sLeib"],
        &stdout(&free),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
}
