use std::io::Write;
use std::process::{Command, Stdio};

use revadd::cli::{run, EXIT_INVALID_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn revadd(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("revadd").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn build(args: &[&str]) -> String {
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    let out = revadd(&full, "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    out.stdout
}

#[test]
fn build_ppkn_then_metrics() {
    let netlist = build(&["ppkn"]);
    let out = revadd(&["metrics", "-"], &netlist);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("quantum cost: 10\n"));
    assert!(out.stdout.contains("logical depth: 4\n"));
    assert!(out.stdout.contains("  T1: G1 cnot 2 0, G2 cnot 2 1\n"));
    assert!(out.stdout.contains("  T2: G3 toffoli 0 1 3\n"));
    assert!(out.stdout.contains("  T3: G4 cnot 2 1, G5 cnot 2 3\n"));
    assert!(out.stdout.contains("  T4: G6 cnot 1 0\n"));
}

#[test]
fn metrics_csv() {
    let netlist = build(&["hng"]);
    let out = revadd(&["metrics", "-", "--csv"], &netlist);
    assert_eq!(
        out.stdout,
        "name,provenance,gates,toffoli,cnot,not,qc,depth\n-,computed,5,2,3,0,13,5\n"
    );
}

#[test]
fn build_rca_then_verify() {
    let netlist = build(&["rca", "--bits", "3"]);
    let out = revadd(&["verify", "-"], &netlist);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("PASS (128/128"));

    let wide = build(&["rca", "--bits", "12"]);
    let out = revadd(&["verify", "-", "--trials", "500"], &wide);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("PASS (500/500"));
}

#[test]
fn verify_full_adders() {
    for name in ["ppkn", "hng"] {
        let out = revadd(&["verify", "-"], &build(&[name]));
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stdout);
        assert!(out.stdout.contains("8/8"));
        assert!(out.stdout.contains("bijective: yes"));
    }
}

#[test]
fn verify_reports_counterexamples_for_mutant() {
    let netlist = build(&["ppkn"]);
    // Drop gate 5, the carry correction.
    let mutant = netlist.replacen("cnot 2 3\n", "", 1);
    let out = revadd(&["verify", "-"], &mutant);
    assert_eq!(out.code, EXIT_VERIFY_FAILED);
    assert_eq!(out.stdout.matches("counterexample:").count(), 4);

    let csv = revadd(&["verify", "-", "--csv"], &mutant);
    assert_eq!(csv.code, EXIT_VERIFY_FAILED);
    assert_eq!(csv.stdout.lines().count(), 5);
}

#[test]
fn simulate_prints_labeled_outputs() {
    let netlist = build(&["ppkn"]);
    let out = revadd(&["simulate", "-", "--input", "1010"], &netlist);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "output: 0011\nSum=0\nA=0\nB=1\nCout=1\n");
}

#[test]
fn simulate_rejects_bad_bitstrings() {
    let netlist = build(&["ppkn"]);
    for bad in ["101", "10100", "10a0"] {
        let out = revadd(&["simulate", "-", "--input", bad], &netlist);
        assert_eq!(out.code, EXIT_USAGE, "{bad}");
        assert!(out.stderr.contains("Usage:"), "{}", out.stderr);
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let out = revadd(&["metrics", "-"], "lines 2\n\ncnot 0 0\n");
    assert_eq!(out.code, EXIT_INVALID_INPUT);
    assert!(out.stderr.contains("<stdin>:3:"), "{}", out.stderr);

    let path = std::env::temp_dir().join(format!("revadd-bad-{}.net", std::process::id()));
    std::fs::write(&path, "lines 2\nfrob 1\n").unwrap();
    let p = path.to_str().unwrap();
    let out = revadd(&["verify", p], "");
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.code, EXIT_INVALID_INPUT);
    assert!(out.stderr.contains(&format!("{p}:2:")), "{}", out.stderr);
}

#[test]
fn verify_without_layout_is_invalid_input() {
    let out = revadd(&["verify", "-"], "lines 2\ncnot 0 1\n");
    assert_eq!(out.code, EXIT_INVALID_INPUT);
}

#[test]
fn usage_errors() {
    assert_eq!(revadd(&[], "").code, EXIT_USAGE);
    assert_eq!(revadd(&["frobnicate"], "").code, EXIT_USAGE);
    let out = revadd(&["build", "rca"], "");
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("--bits"));
    assert_eq!(
        revadd(&["build", "ppkn", "--bits", "2"], "").code,
        EXIT_USAGE
    );
    assert_eq!(
        revadd(&["build", "rca", "--bits", "0"], "").code,
        EXIT_USAGE
    );
    assert_eq!(
        revadd(&["export", "-", "--format", "svg"], "").code,
        EXIT_USAGE
    );
    let help = revadd(&["--help"], "");
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("compare"));
}

#[test]
fn compare_flags_hng_cost() {
    let out = revadd(&["compare"], "");
    assert_eq!(out.code, EXIT_OK);
    assert!(out
        .stdout
        .contains("FLAG HNG qc: computed 13 vs published 12"));
    assert!(out
        .stdout
        .contains("(literature): (12 - 10) / 12 = 16.7% (~17%)"));
    assert!(!out.stdout.contains("FLAG PPKN"));

    let csv = revadd(&["compare", "--csv"], "");
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines[0], "name,provenance,gates,toffoli,cnot,not,qc,depth");
    assert!(lines.contains(&"PPKN,computed,6,1,5,0,10,4"));
    assert!(lines.contains(&"HNG,computed,5,2,3,0,13,5"));
    assert!(lines.contains(&"RCA3,computed,18,3,15,0,30,10"));
    assert!(lines.contains(&"TSG,literature,6,2,,,14,6"));
}

#[test]
fn export_qasm() {
    let out = revadd(
        &["export", "-", "--format", "qasm"],
        &build(&["rca", "--bits", "2"]),
    );
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("OPENQASM 3.0;\n"));
    assert!(out.stdout.contains("qubit[7] q;\n"));
    assert_eq!(out.stdout.matches("ccx ").count(), 2);
}

#[test]
fn build_to_file_and_deterministic_output() {
    let path = std::env::temp_dir().join(format!("revadd-rca-{}.net", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(
        revadd(&["build", "rca", "--bits", "4", "-o", p], "").code,
        EXIT_OK
    );
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, build(&["rca", "--bits", "4"]));
    assert_eq!(
        revadd(&["compare"], "").stdout,
        revadd(&["compare"], "").stdout
    );
}

#[test]
fn binary_pipeline() {
    let exe = env!("CARGO_BIN_EXE_revadd");
    let built = Command::new(exe).args(["build", "ppkn"]).output().unwrap();
    assert!(built.status.success());

    let mut child = Command::new(exe)
        .args(["metrics", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&built.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("logical depth: 4"));
    assert!(text.contains("quantum cost: 10"));

    let bad = Command::new(exe).args(["build", "rca"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
