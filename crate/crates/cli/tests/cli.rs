//! Golden-file tests for every subcommand: exact stdout, exit codes, and
//! machine formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sympair"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn enumerate_text_golden() {
    let out = run(&["enumerate", "--n", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[(2,+)]\n[(2,-)]\n[(1,+),(1,-)]\n");
}

#[test]
fn enumerate_json_has_ten_orbits_at_n2() {
    let out = run(&["enumerate", "--n", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let orbits = parsed.as_array().unwrap();
    assert_eq!(orbits.len(), 10);
    assert_eq!(orbits[0], serde_json::json!([[4, 1]]));
    assert_eq!(orbits[9], serde_json::json!([[1, 1], [1, 1], [1, -1], [1, -1]]));
}

#[test]
fn enumerate_csv_quotes_orbits() {
    let out = run(&["enumerate", "--n", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "orbit\n\"[(2,+)]\"\n\"[(2,-)]\"\n\"[(1,+),(1,-)]\"\n");
}

#[test]
fn enumerate_rejects_n_zero() {
    let out = run(&["enumerate", "--n", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_text_golden_n1() {
    let out = run(&["verify", "--n", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n=1 orbit=[(2,+)] T=-2 trace=0 oracle=0 passed=true\n\
         n=1 orbit=[(2,-)] T=-2 trace=0 oracle=0 passed=true\n\
         n=1 orbit=[(1,+),(1,-)] T=-2 trace=0 oracle=0 passed=true\n"
    );
}

#[test]
fn verify_row_count_and_exit_n2() {
    let out = run(&["verify", "--n", "2", "--oracle"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 13);
    assert!(stdout(&out).lines().all(|l| l.ends_with("passed=true")));
}

#[test]
fn verify_n6_passes() {
    let out = run(&["verify", "--n", "6"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_no_oracle_leaves_column_empty() {
    let out = run(&["verify", "--n", "1", "--no-oracle"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().all(|l| l.contains("oracle=-")));
}

#[test]
fn verify_oracle_bound_flag_and_env() {
    let out = run(&["verify", "--n", "2", "--max-oracle-n", "1"]);
    let text = stdout(&out);
    assert!(text.lines().take(3).all(|l| !l.contains("oracle=-")));
    assert!(text.lines().skip(3).all(|l| l.contains("oracle=-")));

    let out = bin()
        .args(["verify", "--n", "1"])
        .env("SYMPAIR_MAX_ORACLE_N", "0")
        .output()
        .unwrap();
    assert!(stdout(&out).lines().all(|l| l.contains("oracle=-")));
}

#[test]
fn verify_json_is_parseable_and_exact() {
    let out = run(&["verify", "--n", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 13);
    assert_eq!(rows[0]["n"], 1);
    assert_eq!(rows[0]["t"], "-2");
    assert_eq!(rows[0]["trace_value"], "0");
    assert_eq!(rows[0]["oracle_trace"], "0");
    assert_eq!(rows[0]["passed"], true);
}

#[test]
fn verify_csv_header() {
    let out = run(&["verify", "--n", "1", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,orbit,t,trace_value,oracle_trace,passed"));
    assert_eq!(lines.next(), Some("1,\"[(2,+)]\",-2,0,0,true"));
}

#[test]
fn tensor_goldens() {
    let out = run(&["tensor", "1", "+", "1", "+"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "V(2,+) ⊕ V(0,-)\n");

    let out = run(&["tensor", "0", "-", "5", "+"]);
    assert_eq!(stdout(&out), "V(5,-)\n");

    let out = run(&["tensor", "2", "+", "2", "-"]);
    assert_eq!(stdout(&out), "V(4,-) ⊕ V(2,+) ⊕ V(0,-)\n");
}

#[test]
fn tensor_rejects_negative_weight() {
    let out = run(&["tensor", "-1", "+", "1", "+"]);
    assert_eq!(code(&out), 2);
    let out = run(&["tensor", "1", "x", "1", "+"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn descend_identity_is_linear_pair() {
    let out = run(&["descend", fixture("identity4.txt").to_str().unwrap(), "--eps", "2,2"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        parsed,
        serde_json::json!([{"tag": "linear", "plus_dim": 2, "minus_dim": 2}])
    );
}

#[test]
fn descend_swapped_eigenlines_is_diagonal_pair() {
    let out = run(&["descend", fixture("swap_pair.txt").to_str().unwrap(), "--eps", "1,1"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        parsed,
        serde_json::json!([{"tag": "diagonal", "ext_degree": 1, "size": 1}])
    );
}

#[test]
fn descend_rotation_is_galois_pair() {
    let out = run(&["descend", fixture("rotation.txt").to_str().unwrap(), "--eps", "1,1"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        parsed,
        serde_json::json!([{
            "tag": "galois",
            "e_degree": 2,
            "l_degree": 1,
            "size": 1,
            "l_min_poly": "0,1",
        }])
    );
}

#[test]
fn descend_degree_six_requires_factors() {
    let out = run(&["descend", fixture("deg6.txt").to_str().unwrap(), "--eps", "3,3"]);
    assert_eq!(code(&out), 5);
    assert_eq!(stdout(&out), "residual: 1,0,-1,-8,-1,0,1\n");
}

#[test]
fn descend_degree_six_with_factors_classifies() {
    let out = run(&[
        "descend",
        fixture("deg6.txt").to_str().unwrap(),
        "--eps",
        "3,3",
        "--factors",
        fixture("deg6_factors.txt").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        parsed,
        serde_json::json!([{
            "tag": "galois",
            "e_degree": 6,
            "l_degree": 3,
            "size": 1,
            "l_min_poly": "-8,-4,0,1",
        }])
    );
}

#[test]
fn descend_error_exit_codes() {
    let out = run(&["descend", fixture("notsigma.txt").to_str().unwrap(), "--eps", "1,1"]);
    assert_eq!(code(&out), 3);

    let out = run(&["descend", fixture("jordan.txt").to_str().unwrap(), "--eps", "1,1"]);
    assert_eq!(code(&out), 4);

    let out = run(&["descend", fixture("singular.txt").to_str().unwrap(), "--eps", "1,1"]);
    assert_eq!(code(&out), 2);

    // Size mismatch between the matrix and ε.
    let out = run(&["descend", fixture("identity4.txt").to_str().unwrap(), "--eps", "1,1"]);
    assert_eq!(code(&out), 2);

    let out = run(&["descend", "/nonexistent/matrix.txt", "--eps", "1,1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn report_csv_golden() {
    let out = run(&["report", "--max-n", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n,orbit_count,max_t,all_passed\n1,3,-2,true\n2,10,-4,true\n"
    );
}

#[test]
fn report_text_and_json() {
    let out = run(&["report", "--max-n", "1"]);
    assert_eq!(stdout(&out), "n=1 orbits=3 max_t=-2 all_passed=true\n");

    let out = run(&["report", "--max-n", "4", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    // Orbit counts are nondecreasing in n.
    let counts: Vec<u64> = rows.iter().map(|r| r["orbit_count"].as_u64().unwrap()).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    assert!(rows.iter().all(|r| r["all_passed"] == true));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["report", "--max-n", "0"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["descend", fixture("rotation.txt").to_str().unwrap(), "--eps", "nonsense"])), 2);
}
