//! End-to-end runs of the `pdvp` binary. JSON outputs are compared with the
//! files in `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pdvp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdvp")).args(args).env_remove("PDVP_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let out = pdvp(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let got = stdout(&out);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1") {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name}");
    let value: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert!(value.is_object());
}

#[test]
fn match_json() {
    golden(
        "match_worked_example.json",
        &["match", "--pattern", "12|{1},{3,4},{1,2,3}|(1,2,E)|E,P", "--perm", "2,3,1,5,4", "--format", "json"],
    );
}

#[test]
fn dist_json() {
    golden("dist_21_s4.json", &["dist", "--pattern", "gp:2-1", "--perm-n", "4", "--format", "json"]);
}

#[test]
fn gf_dp_json() {
    golden(
        "gf_dp_t_statistic.json",
        &["gf", "--pattern", "12|P,{1},P|(1,2,{2})|P,P", "--alphabet", "3", "--dp", "--max-n", "4", "--format", "json"],
    );
}

#[test]
fn gf_solve_json() {
    golden(
        "gf_solve_t_statistic.json",
        &["gf", "--pattern", "12|P,{1},P|(1,2,{2})|P,P", "--alphabet", "3", "--solve", "--format", "json"],
    );
}

#[test]
fn problem_json() {
    golden("problem2.json", &["problem", "--which", "2", "--max-size", "6", "--format", "json"]);
}

#[test]
fn tables_have_n_and_entries() {
    for args in [
        &["dist", "--pattern", "12|P,{1},P|(1,2,{2})|P,P", "--word-n", "3", "--alphabet", "3", "--format", "json"][..],
        &["gf", "--pattern", "12|P,{2},P|(1,2,{2})|P,P", "--alphabet", "3", "--dp", "--format", "json"],
        &["match", "--pattern", "gp:1-2", "--perm", "1 2 3", "--format", "json"],
    ] {
        let out = pdvp(args);
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v.get("n").is_some() && v.get("entries").is_some(), "{args:?}");
    }
}

#[test]
fn worked_example_text() {
    let out = pdvp(&["match", "--pattern", "12|{1},{3,4},{1,2,3}|(1,2,E)|E,P", "--perm", "2 3 1 5 4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(1,5) (2,4)\n");
}

#[test]
fn parse_error_exit_code() {
    let out = pdvp(&["match", "--pattern", "12|P|P", "--perm", "1 2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 5"), "{err}");
    assert!(err.contains("^"));
}

#[test]
fn verify_d3_prints_series() {
    let out = pdvp(&["verify", "--check", "d3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("PASS d3"));
    assert!(text.contains("1,3,8,20,49,119,288"));
}

#[test]
fn verify_failure_exit_code() {
    let out = pdvp(&["verify", "--check", "d4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL d4"));
}

#[test]
fn avoid_from_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pats.txt");
    std::fs::write(&file, "# the two unit-distance patterns\n12|P,{1},P|(1,2,{1})|P,P\n\n12|P,{2},P|(1,2,{2})|P,P\n").unwrap();
    let out = pdvp(&["avoid", "--patterns", file.to_str().unwrap(), "--word-n", "5", "--alphabet", "3"]);
    assert_eq!(stdout(&out), "46\n");
    let out = pdvp(&["avoid", "--pattern", "gp:1-2-3", "--perm-n", "5"]);
    assert_eq!(stdout(&out), "42\n");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("result.txt");
    let out = pdvp(&["avoid", "--pattern", "gp:12", "--perm-n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "1\n");
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pdvp"))
        .args(["dist", "--pattern", "gp:1-2", "--perm-n", "5"])
        .env("PDVP_BUDGET", "perm=4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_pdvp"))
        .args(["dist", "--pattern", "gp:1-2", "--perm-n", "3"])
        .env("PDVP_BUDGET", "bogus")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn problem_text_report() {
    let out = pdvp(&["problem", "--which", "3", "--max-size", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("offset: A(n) = B(n+1)"));
}
