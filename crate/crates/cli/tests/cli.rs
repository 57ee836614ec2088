use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_recourse-lab"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("recourse-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn dh_run_passes_and_report_verifies() {
    let report = scratch("fan.json");
    let out = run(&[
        "run",
        "--algo",
        "dh",
        "--family",
        "triangle-fan",
        "--k",
        "3",
        "-o",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"ratio\": \"3/2\""), "{text}");
    let again = run(&["verify", report.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn broken_fixture_exits_one() {
    let out = run(&[
        "run",
        "--algo",
        "greedy",
        "--problem",
        "is",
        "--t",
        "2",
        "--family",
        "bipartite-is",
        "--switches",
        "2",
        "--budget",
        "30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL  ratio"));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(
        run(&["run", "--algo", "tas", "--family", "path"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["run", "--algo", "tas", "--t", "1", "--family", "path"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["run", "--algo", "dh", "--input", "/nonexistent/stream.jsonl"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["run", "--algo", "bogus"]).status.code(), Some(2));
    let bad = scratch("bad.jsonl");
    std::fs::write(&bad, "{\"v\":0,\"adj\":[3]}\n").unwrap();
    assert_eq!(
        run(&["run", "--algo", "dh", "--input", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oracle_cap_env_is_validated() {
    let out = bin()
        .args(["run", "--algo", "tas", "--t", "2", "--family", "random", "--n", "8"])
        .env("RECOURSE_LAB_ORACLE_CAP", "999")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_then_run_from_file() {
    let stream = scratch("random.jsonl");
    let out = run(&[
        "gen",
        "--family",
        "random",
        "--arrival",
        "vertex",
        "--n",
        "12",
        "--p",
        "0.3",
        "--seed",
        "7",
        "-o",
        stream.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(&stream).unwrap();
    assert_eq!(first.lines().count(), 12);
    run(&[
        "gen",
        "--family",
        "random",
        "--arrival",
        "vertex",
        "--n",
        "12",
        "--p",
        "0.3",
        "--seed",
        "7",
        "-o",
        stream.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&stream).unwrap(), first);
    let out = run(&[
        "run",
        "--algo",
        "tas",
        "--problem",
        "vc",
        "--t",
        "3/2",
        "--input",
        stream.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_writes_csv_rows_in_order() {
    let out = run(&["sweep", "--algo", "lgreedy", "--family", "path", "--ns", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let amortized: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(9).unwrap()).collect();
    assert_eq!(amortized, vec!["2/3", "6/5", "12/7"]);
}

#[test]
fn sweep_over_t_and_seeds() {
    let out = run(&[
        "sweep",
        "--algo",
        "tas",
        "--problem",
        "is",
        "--ts",
        "1.25,2.598",
        "--family",
        "random",
        "--n",
        "14",
        "--seeds",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 11);
}
