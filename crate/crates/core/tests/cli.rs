use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-poisson"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toric-poisson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn dims(json: &serde_json::Value) -> Vec<serde_json::Value> {
    json["H"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dim"].clone())
        .collect()
}

#[test]
fn cp2_both_agrees() {
    let o = run(&[
        "--space", "cpn", "--dim", "2", "--mode", "both", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(dims(&v["closed"]), vec![1, 2, 4]);
    assert_eq!(dims(&v["oracle"]), vec![1, 2, 4]);
    assert_eq!(v["diff"], serde_json::json!([]));
}

#[test]
fn cp3_basis_table() {
    let o = run(&["--space", "cpn", "--dim", "3", "--basis"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("basis H^3 (11 elements):"));
    assert!(text.contains("(-1,-1,-1,3):1"));
    assert!(text.contains("z0^3 z1^-1 z2^-1 z3^-1 · v1^v2^v3"));
}

#[test]
fn c2_both_with_bound() {
    let o = run(&[
        "--space",
        "cn",
        "--dim",
        "2",
        "--poisson",
        "std",
        "--mode",
        "both",
        "--degree-bound",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(dims(&v["closed"]), vec![1, 2, 2]);
}

#[test]
fn affine_zero_without_bound_is_a_usage_error() {
    let o = run(&["--space", "cn", "--dim", "2", "--poisson", "zero"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--degree-bound"));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["--space", "cpn", "--dim", "2", "--frobnicate"],
        vec!["--space", "cpn", "--dim", "0"],
        vec![
            "--space",
            "cpn",
            "--dim",
            "2",
            "--poisson",
            "[{\"i\":1,\"j\":1,\"a\":\"1\"}]",
        ],
        vec![
            "--space",
            "cpn",
            "--dim",
            "2",
            "--poisson",
            "[{\"i\":1,\"j\":2,\"a\":\"x\"}]",
        ],
        vec![
            "--space",
            "cpn",
            "--dim",
            "2",
            "--poisson",
            "@/nonexistent/pi.json",
        ],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn poisson_from_file() {
    let path = scratch("pi.json");
    std::fs::write(&path, r#"[{"i":1,"j":2,"a":"1-i"}]"#).unwrap();
    let arg = format!("@{}", path.display());
    let o = run(&[
        "--space",
        "cpn",
        "--dim",
        "2",
        "--poisson",
        &arg,
        "--mode",
        "both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a12=1-i"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--space",
        "cpn",
        "--dim",
        "3",
        "--poisson",
        "random",
        "--seed",
        "5",
        "--mode",
        "both",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_report_round_trip() {
    for (name, args) in [
        (
            "closed.json",
            vec![
                "--space", "cpn", "--dim", "3", "--basis", "--format", "json",
            ],
        ),
        (
            "oracle.json",
            vec![
                "--space", "cpn", "--dim", "2", "--mode", "oracle", "--format", "json",
            ],
        ),
        (
            "affine.json",
            vec![
                "--space",
                "cn",
                "--dim",
                "2",
                "--poisson",
                "zero",
                "--degree-bound",
                "2",
                "--format",
                "json",
            ],
        ),
    ] {
        let first = run(&args);
        assert_eq!(first.status.code(), Some(0));
        let path = scratch(name);
        std::fs::write(&path, &first.stdout).unwrap();
        let again = run(&["--verify-report", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0), "{name}");
        assert_eq!(again.stdout, first.stdout, "{name}");
    }
}

#[test]
fn tampered_report_is_a_disagreement() {
    let first = run(&["--space", "cpn", "--dim", "2", "--format", "json"]);
    let text = stdout(&first).replacen("\"dim\": 4", "\"dim\": 5", 1);
    let path = scratch("tampered.json");
    std::fs::write(&path, text).unwrap();
    assert_eq!(
        run(&["--verify-report", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
