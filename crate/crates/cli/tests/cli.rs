use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ifkp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifkp"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn inverse_table1() {
    let out = ifkp(&[
        "inverse",
        "--norm",
        "l1",
        "--mode",
        "refined",
        &fixture("table1.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["objective"], "5/2");
    assert_eq!(doc["mods"]["u"], serde_json::json!([0, 3, 0, 0, 0]));
    assert_eq!(doc["mods"]["v"], serde_json::json!([0, 0, 0, 0, 1]));
    assert_eq!(doc["certificate"]["optimal"], true);
}

#[test]
fn modified_echo_is_optimal() {
    // feed the echoed instance back through `check`
    let dir = tempfile::tempdir().unwrap();
    for (norm, file) in [("l1", "table1.json"), ("linf", "deficit.json")] {
        let doc = json(&ifkp(&["inverse", "--norm", norm, &fixture(file)]));
        let m = &doc["modified"];
        let echo = serde_json::json!({"b": m["b"], "x_star": m["x_star"], "items": m["items"]});
        let path: PathBuf = dir.path().join(format!("{norm}.json"));
        std::fs::write(&path, echo.to_string()).unwrap();
        let check = ifkp(&["check", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0));
        assert_eq!(json(&check)["optimal"], true, "{norm}");
    }
}

#[test]
fn oracle_agrees_on_fixtures() {
    let doc = json(&ifkp(&["oracle", "--norm", "l1", &fixture("table1.json")]));
    assert_eq!(doc["objective"], "5/2");
    let fast = json(&ifkp(&[
        "inverse",
        "--norm",
        "linf",
        &fixture("deficit.json"),
    ]));
    let slow = json(&ifkp(&[
        "oracle",
        "--norm",
        "linf",
        &fixture("deficit.json"),
    ]));
    assert_eq!(fast["objective"], "1");
    assert_eq!(slow["objective"], "1");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| ifkp(args).status.code();
    assert_eq!(
        code(&["inverse", "--norm", "l1", &fixture("infeasible.json")]),
        Some(2)
    );
    assert_eq!(
        code(&["oracle", "--norm", "l1", &fixture("infeasible.json")]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "oracle",
            "--norm",
            "linf",
            "--max-space",
            "10",
            &fixture("table1.json")
        ]),
        Some(4)
    );
    assert_eq!(
        code(&["inverse", "--norm", "l2", &fixture("table1.json")]),
        Some(3)
    );
    assert_eq!(code(&["solve", "/nonexistent/file.json"]), Some(3));
    assert_eq!(code(&["frobnicate"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"b": 1, "x_star": [1], "items": [{"p": 1, "c": 1, "color": 3}]}"#,
    )
    .unwrap();
    let out = ifkp(&["inverse", "--norm", "l1", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn solve_and_check() {
    let doc = json(&ifkp(&["solve", &fixture("table1.json")]));
    assert_eq!(doc["objective"], "29");
    let doc = json(&ifkp(&["check", &fixture("table1.json")]));
    assert_eq!(doc["verdict"], "RatioViolation");
    assert_eq!(doc["witness"], serde_json::json!([1, 4]));
}

#[test]
fn gen_commands_write_valid_files() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json");
    let out = ifkp(&[
        "gen",
        "random",
        "--n",
        "4",
        "--seed",
        "9",
        "--case",
        "surplus",
        "--cost-bounds",
        "-o",
        r.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(&r).unwrap();
    ifkp(&[
        "gen",
        "random",
        "--n",
        "4",
        "--seed",
        "9",
        "--case",
        "surplus",
        "--cost-bounds",
        "-o",
        r.to_str().unwrap(),
    ]);
    assert_eq!(first, std::fs::read_to_string(&r).unwrap());
    assert!(ifkp(&["inverse", "--norm", "linf", r.to_str().unwrap()])
        .status
        .code()
        .is_some_and(|c| c == 0 || c == 2));

    let g = dir.path().join("g.json");
    let doc = json(&ifkp(&[
        "gen",
        "partition",
        "--values",
        "1,1,2",
        "-o",
        g.to_str().unwrap(),
    ]));
    assert_eq!(doc["decision_budget"], "14");
    let inv = ifkp_core::io::read_instance(&g).unwrap();
    assert_eq!(inv.base.budget, 6);
    assert_eq!(
        ifkp(&[
            "gen",
            "partition",
            "--values",
            "1,1,1",
            "-o",
            g.to_str().unwrap()
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn bench_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let out = ifkp(&[
        "bench",
        "--n",
        "20,40",
        "--norm",
        "l1",
        "--mode",
        "paper,refined",
        "--seed",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,norm,mode,seed,objective,elapsed_ns");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("20,l1,paper,3,"));
    assert!(lines[4].starts_with("40,l1,refined,3,"));

    let empty = dir.path().join("e.csv");
    assert_eq!(
        ifkp(&["bench", "--out", empty.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        std::fs::read_to_string(&empty).unwrap(),
        "n,norm,mode,seed,objective,elapsed_ns\n"
    );
}
