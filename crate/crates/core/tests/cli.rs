use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../programs")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn elemloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elemloop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn analyze_json_is_stable_across_runs() {
    let f = fixture("conjunctive_triangle.lp");
    let first = elemloop(&["analyze", &f]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, elemloop(&["analyze", &f]).stdout);
    let v = json(&first);
    assert_eq!(v["stable_models"], serde_json::json!([["p"]]));
    assert_eq!(v["loops"].as_array().unwrap().len(), 7);
    assert_eq!(v["elementary_loops"].as_array().unwrap().len(), 6);
    assert_eq!(v["classification"]["tight"], false);
    assert_eq!(
        v["classification"]["witnesses"]["tight"],
        serde_json::json!(["p", "r"])
    );
    assert!(v["models"][0].get("baseline_maximal_loops").is_none());
}

#[test]
fn analyze_options() {
    let f = fixture("layered.lp");
    let v = json(&elemloop(&["analyze", &f, "--baseline"]));
    let m = v["models"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["model"] == serde_json::json!(["p", "q", "r", "s", "t", "u"]))
        .unwrap();
    assert_eq!(
        m["bounding_loops"][0]["atoms"],
        serde_json::json!(["p", "q", "r"])
    );
    assert_eq!(
        m["baseline_maximal_loops"],
        serde_json::json!([["s", "t"], ["p", "q", "r"]])
    );

    let hef = json(&elemloop(&[
        "analyze",
        &fixture("choice_triangle.lp"),
        "--assume-hef",
    ]));
    let plain = json(&elemloop(&["analyze", &fixture("choice_triangle.lp")]));
    assert_eq!(hef["elementary_loops"], plain["elementary_loops"]);

    let text = elemloop(&["analyze", &f, "--format", "text"]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).contains("head-elementary-loop-free"));
}

#[test]
fn check_model_exit_codes() {
    let f = fixture("conjunctive_triangle.lp");
    let stable = elemloop(&["check-model", &f, "--model", "p"]);
    assert_eq!(code(&stable), 0);
    let v = json(&stable);
    assert_eq!(v["stable"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 7);

    let unstable = elemloop(&["check-model", &f, "--model", "p,q,r", "--criterion", "c"]);
    assert_eq!(code(&unstable), 3);
    assert_eq!(
        json(&unstable)["criteria"][0]["witness"],
        serde_json::json!(["q", "r"])
    );

    assert_eq!(code(&elemloop(&["check-model", &f, "--model", "q"])), 5);
    assert_eq!(code(&elemloop(&["check-model", &f, "--model", "p,zz"])), 5);
    let empty = elemloop(&["check-model", &fixture("rotating_choice.lp"), "--model", ""]);
    assert_eq!(code(&empty), 0);
}

#[test]
fn syntax_errors_and_missing_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.lp", "p :- q\n");
    let o = elemloop(&["analyze", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.lp"));
    assert_eq!(
        code(&elemloop(&[
            "shift",
            &dir.path().join("missing.lp").display().to_string()
        ])),
        2
    );
}

#[test]
fn guard_exits_1() {
    let dir = TempDir::new().unwrap();
    let text: String = (0..8)
        .map(|i| format!("a{i} :- a{}.\n", (i + 1) % 8))
        .collect();
    let f = write(&dir, "ring.lp", &text);
    assert_eq!(code(&elemloop(&["--max-atoms", "4", "analyze", &f])), 1);
    assert_eq!(code(&elemloop(&["analyze", &f])), 0);
}

#[test]
fn shift_graph_and_formulas() {
    let o = elemloop(&["shift", &fixture("shiftable.lp")]);
    assert_eq!(
        stdout(&o),
        "p :- r, not q.\nq :- r, not p.\nr :- p.\nr :- q.\n"
    );

    let g = elemloop(&[
        "graph",
        &fixture("conjunctive_triangle.lp"),
        "--elementary",
        "p,q,r",
    ]);
    let mut edges: Vec<String> = stdout(&g).lines().map(String::from).collect();
    edges.sort();
    assert_eq!(edges, ["p -> r", "q -> r"]);
    let dot = stdout(&elemloop(&[
        "graph",
        &fixture("conjunctive_triangle.lp"),
        "--dot",
    ]));
    assert!(dot.starts_with("digraph"));

    let f = stdout(&elemloop(&["formulas", &fixture("rotating_choice.lp")]));
    assert!(f.lines().any(|l| l == "p ∧ q ∧ r → ⊥"));
    let el = stdout(&elemloop(&[
        "formulas",
        &fixture("rotating_choice.lp"),
        "--elementary",
    ]));
    assert_eq!(el.lines().count(), 6);
}

#[test]
fn verify_passes_and_catches_an_injected_fault() {
    let ok = elemloop(&["verify", "--count", "40"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).contains("violations 0"));

    let broken = elemloop(&["verify", "--count", "100", "--inject-fault", "shift"]);
    assert_eq!(code(&broken), 4);
    let out = stdout(&broken);
    assert!(
        out.contains("violated: theorem5_shift_equivalence"),
        "{out}"
    );
    assert!(out.contains("minimized counterexample"));
}

#[test]
fn corpus_reports_every_file() {
    let o = elemloop(&["corpus", &fixtures().display().to_string()]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let files: Vec<&str> = lines.iter().map(|l| l["file"].as_str().unwrap()).collect();
    let mut sorted = files.clone();
    sorted.sort();
    assert_eq!(files, sorted);
    assert!(files.len() >= 10);
    let layered = lines.iter().find(|l| l["file"] == "layered.lp").unwrap();
    assert_eq!(
        layered["stable_models"],
        serde_json::json!([["v"], ["p", "s", "t", "u"], ["q", "s", "t", "u"]])
    );

    let dir = TempDir::new().unwrap();
    write(&dir, "good.lp", "p.\n");
    write(&dir, "bad.lp", "p :-\n");
    let mixed = elemloop(&["corpus", &dir.path().display().to_string()]);
    assert_eq!(code(&mixed), 2);
    assert_eq!(stdout(&mixed).lines().count(), 2);
}
