use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chern-gap"))
        .args(args)
        .env_remove("CHERN_GAP_LOG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--no-cache"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

#[test]
fn lemma1_report() {
    let (code, v) = json(&[
        "verify",
        "lemma1",
        "--p",
        "5",
        "--n",
        "4",
        "--epsilon",
        "1",
        "--m-max",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 5);
    assert_eq!(v["parameters"]["max_degree"], 28);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn gap_report() {
    let (code, v) = json(&["verify", "gap", "--p", "5", "--n", "4", "--epsilon", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["witnesses"]["gap_degree"], 12);
    let hit: Vec<u64> = serde_json::from_value(v["witnesses"]["hit_degrees"].clone()).unwrap();
    assert_eq!(hit, vec![0, 8, 10, 16, 18, 20, 24, 26, 28]);
    assert_eq!(v["witnesses"]["res_cor_witness"]["signed"], "-β′⁶");
}

#[test]
fn lemma4_report() {
    let out = run(&[
        "verify",
        "lemma4",
        "--p",
        "5",
        "--n",
        "4",
        "--epsilon",
        "1",
        "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4·β′⁶ mod I"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "gap", "--p", "4"][..],
        &["verify", "gap", "--p", "2"],
        &["verify", "gap", "--n", "3"],
        &["verify", "gap", "--epsilon", "0"],
        &["verify", "lemma1", "--max-degree", "13"],
        &["verify", "lemma1", "--max-degree", "12"],
        &[
            "fgl",
            "show",
            "--k",
            "1",
            "--max-degree",
            "60",
            "--no-cache",
        ],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let err = String::from_utf8(run(&["info", "--p", "3"]).stderr).unwrap();
    assert!(err.contains("p must be >= 5"), "{err}");
}

#[test]
fn residue_epsilon_warns_and_runs() {
    let out = run(&["verify", "gap", "--epsilon", "4", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("isomorphic"));
    let out = run(&["info", "--epsilon", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
}

#[test]
fn corrupted_expectation_exits_1() {
    for args in [
        &["verify", "lemma1", "--corrupt-expectation", "--no-cache"][..],
        &["verify", "gap", "--corrupt-expectation", "--no-cache"],
        &["verify", "lemma4", "--corrupt-expectation", "--no-cache"],
        &["sweep", "--p", "5", "--corrupt-expectation", "--no-cache"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn outputs_are_reproducible() {
    for args in [
        &["sweep", "--format", "json", "--no-cache"][..],
        &["sweep", "--no-cache"],
        &["fgl", "show", "--p", "7", "--format", "json", "--no-cache"],
        &["info", "--p", "7", "--n", "5", "--format", "json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn orientation_flag() {
    let (code, v) = json(&[
        "verify",
        "lemma1",
        "--p",
        "7",
        "--epsilon",
        "3",
        "--orientation",
        "minus",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["parameters"]["orientation"], "minus");
}

#[test]
fn fgl_show_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = run(&[
        "fgl",
        "show",
        "--format",
        "json",
        "--cache-dir",
        cache,
        "--m",
        "2,5,25",
    ]);
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.path().join("fgl-p5-d8-k2.json").exists());
    let second = run(&[
        "fgl",
        "show",
        "--format",
        "json",
        "--cache-dir",
        cache,
        "--m",
        "2,5,25",
    ]);
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["law"].as_str().unwrap().split(" + ").next(), Some("x"));
    assert_eq!(v["multiples"][1]["series"], "5·x - 624·v1·x⁵");
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "lemma4", "--help"]).status.code(), Some(0));
}
