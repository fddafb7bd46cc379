use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn crlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crlab"))
        .args(args)
        .env_remove("CRLAB_PRIME")
        .env_remove("CRLAB_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_analyze_vk() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("v.json");
    let out = crlab(&[
        "construct",
        "--family",
        "vk",
        "--n",
        "5",
        "--k",
        "2",
        "--l",
        "1",
        "-o",
        path(&file),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = crlab(&["analyze", path(&file), "--trials", "32", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["results"];
    assert_eq!(r["bound"]["dim"], 13);
    assert_eq!(r["bound"]["bound"], 13);
    assert_eq!(r["bound"]["status"], "PASS");
    assert_eq!(r["trials"], 32);
    assert_eq!(r["seed"], 7);
}

#[test]
fn search_n3_k1() {
    let out = crlab(&["search", "--n", "3", "--k", "1", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["results"];
    assert_eq!(r["max_dim"], 5);
    assert_eq!(r["bound"], 5);
    let three = crlab(&[
        "search",
        "--n",
        "3",
        "--k",
        "1",
        "--seed",
        "1",
        "--rules",
        "three-case",
        "--jobs",
        "2",
    ]);
    assert_eq!(stdout_json(&three)["results"]["argmax"], r["argmax"]);
}

#[test]
fn triangularize_inconsistent_pair() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("e.json");
    std::fs::write(
        &file,
        r#"{"ambient":2,"field":"Q","basis":[[["0","1"],["0","0"]],[["0","0"],["1","0"]]]}"#,
    )
    .unwrap();
    let out = crlab(&["triangularize", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let r = &stdout_json(&out)["results"];
    assert_eq!(r["status"], "INCONSISTENT");
    assert_eq!(r["rank"], 2);
    assert!(r["witness"]["a"].is_array());
}

#[test]
fn triangularize_lower_borel_gives_swap() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.json");
    std::fs::write(
        &file,
        r#"{"ambient":2,"field":"Q","basis":[[["0","0"],["1","0"]],[["1","0"],["0","-1"]]]}"#,
    )
    .unwrap();
    let out = crlab(&["triangularize", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["results"];
    assert_eq!(r["p"], serde_json::json!([["0", "1"], ["1", "0"]]));
}

#[test]
fn construct_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    let out = crlab(&[
        "construct",
        "--family",
        "vk-t",
        "--n",
        "4",
        "--k",
        "1",
        "-o",
        path(&file),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(&file).unwrap();
    let mut parsed: Value = serde_json::from_str(&first).unwrap();
    // reversing the basis must not change the canonical form
    parsed["basis"].as_array_mut().unwrap().reverse();
    let shuffled = dir.path().join("r.json");
    std::fs::write(&shuffled, parsed.to_string()).unwrap();
    let a = crlab(&["verify-structure", path(&file), "--seed", "3"]);
    let b = crlab(&["verify-structure", path(&shuffled), "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_json(&a)["results"], stdout_json(&b)["results"]);
    assert_eq!(stdout_json(&a)["results"]["status"], "MATCHES_VK_TRANSPOSE");
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    crlab(&[
        "construct",
        "--family",
        "thm2-lastrow",
        "--n",
        "4",
        "-o",
        path(&file),
    ]);
    let a = crlab(&["analyze", path(&file), "--seed", "11", "--k", "3"]);
    let b = crlab(&["analyze", path(&file), "--seed", "11", "--k", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = &stdout_json(&a)["results"];
    assert_eq!(r["rank_condition"]["verdict"], "PROBABLE_YES");
    assert!(stdout_json(&a).get("wall_time_s").is_none());
    let timed = crlab(&["--timing", "analyze", path(&file), "--seed", "11"]);
    assert!(stdout_json(&timed)["wall_time_s"].is_number());
}

#[test]
fn every_family_analyzes() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--family", "schur", "--n", "4"],
        &["--family", "vk", "--n", "4", "--k", "1"],
        &["--family", "vk-t", "--n", "4", "--k", "2"],
        &["--family", "thm2-lastrow", "--n", "3"],
        &["--family", "thm2-firstcol", "--n", "3"],
        &["--family", "rank1max", "--n", "4"],
        &["--family", "rank1max", "--n", "4", "--variant", "nilrank2"],
        &[
            "--family", "flanders", "--n", "3", "--cols", "5", "--k", "2",
        ],
        &[
            "--family",
            "exceptional",
            "--n",
            "5",
            "--k",
            "2",
            "--variant",
            "nilrank1_plus_C",
        ],
    ];
    for (i, case) in cases.iter().enumerate() {
        let file = dir.path().join(format!("f{i}.json"));
        let mut args = vec!["construct"];
        args.extend_from_slice(case);
        args.extend_from_slice(&["-o", path(&file)]);
        assert_eq!(crlab(&args).status.code(), Some(0), "{case:?}");
        let out = crlab(&["analyze", path(&file)]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{case:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"ambient":2,"field":"Q","basis":[[["1/0","0"],["0","0"]]]}"#,
    )
    .unwrap();
    for args in [
        vec!["analyze", path(&bad)],
        vec!["analyze", "/nonexistent/file.json"],
        vec!["search", "--n", "3"],
        vec!["construct", "--family", "nope", "--n", "3", "-o", "x.json"],
    ] {
        let out = crlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
        assert!(err["error"]["message"].is_string());
    }
}

#[test]
fn search_guard_is_enforced() {
    let out = crlab(&["search", "--n", "9", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = crlab(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["results"]["status"], "PASS");
}
