use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn natave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_natave"))
        .args(args)
        .env_remove("NATAVE_SEGMENT_SIZE")
        .output()
        .expect("run natave")
}

fn record(args: &[&str]) -> Value {
    let out = natave(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "one record per line: {text}");
    serde_json::from_str(&text).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn tree_formats() {
    let r = record(&["tree", "12"]);
    assert_eq!(r["command"], "tree");
    assert_eq!(r["result"]["shape"], "((())())");
    assert_eq!(r["parameters"]["n"], 12);

    let out = natave(&["tree", "12", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "((())())\n");

    let r = record(&["tree", "12", "--unordered"]);
    assert_eq!(r["result"]["shape"], "(()(()))");
    let r = record(&["tree", "192", "--labeled"]);
    assert_eq!(r["result"]["labeled"], "(2(2()3())3())");

    let dot =
        String::from_utf8(natave(&["tree", "6", "--labeled", "--format", "dot"]).stdout).unwrap();
    assert!(dot.starts_with("digraph tree {"));
    assert!(dot.contains("label=\"3\""));

    let csv = String::from_utf8(natave(&["tree", "30", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv, "n,shape,nodes,omega\n30,(()()()),4,3\n");
}

#[test]
fn seq_prefixes() {
    let r = record(&["seq", "--max", "48", "--kind", "planar"]);
    assert_eq!(
        r["result"]["entries"],
        serde_json::json!([1, 2, 4, 6, 12, 16, 18, 30, 36, 48])
    );
    let text = natave(&[
        "seq",
        "--max",
        "48",
        "--kind",
        "unordered",
        "--format",
        "text",
    ])
    .stdout;
    assert_eq!(String::from_utf8(text).unwrap(), "1,2,4,6,12,16,30,36,48\n");
}

#[test]
fn twin_prime_match() {
    let r = record(&["match", "--word", "(()) * (())", "--max", "100"]);
    assert_eq!(r["result"]["count"], 8);
    assert_eq!(
        r["result"]["positions"],
        serde_json::json!([3, 5, 11, 17, 29, 41, 59, 71])
    );
    let r = record(&[
        "match",
        "--word",
        "(()) * (())",
        "--max",
        "100",
        "--limit",
        "3",
    ]);
    assert_eq!(r["result"]["count"], 3);
}

#[test]
fn kappa_and_milestones() {
    let r = record(&[
        "kappa",
        "--n",
        "4",
        "--direction",
        "minus",
        "--bound",
        "100000",
    ]);
    assert_eq!(r["result"]["kappa"], 2);
    assert_eq!(r["result"]["status"], "unique-proved");

    let r = record(&["milestones", "--bound", "1000", "--max-len", "2"]);
    let items = r["result"]["milestones"].as_array().unwrap();
    assert!(items
        .iter()
        .any(|m| m["position"] == 8 && m["length"] == 2 && m["proved"] == true));
}

#[test]
fn density_gaps_minreal() {
    let r = record(&[
        "density",
        "--shape",
        "(())",
        "--max",
        "10000",
        "--model",
        "li",
        "--checkpoints",
        "100,1000,10000",
    ]);
    let counts: Vec<u64> = r["result"]["checkpoints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [25, 168, 1229]);

    let r = record(&["gaps", "--word", "(())", "--max", "100"]);
    assert_eq!(r["result"]["max_gap"], 8);

    assert_eq!(
        record(&["minreal", "--shape", "(()(()))"])["result"]["n"],
        18
    );
    assert_eq!(
        record(&["minreal", "--shape", "(()(()))", "--unordered"])["result"]["n"],
        12
    );
}

#[test]
fn compare_against_bfiles() {
    let r = record(&[
        "compare",
        "--oeis-bfile",
        &data("b284456.txt"),
        "--kind",
        "planar",
        "--max",
        "100000",
    ]);
    assert_eq!(r["result"]["mismatches"], serde_json::json!([]));
    assert!(r["result"]["compared"].as_u64().unwrap() > 100);
    let r = record(&[
        "compare",
        "--oeis-bfile",
        &data("b279686.txt"),
        "--kind",
        "unordered",
        "--max",
        "100000",
    ]);
    assert_eq!(r["result"]["mismatches"], serde_json::json!([]));

    // the planar list is not the unordered one
    let r = record(&[
        "compare",
        "--oeis-bfile",
        &data("b284456.txt"),
        "--kind",
        "unordered",
        "--max",
        "1000",
    ]);
    assert!(!r["result"]["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn errors_and_exit_codes() {
    let out = natave(&["tree", "5", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = natave(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = natave(&["seq", "--max", "10", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));

    let out = natave(&["match", "--word", "(()) (()", "--max", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["kind"], "parse");
    assert_eq!(r["error"]["offset"], 8);

    let out = natave(&["match", "--word", "* (())", "--max", "10"]);
    assert_eq!(out.status.code(), Some(1));

    let out = natave(&["tree", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["kind"], "invalid-argument");

    let out = natave(&["minreal", "--shape", "(((()())))"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["kind"], "overflow");

    let out = natave(&[
        "compare",
        "--oeis-bfile",
        "/nonexistent/b.txt",
        "--max",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_reproducible_across_threads_and_segments() {
    let args = ["milestones", "--bound", "20000", "--max-len", "3"];
    let base = natave(&[&args[..], &["--threads", "1"]].concat()).stdout;
    for threads in ["2", "7"] {
        assert_eq!(
            natave(&[&args[..], &["--threads", threads]].concat()).stdout,
            base
        );
    }
    let out = Command::new(env!("CARGO_BIN_EXE_natave"))
        .args(args)
        .args(["--threads", "3"])
        .env("NATAVE_SEGMENT_SIZE", "1001")
        .output()
        .unwrap();
    assert_eq!(out.stdout, base);

    let out = Command::new(env!("CARGO_BIN_EXE_natave"))
        .args(["seq", "--max", "10"])
        .env("NATAVE_SEGMENT_SIZE", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
