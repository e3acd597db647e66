use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn blockfuse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockfuse"))
        .args(args)
        .env_remove("BLOCKFUSE_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn block_count(args: &[&str]) -> usize {
    let out = blockfuse(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)["blocks"].as_array().unwrap().len()
}

#[test]
fn block_counts() {
    assert_eq!(block_count(&["blocks", "--degree", "3", "--prime", "2"]), 2);
    assert_eq!(block_count(&["blocks", "--degree", "4", "--prime", "2"]), 1);
    assert_eq!(block_count(&["blocks", "--degree", "1", "--prime", "2"]), 1);
    // S_5 mod 5: the five hooks form the principal block, (3,2) and (2,2,1)
    // have defect zero
    assert_eq!(block_count(&["blocks", "--degree", "5", "--prime", "5"]), 3);
}

#[test]
fn s3_defects_and_points_are_one_based() {
    let v = json(&blockfuse(&["blocks", "--degree", "3", "--prime", "2"]));
    let mut rows: Vec<(u64, Vec<u64>)> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            let m = b["M"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (b["defect_order"].as_u64().unwrap(), m)
        })
        .collect();
    rows.sort();
    assert_eq!(rows[0].0, 1);
    assert!(rows[0].1.is_empty());
    assert_eq!(rows[1].0, 2);
    assert_eq!(rows[1].1.len(), 2);
    assert!(rows[1].1.iter().all(|&x| (1..=3).contains(&x)));
}

#[test]
fn exit_codes() {
    assert_eq!(blockfuse(&["blocks", "--degree", "3", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(blockfuse(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(blockfuse(&["blocks", "--degree", "0", "--prime", "2"]).status.code(), Some(2));
    assert_eq!(blockfuse(&["--help"]).status.code(), Some(0));
    let fusion = blockfuse(&["fusion", "--group", "A", "--degree", "5", "--prime", "2"]);
    assert_eq!(fusion.status.code(), Some(0));
    let verdicts: Vec<String> = json(&fusion)["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"].as_str().unwrap().to_string())
        .collect();
    assert!(verdicts.iter().all(|v| v == "A_M"), "{verdicts:?}");
}

#[test]
fn no_timing_output_is_deterministic() {
    let args = ["fusion", "--degree", "4", "--prime", "2", "--no-timing", "--format", "tsv"];
    let a = blockfuse(&args);
    let b = blockfuse(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time_ms"));
}

fn with_cache(dir: &Path) -> Output {
    blockfuse(&[
        "blocks",
        "--group",
        "A",
        "--degree",
        "5",
        "--prime",
        "3",
        "--no-timing",
        "--cache-dir",
        dir.to_str().unwrap(),
    ])
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let cold = with_cache(dir.path());
    assert!(dir.path().join("a5-p3.json").exists());
    let warm = with_cache(dir.path());
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn env_cache_overrides_flag() {
    let flag = tempfile::tempdir().unwrap();
    let env = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_blockfuse"))
        .args(["blocks", "--degree", "4", "--prime", "2", "--cache-dir", flag.path().to_str().unwrap()])
        .env("BLOCKFUSE_CACHE", env.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env.path().join("s4-p2.json").exists());
    assert!(!flag.path().join("s4-p2.json").exists());
}

#[test]
fn verify_single_target() {
    let out = blockfuse(&["verify", "blocks", "--degree", "4", "--prime", "3", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("blocks\t") && l.ends_with("\tpass")), "{text}");
}
