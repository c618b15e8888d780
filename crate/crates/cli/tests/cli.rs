use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn thue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thue")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Spider: center 0 with legs 1-2, 3-4, 5.
const TREE: &str = "6\n0 1\n1 2\n0 3\n3 4\n0 5\n";

fn wide_lists(n: usize, size: u32, stride: u32) -> String {
    let items: Vec<String> = (0..n as u32)
        .map(|v| {
            let l: Vec<String> = (0..size).map(|i| (1 + (v * stride + i * 7) % 4000).to_string()).collect();
            format!("\"{v}\":[{}]", l.join(","))
        })
        .collect();
    format!("{{{}}}", items.join(","))
}

#[test]
fn verify_reports_witness_or_success() {
    let d = tempfile::tempdir().unwrap();
    let t = write(d.path(), "t.txt", "4\n0 1\n1 2\n2 3\n");
    let bad = write(d.path(), "bad.json", r#"{"0":1,"1":2,"2":1,"3":2}"#);
    let good = write(d.path(), "good.json", r#"{"0":1,"1":2,"2":1,"3":3}"#);
    let o = thue(&["verify", "--tree", s(&t), "--coloring", s(&bad)]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["witness"]["path"], serde_json::json!([0, 1, 2, 3]));
    let o = thue(&["verify", "--tree", s(&t), "--coloring", s(&good)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["nonrepetitive"], true);
    let lists = write(d.path(), "l.json", r#"{"0":[1],"1":[2],"2":[1],"3":[2]}"#);
    let o = thue(&["verify", "--tree", s(&t), "--coloring", s(&good), "--lists", s(&lists)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn solve_then_decode_recovers_the_input() {
    let d = tempfile::tempdir().unwrap();
    let t = write(d.path(), "t.txt", TREE);
    let l = write(d.path(), "l.json", &wide_lists(6, 12, 5));
    let args = ["solve", "--tree", s(&t), "--lists", s(&l), "--ell", "2", "--seed", "4"];
    let o = thue(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    // byte-identical on a rerun
    assert_eq!(o.stdout, thue(&args).stdout);
    let v = stdout_json(&o);
    assert_eq!(v["success"], true);
    let log = write(d.path(), "m.json", &v["log"].to_string());
    let o = thue(&["log-decode", "--log", s(&log), "--tree", s(&t), "--lists", s(&l), "--ell", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["random_input"], v["random_input"]);
    let o = thue(&["audit", "--log", s(&log), "--ell", "2", "--list-size", "12"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["violations"], serde_json::json!([]));
    // explicit input through a config file replays the same log
    let cfg = serde_json::json!({"ell": 2, "list_size": 12, "random_input": v["random_input"]});
    let c = write(d.path(), "c.json", &cfg.to_string());
    let o = thue(&["solve", "--tree", s(&t), "--lists", s(&l), "--config", s(&c)]);
    assert_eq!(stdout_json(&o)["log"], v["log"]);
}

#[test]
fn color_output_verifies() {
    let d = tempfile::tempdir().unwrap();
    let t = write(d.path(), "t.txt", TREE);
    let l = write(d.path(), "l.json", &wide_lists(6, 64, 97));
    let o = thue(&["color", "--tree", s(&t), "--lists", s(&l), "--seed", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    let c = write(d.path(), "c.json", &v["coloring"].to_string());
    let o = thue(&["verify", "--tree", s(&t), "--coloring", s(&c), "--lists", s(&l)]);
    assert_eq!(code(&o), 0);
    let o = thue(&["thin", "--tree", s(&t), "--lists", s(&l), "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let sub = &stdout_json(&o)["sublists"];
    assert_eq!(sub["0"].as_array().unwrap().len(), 5);
}

#[test]
fn gen_gnl_small_instance() {
    let v = stdout_json(&thue(&["gen-gnl", "--n", "2", "--ell", "1"]));
    assert_eq!(v["manifest"]["vertex_count"], 6);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    let v = stdout_json(&thue(&["gen-gnl", "--n", "60", "--ell", "2", "--max-explicit", "100"]));
    assert_eq!(v["lazy"], true);
    assert_eq!(v["manifest"]["blob_size"], 7140);
}

#[test]
fn census_and_certification() {
    let o = thue(&["census", "--n", "21", "--ell", "1", "--certify"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["certification"]["verdict"], "forced");
    let o = thue(&["census", "--n", "8", "--ell", "2", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["outcome"]["kind"].is_string());
    let o = thue(&["census", "--n", "4", "--ell", "2", "--certify"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn game_outcomes_and_exit_codes() {
    let o = thue(&["game", "--n", "100", "--list-size", "4", "--seed", "9"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["result"], "completed");
    assert_eq!(v["sequence"].as_array().unwrap().len(), 100);
    let o = thue(&["game", "--n", "10", "--list-size", "2", "--seed", "9", "--budget", "500"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout_json(&o)["longest"], 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&thue(&["game", "--n", "5", "--list-size", "4"])), 2);
    assert_eq!(code(&thue(&["pathwidth", "--tree", "/nonexistent"])), 2);
    assert_eq!(code(&thue(&["frobnicate"])), 2);
    let d = tempfile::tempdir().unwrap();
    let t = write(d.path(), "t.txt", "3\n0 1\n");
    assert_eq!(code(&thue(&["pathwidth", "--tree", s(&t)])), 2);
}
