use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const C5: &str = "0 1\n1 2\n2 3\n3 4\n4 0\n";
const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn oddsub(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_oddsub"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_reports_f_witness_and_method() {
    let out = oddsub(&["solve", "--json"], C5);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["f"], 2);
    assert_eq!(v["method"], "dp");
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);

    let v = json_of(&oddsub(&["solve", "--json", "--method", "brute"], K4));
    assert_eq!((v["f"].as_u64(), v["method"].as_str()), (Some(4), Some("brute")));
}

#[test]
fn solve_dp_refuses_k4() {
    let out = oddsub(&["solve", "--method", "dp"], K4);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("treewidth"));
}

#[test]
fn construct_emits_a_certificate() {
    let gen = oddsub(&["gen", "--family", "random_sp", "--n", "60", "--seed", "5"], "");
    assert_eq!(gen.status.code(), Some(0));
    let edges = String::from_utf8(gen.stdout).unwrap();
    let out = oddsub(&["construct", "--json"], &edges);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let size = v["size"].as_u64().unwrap();
    assert_eq!(v["set"].as_array().unwrap().len() as u64, size);
    assert!(5 * size >= 2 * 60);
    assert_eq!(v["fallback_used"], false);
    let (p, q) = v["ratio"].as_str().unwrap().split_once('/').unwrap();
    assert_eq!(p.parse::<u64>().unwrap() * 60, size * q.parse::<u64>().unwrap());
    let step = &v["trace"][0];
    assert!(step["branch"].is_string() && step["removed"].is_array() && step["added"].is_array());
}

#[test]
fn construct_on_an_eared_triangle_fails_the_bound() {
    let out = oddsub(&["construct"], "0 1\n1 2\n0 2\n0 3\n1 3\n1 4\n2 4\n0 5\n2 5\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn construct_rejects_isolated_vertices() {
    let out = oddsub(&["construct"], "p 3\n0 1\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_diagnostics() {
    let ok = oddsub(&["verify", "--set", "0,1", "--json"], C5);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_of(&ok)["valid"], true);

    let bad = oddsub(&["verify", "--set", "0,1,2", "--json"], C5);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json_of(&bad)["diagnostic"], "vertex 1 has even degree in the induced subgraph");

    assert_eq!(oddsub(&["verify", "--set", "0,x"], C5).status.code(), Some(2));
}

#[test]
fn gallai_sides_cover_the_graph() {
    let v = json_of(&oddsub(&["gallai", "--json"], C5));
    let a = v["side_a"].as_array().unwrap().len();
    let b = v["side_b"].as_array().unwrap().len();
    assert_eq!(a + b, 5);
}

#[test]
fn recognize_exports_nice_nodes() {
    let v = json_of(&oddsub(&["recognize", "--json"], C5));
    assert_eq!(v["treewidth_at_most_two"], true);
    assert_eq!(v["width"], 2);
    let nodes = v["nodes"].as_array().unwrap();
    for n in nodes {
        assert!(n["id"].is_u64() && n["kind"].is_string() && n["bag"].is_array() && n["children"].is_array());
    }
    assert_eq!(v["root"].as_u64().unwrap() as usize, nodes.len() - 1);

    let v = json_of(&oddsub(&["recognize", "--json"], K4));
    assert_eq!(v["treewidth_at_most_two"], false);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--family", "random_tree", "--n", "30", "--seed", "9"];
    let a = oddsub(&args, "");
    let b = oddsub(&args, "");
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with(['#', 'p'])).count(), 29);

    let c5s = oddsub(&["gen", "--family", "c5_union", "--k", "3"], "");
    let text = String::from_utf8(c5s.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with(['#', 'p'])).count(), 15);
}

#[test]
fn check_passes_and_reports_json() {
    let out = oddsub(&["check", "--family", "random_sp", "--trials", "30", "--n", "40", "--json", "--jobs", "2"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["instances"], 30);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["checks"]["ratio"]["passed"], 30);
    assert!(v["min_construct_ratio"]["exact"].is_string());
}

#[test]
fn check_with_violations_exits_one() {
    // k up to 5 includes an invalid hk instance
    let out = oddsub(&["check", "--family", "hk", "--k", "5", "--trials", "3", "--checks", "gallai"], "");
    assert!(out.status.code() == Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(oddsub(&["bogus"], "").status.code(), Some(2));
    assert_eq!(oddsub(&["gen", "--family", "nope", "--n", "3"], "").status.code(), Some(2));
    assert_eq!(oddsub(&["solve", "--input", "/nonexistent/file"], "").status.code(), Some(2));
    assert_eq!(oddsub(&["solve"], "0 x\n").status.code(), Some(2));
}
