use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use k23_embed::cli::{EXIT_NOT_FREE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFICATION};
use k23_embed::Graph;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k23embed")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path_in(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read_json(p: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

const C5: &str = "5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
const K23: &str = "5\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n";

#[test]
fn embed_writes_host_and_trace() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c5.txt", C5);
    let (out, trace) = (path_in(&dir, "h.txt"), path_in(&dir, "trace.json"));
    let o = run(&["embed", "--in", &input, "--root", "0", "--out", &out, "--trace", &trace]);
    assert_eq!(code(&o), EXIT_OK, "{}", String::from_utf8_lossy(&o.stderr));
    let h = Graph::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(h, Graph::parse(C5).unwrap());
    let t = read_json(&trace);
    assert_eq!(t["clusters"][2]["branch"], "disjoint_d");
}

#[test]
fn recognize_reports_a_theta_in_k23() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k23.txt", K23);
    let report = path_in(&dir, "r.json");
    let o = run(&["recognize", "--in", &input, "--report", &report]);
    assert_eq!(code(&o), EXIT_NOT_FREE);
    assert!(String::from_utf8_lossy(&o.stdout).contains("theta"));
    assert_eq!(read_json(&report)["facts"]["report"]["verdict"], "not_free");

    let c5 = write(&dir, "c5.txt", C5);
    assert_eq!(code(&run(&["recognize", "--in", &c5, "--method", "direct-minor"])), EXIT_OK);
    assert_eq!(code(&run(&["recognize", "--in", &input, "--method", "universally-signable"])), EXIT_NOT_FREE);
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3\n0 1\n0 1\n");
    let o = run(&["embed", "--in", &bad]);
    assert_eq!(code(&o), EXIT_PARSE);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&run(&["embed"])), EXIT_USAGE);
    let star = write(&dir, "star.txt", "5\n0 1\n0 2\n0 3\n1 4\n2 4\n3 4\n");
    assert_eq!(code(&run(&["embed", "--in", &star])), EXIT_PRECONDITION);
    let disconnected = write(&dir, "two.txt", "2\n");
    assert_eq!(code(&run(&["embed", "--in", &disconnected])), EXIT_PRECONDITION);
}

#[test]
fn check_passes_on_a_valid_embedding_and_fails_on_a_bad_host() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n");
    let report = path_in(&dir, "r.json");
    let o = run(&["check", "--in", &g, "--report", &report, "--deterministic", "--cycles", "8"]);
    assert_eq!(code(&o), EXIT_OK, "{}", String::from_utf8_lossy(&o.stdout));
    let facts = &read_json(&report)["facts"];
    for key in ["max_abs_gap", "argmax_pair", "root_equality", "violations", "treewidth2", "triangle_free", "theta", "wheel"] {
        assert!(facts.get(key).is_some(), "missing {key}");
    }
    assert!(read_json(&report).get("timings").is_none());

    // a host graph that is K_4 violates the tree-width bound
    let k4 = write(&dir, "k4.txt", "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert_eq!(code(&run(&["check", "--in", &k4, "--host", &k4])), EXIT_VERIFICATION);
}

#[test]
fn gen_and_diam() {
    let dir = TempDir::new().unwrap();
    let out = path_in(&dir, "g.txt");
    assert_eq!(code(&run(&["gen", "--spec", "cycle:n=9,seed=0", "--out", &out])), EXIT_OK);
    let g = Graph::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((g.n(), g.m()), (9, 9));
    let o = run(&["gen", "--family", "split", "--clique", "2", "--n", "4", "--seed", "7"]);
    assert_eq!(Graph::parse(&String::from_utf8_lossy(&o.stdout)).unwrap().to_edge_list(), "4\n0 3\n1 2\n1 3\n2 3\n");

    let report = path_in(&dir, "d.json");
    let o = run(&["diam", "--in", &out, "--exact", "--report", &report, "--deterministic"]);
    assert_eq!(code(&o), EXIT_OK);
    let facts = &read_json(&report)["facts"];
    assert_eq!((facts["exact"].as_u64(), facts["approx"].as_u64(), facts["gap"].as_i64()), (Some(4), Some(4), Some(0)));
}

#[test]
fn suite_reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let suite = |report: &str, jobs: &str| {
        run(&[
            "suite", "--family", "chordal", "--n", "100", "--count", "50", "--seed", "7", "--deterministic",
            "--jobs", jobs, "--report", report,
        ])
    };
    let (a, b, c) = (path_in(&dir, "a.json"), path_in(&dir, "b.json"), path_in(&dir, "c.json"));
    let first = suite(&a, "0");
    assert_eq!(code(&first), EXIT_OK, "{}", String::from_utf8_lossy(&first.stdout));
    assert_eq!(code(&suite(&b, "0")), EXIT_OK);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    // the worker count only shows up in the recorded configuration
    assert_eq!(code(&suite(&c, "1")), EXIT_OK);
    let (ja, jc) = (read_json(&a), read_json(&c));
    assert_eq!(ja["facts"]["instances"], jc["facts"]["instances"]);
    assert_eq!(ja["facts"]["instances"].as_array().unwrap().len(), 50);
    assert!(ja["facts"]["max_abs_gap"].as_u64().unwrap() <= 2470);
}

#[test]
fn suite_fails_on_a_non_free_family() {
    let o = run(&["suite", "--family", "k23", "--n", "7", "--count", "2", "--deterministic"]);
    assert_ne!(code(&o), EXIT_OK);
}

#[test]
fn bench_on_a_trivial_ladder() {
    let dir = TempDir::new().unwrap();
    let (csv, report) = (path_in(&dir, "b.csv"), path_in(&dir, "b.json"));
    let start = std::time::Instant::now();
    let o = run(&["bench", "--family", "tree", "--sizes", "10,20", "--csv", &csv, "--report", &report]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(start.elapsed().as_secs_f64() < 1.0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("phase,n,m,millis\n"));
    assert_eq!(text.lines().count(), 5);
    assert!(read_json(&report)["timings"]["exponent_vs_size"].get("embed").is_some());
    assert!(Path::new(&report).exists());
}
