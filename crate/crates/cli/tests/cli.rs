//! End-to-end tests of the binary: exit codes, JSON shape, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sparsedom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("KERNEL_SEED").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_path_graph(dir: &Path, n: usize) -> String {
    let mut text = format!("p {n}\n");
    for v in 1..n {
        text.push_str(&format!("{} {v}\n", v - 1));
    }
    let path = dir.join(format!("p{n}.txt"));
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_emits_schema_and_edges() {
    let out = run(&["gen", "--family", "grid", "--params", "2,3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["n"], 6);
    assert_eq!(v["m"], 7);
    assert!(v["graph"].as_str().unwrap().starts_with("p 6\n"));
}

#[test]
fn solve_p7_optimum_3() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = write_path_graph(dir.path(), 7);
    let out = run(&["solve", "--graph", &p7, "--r", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["optimum"], 3);
}

#[test]
fn kernelize_no_instance_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = write_path_graph(dir.path(), 7);
    let out = run(&["kernelize", "--graph", &p7, "--r", "1", "--k", "1", "--mode", "r1"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "Infeasible");
    assert!(v["certificate"].as_array().unwrap().len() > 1);
}

#[test]
fn solve_refuses_above_cap_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let big = write_path_graph(dir.path(), 80);
    let out = run(&["solve", "--graph", &big, "--r", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_error_exits_1() {
    let out = run(&["kernelize", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["gen", "--family", "nosuch", "--params", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seeded_commands_are_byte_identical() {
    let a = run(&["gen", "--family", "randdeg", "--params", "30,3", "--seed", "11"]);
    let b = run(&["gen", "--family", "randdeg", "--params", "30,3", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["gen", "--family", "randdeg", "--params", "30,3", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn kernel_seed_env_fallback() {
    let with_flag = run(&["gen", "--family", "randdeg", "--params", "20,3", "--seed", "5"]);
    let with_env = bin()
        .args(["gen", "--family", "randdeg", "--params", "20,3"])
        .env("KERNEL_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = write_path_graph(dir.path(), 7);
    let out_path = dir.path().join("res.json");
    let stdout_run = run(&["core", "--graph", &p7, "--r", "1", "--k", "3"]);
    let file_run = run(&[
        "core", "--graph", &p7, "--r", "1", "--k", "3", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(file_run.status.success());
    assert_eq!(std::fs::read(&out_path).unwrap(), stdout_run.stdout);
}

#[test]
fn verify_small_sweep_passes() {
    let out = run(&["verify", "--max-n", "8", "--max-r", "2"]);
    assert!(out.status.success(), "verify failed: {}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&out);
    assert_eq!(v["allPass"], true);
    assert!(v["cases"].as_u64().unwrap() > 0);
}

#[test]
fn approx_with_targets() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = write_path_graph(dir.path(), 7);
    let z = dir.path().join("z.txt");
    std::fs::write(&z, "0\n6\n").unwrap();
    let out = run(&[
        "approx", "--graph", &p7, "--r", "1", "--k", "2", "--target-file",
        z.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["tag"], "Dominator");
    assert!(v["size"].as_u64().unwrap() <= 2);
}
