use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockset"))
        .args(args)
        .env_remove("BLOCKSET_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn build_complete_dual_round_trip() {
    let dir = TempDir::new().unwrap();
    let (ag, pg, d1, d2) = (path(&dir, "ag.txt"), path(&dir, "pg.txt"), path(&dir, "d1.txt"), path(&dir, "d2.txt"));
    let o = run(&["plane", "build", "--family", "hall", "--q", "3", "--out", &ag]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("axioms hold"));

    let o = run(&["plane", "complete", "--in", &ag, "--out", &pg]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("line at infinity: 90"));
    assert_eq!(code(&run(&["plane", "dual", "--in", &pg, "--out", &d1])), 0);
    assert_eq!(code(&run(&["plane", "dual", "--in", &d1, "--out", &d2])), 0);
    assert_eq!(read(&pg), read(&d2));

    let o = run(&["plane", "check", "--in", &d1, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["points"], 91);
}

#[test]
fn stdout_plane_text_parses_back() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "pg.txt");
    let o = run(&["plane", "build", "--family", "pg", "--q", "4"]);
    std::fs::write(&f, stdout(&o)).unwrap();
    assert_eq!(code(&run(&["plane", "check", "--in", &f])), 0);
}

#[test]
fn desargues_sampling() {
    let dir = TempDir::new().unwrap();
    let (hall, pg) = (path(&dir, "hall.txt"), path(&dir, "pg.txt"));
    run(&["plane", "build", "--family", "hall", "--q", "3", "--out", &hall]);
    run(&["plane", "build", "--family", "pg", "--q", "9", "--out", &pg]);
    let o = run(&["plane", "check", "--in", &hall, "--desargues", "100000", "--seed", "5"]);
    assert!(stdout(&o).contains("desargues: violated"), "{}", stdout(&o));
    let o = run(&["plane", "check", "--in", &pg, "--desargues", "2000", "--seed", "5"]);
    assert!(stdout(&o).contains("no violation in 2000 samples (seed 5)"));
}

#[test]
fn broken_plane_file_fails_axioms() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "bad.txt");
    std::fs::write(&f, "plane projective\norder 2\npoints 7\nlines 7\nL 0 1 2\nL 0 3 4\nL 0 5 6\nL 1 3 5\nL 1 4 6\nL 2 3 6\nL 2 4 6\n").unwrap();
    let o = run(&["plane", "check", "--in", &f]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violation"));
    assert_eq!(code(&run(&["blocking", "greedy", "--in", &f])), 1);

    std::fs::write(&f, "plane projective\norder two\n").unwrap();
    assert_eq!(code(&run(&["plane", "check", "--in", &f])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["plane", "build", "--family", "ag", "--q", "6"])), 2);
    assert_eq!(code(&run(&["blocking", "min"])), 2);
    assert_eq!(code(&run(&["blocking", "min", "--family", "pg", "--q", "3"])), 2);
    assert_eq!(code(&run(&["blocking", "dual-cover", "--family", "pg", "--q", "3", "--point", "99"])), 2);
    assert_eq!(code(&run(&["plane", "build", "--family", "pg", "--q", "3", "--format", "csv"])), 2);
    assert_eq!(code(&run(&["verify", "feasibility", "--q-min", "3"])), 2);
    assert_eq!(code(&run(&["verify", "afschatting", "--b-max", "9"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["plane", "check", "--in", "/nonexistent/plane.txt"])), 2);
}

#[test]
fn blocking_checks() {
    let o = run(&["blocking", "check", "--family", "ag", "--q", "3", "--set", "0,1,2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("missed line"));
    let o = run(&["blocking", "check", "--family", "ag", "--q", "3", "--set", "0,1,2,3,6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["blocking", "check", "--family", "ag", "--q", "3", "--set", "0,81"])), 2);

    let o = run(&["blocking", "greedy", "--family", "ag", "--q", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["blocking"], true);
}

#[test]
fn axes_from_file_recover_coordinates() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "hall.txt");
    run(&["plane", "build", "--family", "hall", "--q", "3", "--out", &f]);
    let o = run(&["blocking", "axes", "--in", &f, "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("set,plane,size,blocking,points\naxes,hall,17,true,"));
}

#[test]
fn minimum_blocking_certificate() {
    let o = run(&["blocking", "min", "--family", "ag", "--q", "5", "--format", "json", "--deterministic"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["problem"], "min-blocking");
    assert_eq!(v["value"], 9);
    assert_eq!(v["status"], "proved-optimal");
    assert_eq!(v["ms"], 0);
    assert_eq!(v["witness"].as_array().unwrap().len(), 9);
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = ["blocking", "min", "--family", "ag", "--q", "4", "--deterministic", "--format", "json"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_blockset"))
        .args(args)
        .env("BLOCKSET_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), 0);
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = run(&["blocking", "min", "--family", "ag", "--q", "5", "--budget", "5"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("status: budget-exhausted"));
}

#[test]
fn dual_cover_reports_spectrum_and_audit() {
    let o = run(&["blocking", "dual-cover", "--family", "pg", "--q", "4", "--point", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificate"]["value"], 7);
    assert_eq!(v["spectrum"]["P"], 0);
    assert!(v["audit"].as_array().unwrap().iter().all(|e| e["holds"] != false));
}

#[test]
fn verify_commands() {
    let o = run(&["verify", "afschatting", "--b-max", "5", "--k-max", "10", "--trials", "200", "--seed", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("seed 9"));

    let o = run(&["verify", "counts", "--family", "ag", "--q", "3", "--trials", "50", "--seed", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("covers passing: 50"));

    let o = run(&["verify", "inequalities", "--q-max", "500", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["violations"].as_array().unwrap().is_empty()));

    let o = run(&["verify", "feasibility", "--q-min", "25", "--q-max", "30", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.starts_with("q,d,b,failed_flag\n"));
    assert!(!csv.contains("feasible"));

    let o = run(&["verify", "duality", "--q", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("agrees: yes"));
}
