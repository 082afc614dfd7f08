use std::path::Path;
use std::process::{Command, Output};

use symbreak::generators::example_path_size;

fn symbreak(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symbreak"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .env_remove("SYMBREAK_BUDGET")
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn json(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&read(dir, name)).unwrap()
}

#[test]
fn generate_path_and_grid() {
    let d = tempfile::tempdir().unwrap();
    let out = symbreak(d.path(), &["generate", "--family", "biinfinite_path", "--radius", "5"]);
    assert!(out.status.success());
    let dot = read(d.path(), "ball.dot");
    assert_eq!(dot.matches("[dist=").count(), 11);
    assert_eq!(dot.matches(" -- ").count(), 10);
    assert!(d.path().join("meta.json").exists());

    let out = symbreak(d.path(), &["generate", "--family", "grid2d", "--radius", "2"]);
    assert!(out.status.success());
    assert_eq!(read(d.path(), "ball.dot").matches("[dist=").count(), 13);
    assert_eq!(json(d.path(), "ball.json")["vertex_count"], 13);
}

#[test]
fn generate_example_graph_counts() {
    let d = tempfile::tempdir().unwrap();
    let out = symbreak(d.path(), &["generate", "--family", "example_graph", "--root", "Q:1:0", "--radius", "4"]);
    assert!(out.status.success());
    let j = json(d.path(), "ball.json");
    // independent count: BFS reaches all of the next level (and its
    // gadgets) through the endpoint of the previous path
    let p = |n| example_path_size(n).unwrap();
    let below: u64 = (1..=4).map(p).sum();
    assert_eq!(j["vertex_count"], 4 * below + 3 * p(5) - 2);
    let n = j["vertex_count"].as_u64().unwrap();
    let degree_sum: u64 = j["edges"].as_array().unwrap().len() as u64 * 2;
    assert_eq!(j["edge_count"].as_u64().unwrap() * 2, degree_sum);
    assert!(degree_sum >= 2 * (n - 1));
}

#[test]
fn check_dsc_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let ok = symbreak(d.path(), &["check-dsc", "--family", "grid2d", "--r-pairs", "2", "--radius", "10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(d.path(), "dsc.json")["pairs"].as_array().unwrap().len(), 6 + 28);

    let fail = symbreak(d.path(), &["check-dsc", "--family", "twin_leaf_path", "--r-pairs", "1", "--radius", "10"]);
    assert_eq!(fail.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("twins"));
}

#[test]
fn color_then_verify() {
    let d = tempfile::tempdir().unwrap();
    let c = symbreak(d.path(), &["color", "--family", "biinfinite_path", "--strategy", "dsc", "--r-pairs", "3", "--radius", "80"]);
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stderr));
    let density = read(d.path(), "density.csv");
    assert!(density.starts_with("n,blue_count,ball_count,ratio\n"));
    assert_eq!(density.lines().count(), 82);

    let coloring = d.path().join("coloring.json");
    let v = symbreak(d.path(), &["verify", "--coloring", coloring.to_str().unwrap(), "--r-inner", "2"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(d.path(), "verify.json")["pass"], true);
}

#[test]
fn verify_failure_exits_3() {
    let d = tempfile::tempdir().unwrap();
    let c = symbreak(
        d.path(),
        &["color", "--family", "twin_leaf_path", "--root", "5", "--strategy", "motion-growth", "--radius", "60"],
    );
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stderr));
    let coloring = d.path().join("coloring.json");
    let v = symbreak(d.path(), &["verify", "--coloring", coloring.to_str().unwrap(), "--r-inner", "6"]);
    assert_eq!(v.status.code(), Some(3));
}

#[test]
fn usage_and_budget_errors() {
    let d = tempfile::tempdir().unwrap();
    let no_seed = symbreak(d.path(), &["color", "--family", "grid2d", "--strategy", "random"]);
    assert_eq!(no_seed.status.code(), Some(1));
    let bad_key = symbreak(d.path(), &["generate", "--family", "grid2d", "--param", "q=1"]);
    assert_eq!(bad_key.status.code(), Some(1));
    let radii = symbreak(d.path(), &["generate", "--family", "grid2d", "--radius", "3", "--r-inner", "5"]);
    assert_eq!(radii.status.code(), Some(1));
    let budget = symbreak(d.path(), &["generate", "--family", "grid2d", "--radius", "30", "--budget", "100"]);
    assert_eq!(budget.status.code(), Some(4));

    let env = Command::new(env!("CARGO_BIN_EXE_symbreak"))
        .args(["generate", "--family", "grid2d", "--radius", "30", "--out"])
        .arg(d.path())
        .env("SYMBREAK_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(4));
}

#[test]
fn config_file_with_overrides_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.cfg");
    std::fs::write(&cfg, "# random tree run\nfamily=regular_tree\nd=3\nradius=8\nr_inner=4\nseed=11\ntrials=20\n").unwrap();
    let a = d.path().join("a");
    let b = d.path().join("b");
    for dir in [&a, &b] {
        let out = symbreak(dir, &["montecarlo", "--config", cfg.to_str().unwrap(), "--trials", "12"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["montecarlo.json", "montecarlo.csv", "trials.csv"] {
        assert_eq!(read(&a, name), read(&b, name), "{name} differs");
    }
    assert_eq!(json(&a, "montecarlo.json")["trials"], 12);
    assert_eq!(read(&a, "trials.csv").lines().count(), 13);
    assert_eq!(json(&a, "meta.json")["config"]["seed"], 11);
}

#[test]
fn generate_with_coloring_fills_nodes() {
    let d = tempfile::tempdir().unwrap();
    symbreak(d.path(), &["color", "--family", "grid2d", "--radius", "80"]);
    let coloring = d.path().join("coloring.json");
    let g = symbreak(d.path(), &["generate", "--coloring", coloring.to_str().unwrap(), "--radius", "3"]);
    assert!(g.status.success());
    let dot = read(d.path(), "ball.dot");
    assert_eq!(dot.matches("fillcolor=").count(), 25);
    assert_eq!(dot.matches("fillcolor=blue").count(), 3);
}
