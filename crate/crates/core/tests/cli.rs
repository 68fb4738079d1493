use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cellcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn generate(dir: &TempDir, name: &str, m: &str, p: &str, n: &str, seed: &str) -> String {
    let path = dir.path().join(name);
    let o = cellcut(&[
        "generate", "--machines", m, "--parts", p, "--max-cell-size", n, "--seed", seed, "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path.to_str().unwrap().to_string()
}

fn traffic_line(report: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix("traffic: "))
        .expect("report has a traffic line")
        .to_string()
}

#[test]
fn generate_is_byte_identical_and_has_requested_size() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "a.txt", "8", "20", "5", "11");
    let b = generate(&dir, "b.txt", "8", "20", "5", "11");
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.contains("machines 8"));
    assert!(text.contains("max_cell_size 5"));
    assert_eq!(text.lines().filter(|l| l.starts_with("part ")).count(), 20);

    let big = generate(&dir, "c.txt", "50", "100", "7", "1");
    let text = fs::read_to_string(big).unwrap();
    assert!(text.contains("machines 50"));
    assert_eq!(text.lines().filter(|l| l.starts_with("part ")).count(), 100);
}

#[test]
fn trivially_feasible_instance_reports_zero_traffic() {
    let dir = TempDir::new().unwrap();
    // K = 1 with 3 bits: at most 8 distinct chromosomes.
    let path = write(&dir, "t.txt", "machines 4\nmax_cell_size 4\npart 3 : 1 2 3 4\n");
    for method in ["cga", "scga", "ega", "multikmeans", "oracle"] {
        let o = cellcut(&["solve", &path, "--method", method, "--pop", "8", "--gens", "5"]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let out = stdout(&o);
        assert_eq!(traffic_line(&out), "0", "{method}");
        assert!(out.contains("feasible: yes"));
    }
}

#[test]
fn oracle_refuses_thirteen_machines() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "m13.txt", "13", "20", "4", "0");
    let o = cellcut(&["solve", &path, "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at most 12 machines"));
}

#[test]
fn scga_matches_oracle_on_eight_machines() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "m8.txt", "8", "20", "3", "4");
    let oracle = cellcut(&["solve", &path, "--method", "oracle"]);
    let scga = cellcut(&["solve", &path, "--method", "scga", "--seed", "2"]);
    assert_eq!(oracle.status.code(), Some(0));
    assert_eq!(scga.status.code(), Some(0));
    let best: f64 = traffic_line(&stdout(&oracle)).parse().unwrap();
    let got: f64 = traffic_line(&stdout(&scga)).parse().unwrap();
    assert!(got >= best);
    assert_eq!(got, best);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "machines 3\nmax_cell_size 2\npart x : 1 2\n");
    let overlap = write(
        &dir,
        "overlap.txt",
        "machines 3\nmax_cell_size 2\npart 1 : 1 2\ncohabit 1 2\nseparate 2 1\n",
    );
    let uf = write(&dir, "uf.txt", "machines 3\nmax_cell_size 1\npart 1 : 1 2\ncohabit 1 2\n");

    assert_eq!(cellcut(&["solve", &bad]).status.code(), Some(2));
    let o = cellcut(&["solve", &overlap]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SC and SN overlap on pair (1,2)"));
    assert_eq!(cellcut(&["solve", "/nonexistent/instance.txt"]).status.code(), Some(2));
    assert_eq!(cellcut(&["solve", &uf, "--method", "oracle"]).status.code(), Some(3));
    assert_eq!(cellcut(&["solve", &uf, "--method", "scga", "--pop", "8"]).status.code(), Some(3));
    assert_eq!(cellcut(&["solve", &uf, "--method", "bogus"]).status.code(), Some(1));
    assert_eq!(cellcut(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cellcut(&["solve", &uf, "--pc", "2"]).status.code(), Some(1));
    assert_eq!(cellcut(&["--help"]).status.code(), Some(0));
}

#[test]
fn bench_csv_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "m8.txt", "8", "20", "5", "9");
    let run = |out: &str| {
        let o = cellcut(&[
            "bench", &path, "--method", "cga,scga,ega,multikmeans,oracle", "--pop", "20,40", "--gens",
            "10", "--reps", "3", "--seed", "7", "--no-timing", "--out", out,
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out).unwrap()
    };
    let a = run(dir.path().join("a.csv").to_str().unwrap());
    let b = run(dir.path().join("b.csv").to_str().unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,pop,gens,avg_traffic,best_traffic,avg_cpu_s,feasible_rate");
    assert_eq!(lines.len(), 1 + 2 + 2 + 2 + 1 + 1);
    assert!(lines[1].starts_with("cga,20,10,"));
    assert!(lines[7].starts_with("multikmeans,,,"));
    assert!(lines[8].starts_with("oracle,,,"));
}

#[test]
fn dump_graph_lists_edges() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "g.txt",
        "machines 4\nmax_cell_size 2\npart 2 : 1 2\npart 1.5 : 2 1\nseparate 3 4\n",
    );
    let out_path = dir.path().join("g.edges");
    let o = cellcut(&["dump-graph", &path, "--out", out_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(Path::new(&out_path)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.contains(&"1 2 3.5"));
    assert!(lines.contains(&"3 4 0 sn"));
    assert!(lines.iter().any(|l| l.starts_with("1 3 0") && l.contains("fictive")));
}
