//! Parse an instance file, print its traffic matrix and flow graph, and
//! write it back in canonical form.
//!
//! `cargo run --example instance_io -- [path]` (defaults to the bundled
//! sample).

use cellcut::Problem;
use cellcut::Instance;

const SAMPLE: &str = include_str!("../data/sample.txt");

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable instance file"),
        None => SAMPLE.to_string(),
    };
    let instance = Instance::parse(&text).unwrap_or_else(|e| panic!("{e}"));
    for w in instance.warnings() {
        eprintln!("warning: {w}");
    }
    let problem = Problem::new(instance);
    let m = problem.instance().machine_count();

    println!("traffic matrix:");
    for i in 0..m {
        let row: Vec<String> = problem.traffic().row(i).iter().map(|f| format!("{f:>5}")).collect();
        println!("  M{:<2} {}", i + 1, row.join(" "));
    }
    print!("\nflow graph (i j weight):\n{}", problem.graph().dump());
    print!("\ncanonical form:\n{}", problem.instance().serialize());
    assert_eq!(&Instance::parse(&problem.instance().serialize()).unwrap(), problem.instance());
}
