//! A reduced benchmark sweep printed as a table and as CSV.

use cellcut::bench::{run_bench, BenchConfig, Method};
use cellcut::{generate_instance, Problem};

fn main() {
    let problem = Problem::new(generate_instance(20, 40, 5, 6, 5).unwrap());
    let config = BenchConfig {
        methods: vec![Method::Cga, Method::Scga, Method::Ega, Method::MultiKmeans],
        populations: vec![50, 100],
        generations: vec![50, 100],
        replications: 5,
        ..BenchConfig::default()
    };
    let report = run_bench(&problem, &config).unwrap();
    print!("{}", report.to_table());
    println!();
    print!("{}", report.to_csv(true));
}
