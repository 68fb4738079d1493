//! Exhaustive search as ground truth for the GA on small instances.

use cellcut::baselines::exhaustive_oracle;
use cellcut::ga::{run_ga, GaParams, Variant};
use cellcut::{generate_instance, Problem};

fn main() {
    let mut hits = 0;
    for seed in 0..10 {
        let m = 6 + (seed as usize % 4);
        let problem = Problem::new(generate_instance(m, 2 * m, 3, 5, seed).unwrap());
        let exact = exhaustive_oracle(&problem).unwrap();
        let optimum = exact.best.expect("no pair constraints, always feasible");
        let ga = run_ga(&problem, &GaParams::new(150, 150, Variant::Scga, seed)).unwrap();
        let found = &ga.best_evaluation;
        if found.traffic == optimum.traffic {
            hits += 1;
        }
        println!(
            "m={m} oracle {:>4} in {:>9.2?}  scga {:>4} in {:>9.2?}  {}",
            optimum.traffic,
            exact.wall_time,
            found.traffic,
            ga.wall_time,
            optimum.partition
        );
    }
    println!("scga matched the optimum on {hits}/10 instances");
}
