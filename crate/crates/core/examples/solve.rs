//! Solve a generated 20-part, 8-machine instance with the sorted cut GA.
//!
//! `cargo run --example solve -- [seed]`

use cellcut::ga::{run_ga, GaParams, Variant};
use cellcut::{generate_instance, Problem};

fn main() {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed must be an integer"));
    let instance = generate_instance(8, 20, 5, 6, seed).unwrap();
    let problem = Problem::new(instance);

    let params = GaParams::new(100, 100, Variant::Scga, seed);
    let result = run_ga(&problem, &params).unwrap();
    let best = &result.best_evaluation;

    println!("best chromosome {}", result.best);
    println!("cells {}", best.partition);
    println!("traffic {} of {}", best.traffic, problem.graph().total_weight());
    println!("feasible {} ({:?})", best.feasible, best.violations);
    println!("time {:.3?}", result.wall_time);
    let h = &result.best_history;
    for g in (0..h.len()).step_by(20) {
        println!("  generation {g:>3}: Y = {}", h[g]);
    }
}
