//! Cut encoding (plain and sorted) against the edge-bitstring encoding on a
//! 50-machine instance with cells of at most 7 machines.

use cellcut::baselines::run_ega;
use cellcut::ga::{run_ga, GaParams, Variant};
use cellcut::{generate_instance, Problem};

fn main() {
    let problem = Problem::new(generate_instance(50, 100, 7, 6, 1).unwrap());
    println!("{:>4}  {:>10} {:>10} {:>10}", "seed", "cga", "scga", "ega");
    for seed in 0..5 {
        let cga = run_ga(&problem, &GaParams::new(200, 100, Variant::Cga, seed)).unwrap();
        let scga = run_ga(&problem, &GaParams::new(200, 100, Variant::Scga, seed)).unwrap();
        let ega = run_ega(&problem, &GaParams::new(200, 100, Variant::Cga, seed)).unwrap();
        let show = |e: &cellcut::Evaluation| {
            if e.feasible {
                e.traffic.to_string()
            } else {
                "UF".to_string()
            }
        };
        println!(
            "{seed:>4}  {:>10} {:>10} {:>10}",
            show(&cga.best_evaluation),
            show(&scga.best_evaluation),
            show(&ega.best_evaluation)
        );
    }
}
