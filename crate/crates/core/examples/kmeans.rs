//! Multi-restart k-means on the traffic matrix rows, with one cohabitation
//! and one separation constraint the clustering itself ignores.

use cellcut::baselines::run_multikmeans;
use cellcut::{generate_instance, Instance, Problem};

fn main() {
    let base = generate_instance(12, 30, 4, 5, 3).unwrap();
    let instance = Instance::new(12, 4, base.parts().to_vec(), [(0, 1)], [(2, 3)]).unwrap();
    let problem = Problem::new(instance);

    for restarts in [1, 5, 20] {
        let r = run_multikmeans(&problem, restarts, 42).unwrap();
        println!(
            "restarts {restarts:>2}: k = {:>2}, traffic {:>6}, feasible {}, cells {}",
            r.cluster_count, r.best.traffic, r.feasible_found, r.best.partition
        );
    }
}
