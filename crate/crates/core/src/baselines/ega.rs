//! Edge-based GA: one bit per flow-graph edge, 1 meaning intercellular.
//!
//! A random bit string is generally not a union of cuts, so an individual is
//! scored on the partition its 0-edges induce: the traffic is the weight of
//! the edges that end up between cells, which makes fitness values directly
//! comparable with the cut-based GA.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cut::decode_partition;
use crate::error::Result;
use crate::eval::{evaluate_partition, Evaluation, FitnessConfig};
use crate::ga::engine::{self, Encoding};
use crate::ga::{GaParams, GaResult};
use crate::graph::FlowGraph;
use crate::instance::Instance;
use crate::mask::EdgeMask;
use crate::problem::Problem;

struct EdgeEncoding<'a> {
    graph: &'a FlowGraph,
    instance: &'a Instance,
    config: FitnessConfig,
}

impl Encoding for EdgeEncoding<'_> {
    type Genome = EdgeMask;

    fn random(&self, rng: &mut ChaCha8Rng) -> EdgeMask {
        let bits: Vec<bool> = (0..self.graph.edge_count()).map(|_| engine::coin(rng)).collect();
        EdgeMask::from_bits(&bits)
    }

    fn crossover(&self, a: &EdgeMask, b: &EdgeMask, rng: &mut ChaCha8Rng) -> (EdgeMask, EdgeMask) {
        let len = a.len();
        if len < 2 {
            return (a.clone(), b.clone());
        }
        let at = rng.gen_range(1..len);
        (a.splice(b, at), b.splice(a, at))
    }

    fn mutate(&self, genome: &mut EdgeMask, rng: &mut ChaCha8Rng) {
        let i = rng.gen_range(0..genome.len());
        genome.flip(i);
    }

    fn distinct_limit(&self) -> Option<u128> {
        let len = self.graph.edge_count();
        (len < 127).then(|| 1u128 << len)
    }

    fn evaluate(&self, genome: &EdgeMask) -> Evaluation {
        let partition = decode_partition(self.graph, genome);
        evaluate_partition(self.graph, self.instance, partition, &self.config)
            .expect("traffic never exceeds total flow")
    }
}

/// Runs the edge-based GA. `params.variant` is ignored.
pub fn run_ega(problem: &Problem, params: &GaParams) -> Result<GaResult<EdgeMask>> {
    let enc = EdgeEncoding {
        graph: problem.graph(),
        instance: problem.instance(),
        config: problem.fitness_config(params.tuning),
    };
    engine::run(&enc, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::Variant;
    use crate::instance::generate_instance;

    #[test]
    fn all_zero_chromosome_is_one_cell() {
        let p = Problem::new(generate_instance(6, 12, 3, 4, 5).unwrap());
        let enc = EdgeEncoding {
            graph: p.graph(),
            instance: p.instance(),
            config: p.fitness_config(Default::default()),
        };
        let e = enc.evaluate(&EdgeMask::zeros(p.graph().edge_count()));
        assert_eq!(e.partition.cell_count(), 1);
    }

    #[test]
    fn inconsistent_masks_are_scored_on_their_partition() {
        // Marking a single edge of a triangle leaves it intracellular.
        let inst = Instance::parse(
            "machines 3\nmax_cell_size 3\npart 1 : 1 2 3 1\n",
        )
        .unwrap();
        let p = Problem::new(inst);
        let enc = EdgeEncoding {
            graph: p.graph(),
            instance: p.instance(),
            config: p.fitness_config(Default::default()),
        };
        let e = enc.evaluate(&EdgeMask::from_01(&[1, 0, 0]));
        assert_eq!(e.partition.cell_count(), 1);
        assert!(e.traffic.is_zero());
    }

    #[test]
    fn reproducible_per_seed() {
        let p = Problem::new(generate_instance(8, 16, 3, 5, 2).unwrap());
        let params = GaParams::new(30, 20, Variant::Cga, 4);
        let a = run_ega(&p, &params).unwrap();
        let b = run_ega(&p, &params).unwrap();
        assert_eq!(a.best_history, b.best_history);
        assert_eq!(a.best, b.best);
        assert!(a.best_history.windows(2).all(|w| w[0] <= w[1]));
    }
}
