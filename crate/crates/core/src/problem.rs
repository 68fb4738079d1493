use crate::cut::{build_basis, CutBasis};
use crate::error::{Error, Result};
use crate::eval::{FitnessConfig, Tuning};
use crate::graph::{build_graph, compute_traffic, FlowGraph, TrafficMatrix};
use crate::instance::Instance;

/// An instance together with everything derived from it once: traffic
/// matrix, flow graph and (when the machine count allows) the cut basis.
/// Shared read-only by every solver run.
#[derive(Debug, Clone)]
pub struct Problem {
    instance: Instance,
    traffic: TrafficMatrix,
    graph: FlowGraph,
    basis: std::result::Result<CutBasis, Error>,
}

impl Problem {
    pub fn new(instance: Instance) -> Self {
        let traffic = compute_traffic(&instance);
        let graph = build_graph(&instance, &traffic);
        let basis = build_basis(&graph);
        Self {
            instance,
            traffic,
            graph,
            basis,
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn traffic(&self) -> &TrafficMatrix {
        &self.traffic
    }

    pub fn graph(&self) -> &FlowGraph {
        &self.graph
    }

    /// Fails when the machine count exceeds what a `u64` cut index can hold.
    pub fn basis(&self) -> Result<&CutBasis> {
        self.basis.as_ref().map_err(Clone::clone)
    }

    pub fn fitness_config(&self, tuning: Tuning) -> FitnessConfig {
        FitnessConfig::for_instance(&self.instance, &self.graph, tuning)
    }
}
