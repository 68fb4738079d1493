//! The five-machine, eight-edge graph used throughout the docs, examples
//! and tests.
//!
//! Edges in canonical order:
//! `e1=(M1,M3) e2=(M1,M4) e3=(M1,M5) e4=(M2,M3) e5=(M2,M4) e6=(M2,M5)
//! e7=(M3,M5) e8=(M4,M5)`, each carrying one unit of flow.

use crate::flow::Flow;
use crate::graph::FlowGraph;
use crate::instance::{Instance, Part};

pub const FIVE_MACHINE_EDGES: [(usize, usize); 8] =
    [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5)];

/// One unit-volume part per edge, routed across that edge.
/// Cell size is capped at `max_cell_size`.
pub fn five_machine_instance(max_cell_size: usize) -> Instance {
    let parts = FIVE_MACHINE_EDGES
        .iter()
        .map(|&(a, b)| Part::new(vec![a - 1, b - 1], Flow::from_int(1)).unwrap())
        .collect();
    Instance::new(5, max_cell_size, parts, [], []).unwrap()
}

pub fn five_machine_graph() -> FlowGraph {
    let edges: Vec<_> = FIVE_MACHINE_EDGES
        .iter()
        .map(|&(a, b)| (a - 1, b - 1, Flow::from_int(1)))
        .collect();
    FlowGraph::from_weighted_edges(5, &edges)
}
