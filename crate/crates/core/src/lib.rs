//! Manufacturing cell formation as constrained graph partitioning.
//!
//! Machines are vertices of a flow graph whose edge weights are the part
//! traffic between them. A grouping of machines into cells is encoded as a
//! union of graph cuts, each cut written as an integer index over a basis of
//! singleton cuts, and searched with a genetic algorithm. Baselines (an
//! edge-bitstring GA, multi-restart k-means and an exhaustive oracle) and a
//! benchmark harness are included.
//!
//! ```
//! use cellcut::{demo, ga::{run_ga, GaParams, Variant}, Problem};
//!
//! let problem = Problem::new(demo::five_machine_instance(2));
//! let result = run_ga(&problem, &GaParams::new(50, 30, Variant::Scga, 7)).unwrap();
//! assert!(result.best_evaluation.feasible);
//! ```
//!
//! Runnable examples live in `examples/`:
//!
//! * `cut_space` walks the five-machine cut basis, indices and decoding.
//! * `solve` runs the sorted cut GA on a generated instance.
//! * `compare_encodings` pits the cut GA against the edge GA.
//! * `kmeans` runs the multi-restart k-means baseline.
//! * `oracle` checks GA answers against exhaustive search.
//! * `bench_sweep` runs a small benchmark grid and prints the table.
//! * `instance_io` round-trips an instance and dumps its flow graph.

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod cut;
pub mod demo;
mod dsu;
pub mod error;
pub mod eval;
pub mod flow;
pub mod ga;
pub mod graph;
pub mod instance;
pub mod mask;
pub mod problem;

pub use cut::{decode_partition, CutBasis, Partition};
pub use error::{Error, Result};
pub use eval::{Evaluation, Tuning};
pub use flow::Flow;
pub use graph::FlowGraph;
pub use instance::{generate_instance, Instance, Part};
pub use mask::EdgeMask;
pub use problem::Problem;
