//! Comparison methods: the edge-based GA, multi-restart k-means and an
//! exhaustive oracle for small instances.

mod ega;
mod kmeans;
mod oracle;

pub use ega::run_ega;
pub use kmeans::{lloyd, run_multikmeans, KMeansResult, MAX_LLOYD_ITERATIONS};
pub use oracle::{exhaustive_oracle, OracleResult, MAX_ORACLE_MACHINES};
