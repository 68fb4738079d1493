//! Solution evaluation: intercellular traffic, constraint violations and the
//! penalized fitness used by every search method.
//!
//! Fitness is `Y = (B - Z) + (u - v) * B`, where `Z` is the intercellular
//! traffic, `B` the total flow, `u` the number of constraints and `v` the
//! number of violated ones. `Y` is computed exactly in raw flow units. One
//! more violation costs a full `B`, so a solution with fewer violations has a
//! strictly higher `Y` whenever its traffic is below `B`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::cut::{decode_partition, Partition};
use crate::error::{Error, Result};
use crate::flow::Flow;
use crate::graph::FlowGraph;
use crate::instance::Instance;
use crate::mask::EdgeMask;

/// Order-preserving transform applied to `Y` before roulette selection.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Tuning {
    #[default]
    Identity,
    /// `(Y / Y_max)^gamma`; `gamma > 1` stretches the gaps between the
    /// best individuals.
    Power(f64),
}

impl FromStr for Tuning {
    type Err = Error;

    /// `identity` or `power:<gamma>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "identity" {
            return Ok(Tuning::Identity);
        }
        if let Some(g) = s.strip_prefix("power:") {
            let gamma: f64 = g
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad tuning exponent {g:?}")))?;
            if gamma.is_finite() && gamma > 0.0 {
                return Ok(Tuning::Power(gamma));
            }
            return Err(Error::InvalidParameter(format!(
                "tuning exponent must be positive, got {gamma}"
            )));
        }
        Err(Error::InvalidParameter(format!(
            "unknown tuning {s:?}; expected identity or power:<gamma>"
        )))
    }
}

impl fmt::Display for Tuning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tuning::Identity => f.write_str("identity"),
            Tuning::Power(g) => write!(f, "power:{g}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessConfig {
    /// Upper bound `B` on traffic.
    pub bound: Flow,
    /// Number of constraints `u`.
    pub constraint_count: usize,
    pub tuning: Tuning,
}

impl FitnessConfig {
    /// `B` is the total flow of the graph (one unit if there is no flow at
    /// all) and `u = m + |SC| + |SN|`, one size constraint per potential
    /// cell plus one per constrained pair.
    pub fn for_instance(inst: &Instance, g: &FlowGraph, tuning: Tuning) -> Self {
        let total = g.total_weight();
        let bound = if total.is_zero() { Flow::from_int(1) } else { total };
        Self {
            bound,
            constraint_count: inst.machine_count() + inst.cohabit().len() + inst.separate().len(),
            tuning,
        }
    }

    /// Largest possible `Y`, reached with zero traffic and no violations.
    pub fn max_fitness(&self) -> u128 {
        self.bound.raw() as u128 * (self.constraint_count as u128 + 1)
    }

    pub fn tune(&self, fitness: u128) -> f64 {
        match self.tuning {
            Tuning::Identity => fitness as f64,
            Tuning::Power(gamma) => (fitness as f64 / self.max_fitness() as f64).powf(gamma),
        }
    }
}

/// Breakdown of violated constraints.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Violations {
    /// Cells holding more than `N` machines.
    pub oversized_cells: usize,
    /// Cohabitation pairs placed in different cells.
    pub split_cohabit: usize,
    /// Separation pairs placed in the same cell.
    pub joined_separate: usize,
}

impl Violations {
    pub fn total(&self) -> usize {
        self.oversized_cells + self.split_cohabit + self.joined_separate
    }
}

/// Sum of the weights of the marked edges.
pub fn intercellular_traffic(g: &FlowGraph, intercellular: &EdgeMask) -> Flow {
    assert_eq!(intercellular.len(), g.edge_count(), "mask length mismatch");
    intercellular.iter_ones().map(|i| g.edges()[i].weight).sum()
}

pub fn count_violations(partition: &Partition, inst: &Instance) -> Violations {
    let n = inst.max_cell_size();
    Violations {
        oversized_cells: partition.cells().iter().filter(|c| c.len() > n).count(),
        split_cohabit: inst
            .cohabit()
            .iter()
            .filter(|&&(a, b)| !partition.same_cell(a, b))
            .count(),
        joined_separate: inst
            .separate()
            .iter()
            .filter(|&&(a, b)| partition.same_cell(a, b))
            .count(),
    }
}

/// Exact `Y = (B - Z) + (u - v) * B` in raw flow units.
pub fn fitness(traffic: Flow, violations: usize, cfg: &FitnessConfig) -> Result<u128> {
    if traffic > cfg.bound {
        return Err(Error::Inconsistent(format!(
            "traffic {traffic} exceeds bound {}",
            cfg.bound
        )));
    }
    if violations > cfg.constraint_count {
        return Err(Error::Inconsistent(format!(
            "{violations} violations but only {} constraints",
            cfg.constraint_count
        )));
    }
    let b = cfg.bound.raw() as u128;
    Ok((b - traffic.raw() as u128) + (cfg.constraint_count - violations) as u128 * b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub partition: Partition,
    pub traffic: Flow,
    pub violations: Violations,
    pub feasible: bool,
    /// Untuned `Y`, in raw flow units.
    pub fitness: u128,
    /// `Y` after the configured tuning; used as the roulette weight.
    pub tuned: f64,
}

impl Evaluation {
    /// Ranking used for elitism and reporting: higher `Y` first, then
    /// feasibility, then lower traffic.
    pub fn rank_cmp(&self, other: &Evaluation) -> Ordering {
        self.fitness
            .cmp(&other.fitness)
            .then(self.feasible.cmp(&other.feasible))
            .then(other.traffic.cmp(&self.traffic))
    }

    pub fn beats(&self, other: &Evaluation) -> bool {
        self.rank_cmp(other) == Ordering::Greater
    }
}

/// Decodes the marked edges into cells and scores the result. The traffic is
/// the weight of the marked edges.
pub fn evaluate(
    g: &FlowGraph,
    inst: &Instance,
    intercellular: &EdgeMask,
    cfg: &FitnessConfig,
) -> Result<Evaluation> {
    let partition = decode_partition(g, intercellular);
    let traffic = intercellular_traffic(g, intercellular);
    finish(inst, partition, traffic, cfg)
}

/// Scores an explicit partition; the traffic is the weight of the edges
/// crossing cell boundaries.
pub fn evaluate_partition(
    g: &FlowGraph,
    inst: &Instance,
    partition: Partition,
    cfg: &FitnessConfig,
) -> Result<Evaluation> {
    let traffic = g
        .edges()
        .iter()
        .filter(|e| !partition.same_cell(e.a, e.b))
        .map(|e| e.weight)
        .sum();
    finish(inst, partition, traffic, cfg)
}

fn finish(inst: &Instance, partition: Partition, traffic: Flow, cfg: &FitnessConfig) -> Result<Evaluation> {
    let violations = count_violations(&partition, inst);
    let y = fitness(traffic, violations.total(), cfg)?;
    Ok(Evaluation {
        partition,
        traffic,
        feasible: violations.total() == 0,
        violations,
        fitness: y,
        tuned: cfg.tune(y),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::graph::{build_graph, compute_traffic};
    use crate::instance::Part;

    fn cfg(bound: u64, u: usize) -> FitnessConfig {
        FitnessConfig {
            bound: Flow::from_raw(bound),
            constraint_count: u,
            tuning: Tuning::Identity,
        }
    }

    #[test]
    fn fitness_formula() {
        assert_eq!(fitness(Flow::from_raw(3), 0, &cfg(10, 2)).unwrap(), 27);
        assert_eq!(fitness(Flow::ZERO, 2, &cfg(10, 2)).unwrap(), 10);
    }

    #[test]
    fn fitness_rejects_inconsistent_inputs() {
        assert!(matches!(
            fitness(Flow::from_raw(11), 0, &cfg(10, 2)),
            Err(Error::Inconsistent(_))
        ));
        assert!(fitness(Flow::ZERO, 3, &cfg(10, 2)).is_err());
    }

    #[test]
    fn fewer_violations_win_on_small_grid() {
        // Exhaustive over traffic in [0, B) and all violation counts.
        let c = cfg(7, 4);
        for z1 in 0..7 {
            for z2 in 0..7 {
                for v1 in 0..=4 {
                    for v2 in v1 + 1..=4 {
                        let y1 = fitness(Flow::from_raw(z1), v1, &c).unwrap();
                        let y2 = fitness(Flow::from_raw(z2), v2, &c).unwrap();
                        assert!(y1 > y2, "z1={z1} v1={v1} z2={z2} v2={v2}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_traffic_ties_one_violation_at_zero_traffic() {
        // Z = B leaves Z' = 0, which is where the penalty step stops being strict.
        let c = cfg(10, 3);
        assert_eq!(
            fitness(Flow::from_raw(10), 0, &c).unwrap(),
            fitness(Flow::ZERO, 1, &c).unwrap()
        );
    }

    #[test]
    fn tuning_parse_and_order() {
        assert_eq!("identity".parse::<Tuning>().unwrap(), Tuning::Identity);
        assert_eq!("power:2.5".parse::<Tuning>().unwrap(), Tuning::Power(2.5));
        assert!("power:-1".parse::<Tuning>().is_err());
        assert!("power:x".parse::<Tuning>().is_err());
        assert!("cubic".parse::<Tuning>().is_err());
        let c = FitnessConfig { tuning: Tuning::Power(3.0), ..cfg(10, 2) };
        let mut prev = -1.0;
        for y in 0..=30u128 {
            let t = c.tune(y);
            assert!(t > prev);
            prev = t;
        }
        assert!((c.tune(30) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn traffic_extremes() {
        let g = demo::five_machine_graph();
        assert_eq!(intercellular_traffic(&g, &EdgeMask::zeros(8)), Flow::ZERO);
        assert_eq!(intercellular_traffic(&g, &EdgeMask::ones(8)), g.total_weight());
        let m = EdgeMask::from_01(&[0, 1, 1, 1, 1, 1, 1, 0]);
        assert_eq!(intercellular_traffic(&g, &m), Flow::from_int(6));
    }

    fn constrained(m: usize, n: usize, sc: &[(usize, usize)], sn: &[(usize, usize)]) -> Instance {
        let parts = vec![Part::new((0..m).collect(), Flow::from_int(1)).unwrap()];
        Instance::new(m, n, parts, sc.iter().copied(), sn.iter().copied()).unwrap()
    }

    #[test]
    fn singletons_break_cohabitation() {
        let inst = constrained(3, 1, &[(0, 1)], &[]);
        let p = Partition::from_labels(&[0, 1, 2]);
        assert_eq!(count_violations(&p, &inst).total(), 1);
        assert_eq!(count_violations(&p, &inst).split_cohabit, 1);
    }

    #[test]
    fn single_cell_counts_size_and_separation() {
        let inst = constrained(6, 5, &[], &[(0, 1)]);
        let p = Partition::from_labels(&[0; 6]);
        let v = count_violations(&p, &inst);
        assert_eq!(v, Violations { oversized_cells: 1, split_cohabit: 0, joined_separate: 1 });
        assert_eq!(v.total(), 2);
    }

    #[test]
    fn worked_partition_violations() {
        let inst = constrained(5, 2, &[(3, 4)], &[(0, 2)]);
        let p = Partition::from_cells(5, &[vec![0, 2], vec![1], vec![3, 4]]);
        let v = count_violations(&p, &inst);
        assert_eq!(v, Violations { oversized_cells: 0, split_cohabit: 0, joined_separate: 1 });
    }

    #[test]
    fn unconstrained_single_cell_is_optimal() {
        let inst = demo::five_machine_instance(5);
        let g = build_graph(&inst, &compute_traffic(&inst));
        let c = FitnessConfig::for_instance(&inst, &g, Tuning::Identity);
        let e = evaluate(&g, &inst, &EdgeMask::zeros(g.edge_count()), &c).unwrap();
        assert_eq!(e.traffic, Flow::ZERO);
        assert!(e.feasible);
        assert_eq!(e.fitness, c.max_fitness());
    }

    #[test]
    fn mask_and_partition_routes_agree() {
        let inst = demo::five_machine_instance(2);
        let g = build_graph(&inst, &compute_traffic(&inst));
        let c = FitnessConfig::for_instance(&inst, &g, Tuning::Identity);
        let mask = EdgeMask::from_01(&[0, 1, 1, 1, 1, 1, 1, 0]);
        let a = evaluate(&g, &inst, &mask, &c).unwrap();
        let b = evaluate_partition(&g, &inst, a.partition.clone(), &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.traffic, Flow::from_int(6));
        assert!(a.feasible);
    }

    #[test]
    fn zero_flow_instance_uses_unit_bound() {
        let inst = Instance::new(3, 2, vec![], [], [(0, 1)]).unwrap();
        let g = build_graph(&inst, &compute_traffic(&inst));
        let c = FitnessConfig::for_instance(&inst, &g, Tuning::Identity);
        assert_eq!(c.bound, Flow::from_int(1));
        assert_eq!(c.constraint_count, 4);
    }
}
