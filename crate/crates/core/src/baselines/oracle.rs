//! Exhaustive search over all set partitions of the machines.
//!
//! Partitions are enumerated as restricted-growth strings (machine `i` joins
//! one of the cells opened by machines `0..i` or opens the next one). Every
//! constraint can be decided as soon as both machines involved are placed,
//! and traffic only grows as machines are added, so branches that are
//! infeasible or already no better than the incumbent are cut early. The
//! first optimum in enumeration order is returned.

use std::time::{Duration, Instant};

use crate::cut::Partition;
use crate::error::{Error, Result};
use crate::eval::{evaluate_partition, Evaluation, Tuning};
use crate::flow::Flow;
use crate::problem::Problem;

/// Bell(12) is about 4.2 million; larger instances are refused.
pub const MAX_ORACLE_MACHINES: usize = 12;

#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Minimum-traffic feasible partition, or `None` when none exists.
    pub best: Option<Evaluation>,
    pub wall_time: Duration,
}

struct Search {
    n: usize,
    /// For machine `i`: earlier neighbours `j < i` with edge weight.
    earlier_edges: Vec<Vec<(usize, u64)>>,
    earlier_cohabit: Vec<Vec<usize>>,
    earlier_separate: Vec<Vec<usize>>,
    max_cell: usize,
    labels: Vec<usize>,
    sizes: Vec<usize>,
    best_traffic: Option<u64>,
    best_labels: Vec<usize>,
}

impl Search {
    fn place(&mut self, i: usize, cells: usize, traffic: u64) {
        if i == self.n {
            if self.best_traffic.is_none_or(|b| traffic < b) {
                self.best_traffic = Some(traffic);
                self.best_labels = self.labels.clone();
            }
            return;
        }
        for c in 0..=cells.min(self.n - 1) {
            if self.sizes[c] + 1 > self.max_cell {
                continue;
            }
            if self.earlier_cohabit[i].iter().any(|&j| self.labels[j] != c)
                || self.earlier_separate[i].iter().any(|&j| self.labels[j] == c)
            {
                continue;
            }
            let added: u64 = self.earlier_edges[i]
                .iter()
                .filter(|&&(j, _)| self.labels[j] != c)
                .map(|&(_, w)| w)
                .sum();
            let total = traffic + added;
            if self.best_traffic.is_some_and(|b| total >= b) {
                continue;
            }
            self.labels[i] = c;
            self.sizes[c] += 1;
            self.place(i + 1, if c == cells { cells + 1 } else { cells }, total);
            self.sizes[c] -= 1;
        }
    }
}

pub fn exhaustive_oracle(problem: &Problem) -> Result<OracleResult> {
    let start = Instant::now();
    let inst = problem.instance();
    let n = inst.machine_count();
    if n > MAX_ORACLE_MACHINES {
        return Err(Error::TooManyMachines {
            what: "the exhaustive oracle",
            limit: MAX_ORACLE_MACHINES,
            machines: n,
        });
    }
    let mut earlier_edges = vec![Vec::new(); n];
    for e in problem.graph().edges() {
        earlier_edges[e.b].push((e.a, e.weight.raw()));
    }
    let mut earlier_cohabit = vec![Vec::new(); n];
    for &(a, b) in inst.cohabit() {
        earlier_cohabit[b].push(a);
    }
    let mut earlier_separate = vec![Vec::new(); n];
    for &(a, b) in inst.separate() {
        earlier_separate[b].push(a);
    }
    let mut search = Search {
        n,
        earlier_edges,
        earlier_cohabit,
        earlier_separate,
        max_cell: inst.max_cell_size(),
        labels: vec![0; n],
        sizes: vec![0; n],
        best_traffic: None,
        best_labels: Vec::new(),
    };
    search.place(0, 0, 0);

    let best = match search.best_traffic {
        None => None,
        Some(raw) => {
            let cfg = problem.fitness_config(Tuning::Identity);
            let eval = evaluate_partition(
                problem.graph(),
                inst,
                Partition::from_labels(&search.best_labels),
                &cfg,
            )?;
            debug_assert_eq!(eval.traffic, Flow::from_raw(raw));
            debug_assert!(eval.feasible);
            Some(eval)
        }
    };
    Ok(OracleResult {
        best,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::FitnessConfig;
    use crate::instance::{generate_instance, Instance};

    /// Independent brute force: every labelling in `[0, m)^m`.
    fn brute_force(problem: &Problem) -> Option<Flow> {
        let inst = problem.instance();
        let m = inst.machine_count();
        let cfg = FitnessConfig::for_instance(inst, problem.graph(), Tuning::Identity);
        let mut labels = vec![0usize; m];
        let mut best: Option<Flow> = None;
        loop {
            let e = evaluate_partition(problem.graph(), inst, Partition::from_labels(&labels), &cfg)
                .unwrap();
            if e.feasible && best.is_none_or(|b| e.traffic < b) {
                best = Some(e.traffic);
            }
            let mut i = 0;
            loop {
                if i == m {
                    return best;
                }
                labels[i] += 1;
                if labels[i] < m {
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn chain_of_four() {
        let inst = Instance::parse(
            "machines 4\nmax_cell_size 2\npart 4 : 1 2\npart 1 : 2 3\npart 3 : 3 4\n",
        )
        .unwrap();
        let r = exhaustive_oracle(&Problem::new(inst)).unwrap();
        let best = r.best.unwrap();
        assert_eq!(best.partition.cells(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(best.traffic, Flow::from_int(1));
    }

    #[test]
    fn unconstrained_is_single_cell() {
        let p = Problem::new(generate_instance(7, 14, 7, 5, 1).unwrap());
        let best = exhaustive_oracle(&p).unwrap().best.unwrap();
        assert_eq!(best.partition.cell_count(), 1);
        assert_eq!(best.traffic, Flow::ZERO);
    }

    #[test]
    fn all_pairs_separated_forces_singletons() {
        let mut text = String::from("machines 4\nmax_cell_size 1\npart 2 : 1 2 3 4 1\n");
        for a in 1..=4 {
            for b in a + 1..=4 {
                text.push_str(&format!("separate {a} {b}\n"));
            }
        }
        let p = Problem::new(Instance::parse(&text).unwrap());
        let best = exhaustive_oracle(&p).unwrap().best.unwrap();
        assert_eq!(best.partition.cell_count(), 4);
        assert_eq!(best.traffic, p.graph().total_weight());
    }

    #[test]
    fn reports_infeasibility() {
        let inst = Instance::parse(
            "machines 3\nmax_cell_size 1\npart 1 : 1 2\ncohabit 1 2\n",
        )
        .unwrap();
        assert!(exhaustive_oracle(&Problem::new(inst)).unwrap().best.is_none());
    }

    #[test]
    fn size_guard() {
        let p = Problem::new(generate_instance(13, 5, 4, 4, 0).unwrap());
        assert!(matches!(
            exhaustive_oracle(&p),
            Err(Error::TooManyMachines { limit: 12, .. })
        ));
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..12u64 {
            let m = 3 + (seed as usize % 4);
            let base = generate_instance(m, 2 * m, 2 + seed as usize % 2, 4, seed).unwrap();
            // Add one cohabitation and one separation pair on odd seeds.
            let inst = if seed % 2 == 1 {
                Instance::new(m, base.max_cell_size(), base.parts().to_vec(), [(0, 1)], [(1, 2)]).unwrap()
            } else {
                base
            };
            let p = Problem::new(inst);
            let got = exhaustive_oracle(&p).unwrap().best.map(|e| e.traffic);
            assert_eq!(got, brute_force(&p), "seed {seed}");
        }
    }
}
