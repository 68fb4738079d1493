//! Multi-restart k-means over the rows of the traffic matrix.
//!
//! Every machine is the point formed by its row of the traffic matrix.
//! For each cluster count `k` from `ceil(m / N)` to `m - 1`, Lloyd's
//! algorithm runs `restarts` times from `k` distinct random rows; each
//! clustering is scored like any other partition and the best one kept.
//! Clustering ignores the pair constraints entirely.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;

use crate::cut::Partition;
use crate::error::{Error, Result};
use crate::eval::{evaluate_partition, Evaluation, Tuning};
use crate::ga::compute_k;
use crate::ga::engine::seeded;
use crate::problem::Problem;

/// Lloyd iterations allowed per run.
pub const MAX_LLOYD_ITERATIONS: usize = 100;

#[derive(Debug, Clone)]
pub struct KMeansResult {
    pub best: Evaluation,
    /// Cluster count that produced `best`.
    pub cluster_count: usize,
    pub feasible_found: bool,
    pub wall_time: Duration,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = dist2(point, centroid);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Lloyd's algorithm from `k` distinct random points, iterated until the
/// assignment stops changing or [`MAX_LLOYD_ITERATIONS`] is reached.
///
/// An empty cluster is re-seeded with the point farthest from its current
/// centroid (taken from a cluster with at least two members), so every
/// returned label in `0..k` is used.
pub fn lloyd(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = points.len();
    assert!(k >= 1 && k <= n, "need 1 <= k <= {n}, got {k}");
    let mut centroids: Vec<Vec<f64>> = sample(rng, n, k).iter().map(|i| points[i].clone()).collect();
    let mut labels: Vec<usize> = Vec::new();

    for _ in 0..MAX_LLOYD_ITERATIONS {
        let mut next: Vec<usize> = points.iter().map(|p| nearest(p, &centroids)).collect();
        repair_empty(points, &mut centroids, &mut next, k);
        if next == labels {
            break;
        }
        labels = next;
        for (c, centroid) in centroids.iter_mut().enumerate() {
            let members: Vec<&Vec<f64>> = points
                .iter()
                .zip(&labels)
                .filter(|(_, &l)| l == c)
                .map(|(p, _)| p)
                .collect();
            for (d, value) in centroid.iter_mut().enumerate() {
                *value = members.iter().map(|p| p[d]).sum::<f64>() / members.len() as f64;
            }
        }
    }
    labels
}

fn repair_empty(points: &[Vec<f64>], centroids: &mut [Vec<f64>], labels: &mut [usize], k: usize) {
    loop {
        let mut sizes = vec![0usize; k];
        for &l in labels.iter() {
            sizes[l] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        let donor = (0..points.len())
            .filter(|&i| sizes[labels[i]] > 1)
            .max_by(|&a, &b| {
                let da = dist2(&points[a], &centroids[labels[a]]);
                let db = dist2(&points[b], &centroids[labels[b]]);
                // Ties resolve to the lowest index.
                da.partial_cmp(&db).unwrap().then(b.cmp(&a))
            })
            .expect("k <= n guarantees a cluster with two members");
        centroids[empty] = points[donor].clone();
        labels[donor] = empty;
    }
}

fn better(candidate: &Evaluation, incumbent: &Evaluation) -> bool {
    match (candidate.feasible, incumbent.feasible) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => candidate.traffic < incumbent.traffic,
        (false, false) => candidate.beats(incumbent),
    }
}

/// Runs k-means for every `k` in `ceil(m / N) ..= m - 1` (just
/// `ceil(m / N)` when that exceeds `m - 1`), `restarts` times each.
pub fn run_multikmeans(problem: &Problem, restarts: usize, seed: u64) -> Result<KMeansResult> {
    if restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let start = Instant::now();
    let inst = problem.instance();
    let m = inst.machine_count();
    let points: Vec<Vec<f64>> = (0..m)
        .map(|i| problem.traffic().row(i).iter().map(|f| f.to_f64()).collect())
        .collect();
    let cfg = problem.fitness_config(Tuning::Identity);
    let k_min = compute_k(m, inst.max_cell_size()).min(m);
    let k_max = (m - 1).max(k_min);

    let mut rng = seeded(seed);
    let mut best: Option<(Evaluation, usize)> = None;
    for k in k_min..=k_max {
        for _ in 0..restarts {
            let labels = lloyd(&points, k, &mut rng);
            let eval = evaluate_partition(problem.graph(), inst, Partition::from_labels(&labels), &cfg)?;
            if best.as_ref().is_none_or(|(b, _)| better(&eval, b)) {
                best = Some((eval, k));
            }
        }
    }
    let (best, cluster_count) = best.expect("at least one k and one restart");
    Ok(KMeansResult {
        feasible_found: best.feasible,
        best,
        cluster_count,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::Flow;
    use crate::instance::{generate_instance, Instance};

    fn two_triangles() -> Instance {
        Instance::parse(
            "machines 6\nmax_cell_size 3\n\
             part 10 : 1 2 3 1\npart 10 : 4 5 6 4\n",
        )
        .unwrap()
    }

    #[test]
    fn separable_groups_are_recovered() {
        let p = Problem::new(two_triangles());
        let r = run_multikmeans(&p, 10, 3).unwrap();
        assert!(r.feasible_found);
        assert_eq!(r.best.traffic, Flow::ZERO);
        assert_eq!(r.cluster_count, 2);
        assert_eq!(r.best.partition.cells(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn lloyd_recovers_well_separated_pairs() {
        let points = vec![
            vec![0.0, 0.0],
            vec![0.1, 0.0],
            vec![5.0, 5.0],
            vec![5.1, 5.0],
        ];
        for seed in 0..20 {
            let labels = lloyd(&points, 2, &mut seeded(seed));
            let p = Partition::from_labels(&labels);
            assert_eq!(p.cells(), &[vec![0, 1], vec![2, 3]], "seed {seed}");
        }
    }

    #[test]
    fn no_empty_clusters() {
        // Identical points force ties and empty clusters on every start.
        let points = vec![vec![1.0, 1.0]; 6];
        for k in 1..=6 {
            for seed in 0..5 {
                let labels = lloyd(&points, k, &mut seeded(seed));
                let used: std::collections::BTreeSet<_> = labels.iter().copied().collect();
                assert_eq!(used.len(), k, "k={k}");
            }
        }
    }

    #[test]
    fn reports_unfeasible_outcome() {
        // N = 1 forces singletons, which always split the cohabiting pair.
        let inst = Instance::parse(
            "machines 3\nmax_cell_size 1\npart 5 : 1 2 3\ncohabit 1 2\n",
        )
        .unwrap();
        let r = run_multikmeans(&Problem::new(inst), 5, 0).unwrap();
        assert!(!r.feasible_found);
        assert_eq!(r.cluster_count, 3);
        assert_eq!(r.best.violations.split_cohabit, 1);
    }

    #[test]
    fn reproducible() {
        let p = Problem::new(generate_instance(12, 30, 4, 5, 8).unwrap());
        let a = run_multikmeans(&p, 4, 99).unwrap();
        let b = run_multikmeans(&p, 4, 99).unwrap();
        assert_eq!(a.best, b.best);
        assert!(run_multikmeans(&p, 0, 1).is_err());
    }
}
