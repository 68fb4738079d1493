//! Generational loop shared by the cut-based and edge-based GAs.
//!
//! One generation:
//! 1. remember the best individual (elite);
//! 2. draw `round(P_c * size)` parents by roulette and replace each
//!    consecutive pair by its two offspring;
//! 3. fill the remaining slots with fresh random individuals;
//! 4. mutate `round(P_m * size)` distinct individuals;
//! 5. evaluate, then overwrite the worst individual with the elite;
//! 6. canonicalize every individual when the encoding asks for it.
//!
//! Canonicalization never changes an individual's decoded partition, so the
//! evaluations from step 5 stay valid.

use std::collections::HashSet;
use std::hash::Hash;
use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::Evaluation;
use crate::ga::{roulette_select, GaParams, GaResult};

/// Attempts allowed per requested individual when drawing a distinct
/// initial population.
pub const INIT_ATTEMPTS_PER_SLOT: usize = 1000;

pub(crate) trait Encoding: Sync {
    type Genome: Clone + Eq + Hash + Send + Sync;

    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Genome;

    fn crossover(
        &self,
        a: &Self::Genome,
        b: &Self::Genome,
        rng: &mut ChaCha8Rng,
    ) -> (Self::Genome, Self::Genome);

    fn mutate(&self, genome: &mut Self::Genome, rng: &mut ChaCha8Rng);

    /// Whether [`Encoding::canonicalize`] is applied to the population.
    fn canonical(&self) -> bool {
        false
    }

    fn canonicalize(&self, _genome: &mut Self::Genome) {}

    /// Number of distinct genomes, when it is small enough to matter.
    fn distinct_limit(&self) -> Option<u128>;

    fn evaluate(&self, genome: &Self::Genome) -> Evaluation;
}

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn initial_population<E: Encoding>(
    enc: &E,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<E::Genome>> {
    if let Some(limit) = enc.distinct_limit() {
        if size as u128 > limit {
            return Err(Error::PopulationExhausted {
                wanted: size,
                got: limit as usize,
                attempts: 0,
            });
        }
    }
    let budget = INIT_ATTEMPTS_PER_SLOT.saturating_mul(size);
    let mut seen = HashSet::with_capacity(size);
    let mut pop = Vec::with_capacity(size);
    let mut attempts = 0;
    while pop.len() < size {
        if attempts == budget {
            return Err(Error::PopulationExhausted {
                wanted: size,
                got: pop.len(),
                attempts,
            });
        }
        attempts += 1;
        let mut genome = enc.random(rng);
        if enc.canonical() {
            enc.canonicalize(&mut genome);
        }
        if seen.insert(genome.clone()) {
            pop.push(genome);
        }
    }
    Ok(pop)
}

fn evaluate_all<E: Encoding>(enc: &E, pop: &[E::Genome]) -> Vec<Evaluation> {
    pop.par_iter().map(|g| enc.evaluate(g)).collect()
}

fn best_index(evals: &[Evaluation]) -> usize {
    let mut best = 0;
    for (i, e) in evals.iter().enumerate().skip(1) {
        if e.beats(&evals[best]) {
            best = i;
        }
    }
    best
}

fn worst_index(evals: &[Evaluation]) -> usize {
    let mut worst = 0;
    for (i, e) in evals.iter().enumerate().skip(1) {
        if evals[worst].beats(e) {
            worst = i;
        }
    }
    worst
}

fn count(rate: f64, size: usize) -> usize {
    ((rate * size as f64).round() as usize).min(size)
}

pub(crate) fn run<E: Encoding>(enc: &E, params: &GaParams) -> Result<GaResult<E::Genome>> {
    params.validate()?;
    let start = Instant::now();
    let size = params.population_size;
    let mut rng = seeded(params.seed);

    let mut pop = initial_population(enc, size, &mut rng)?;
    let mut evals = evaluate_all(enc, &pop);
    let b = best_index(&evals);
    let mut best = (pop[b].clone(), evals[b].clone());
    let mut history = Vec::with_capacity(params.generations + 1);
    history.push(best.1.fitness);
    let mut feasible_found = evals.iter().any(|e| e.feasible);

    let n_mate = count(params.crossover_rate, size);
    let n_mutate = count(params.mutation_rate, size);

    for _ in 0..params.generations {
        let elite_idx = best_index(&evals);
        let elite = (pop[elite_idx].clone(), evals[elite_idx].clone());

        let weights: Vec<f64> = evals.iter().map(|e| e.tuned).collect();
        let parents = roulette_select(&weights, n_mate, &mut rng);
        let mut next = Vec::with_capacity(size);
        for pair in parents.chunks(2) {
            match *pair {
                [a, b] => {
                    let (c, d) = enc.crossover(&pop[a], &pop[b], &mut rng);
                    next.push(c);
                    next.push(d);
                }
                [a] => next.push(pop[a].clone()),
                _ => unreachable!(),
            }
        }
        while next.len() < size {
            next.push(enc.random(&mut rng));
        }
        for i in sample(&mut rng, size, n_mutate) {
            enc.mutate(&mut next[i], &mut rng);
        }

        let mut next_evals = evaluate_all(enc, &next);
        let worst = worst_index(&next_evals);
        next[worst] = elite.0;
        next_evals[worst] = elite.1;

        if enc.canonical() {
            for g in &mut next {
                enc.canonicalize(g);
            }
        }

        pop = next;
        evals = next_evals;
        feasible_found |= evals.iter().any(|e| e.feasible);
        let b = best_index(&evals);
        if evals[b].beats(&best.1) {
            best = (pop[b].clone(), evals[b].clone());
        }
        history.push(best.1.fitness);
    }

    Ok(GaResult {
        best: best.0,
        best_evaluation: best.1,
        best_history: history,
        wall_time: start.elapsed(),
        feasible_found,
    })
}

/// Uniform draw helper used by encodings.
pub(crate) fn coin(rng: &mut ChaCha8Rng) -> bool {
    rng.gen::<bool>()
}
