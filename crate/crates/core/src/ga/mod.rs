//! Cut-based genetic algorithm.
//!
//! A chromosome is `K = ceil(m / N)` parts of `m - 1` bits. Each part is a
//! cut index over the [`CutBasis`]; the OR of the part cuts marks the
//! intercellular edges and the remaining components are the cells. A zero
//! part contributes no cut.
//!
//! Two variants run on the same loop: [`Variant::Cga`] keeps chromosomes as
//! produced, [`Variant::Scga`] canonicalizes every chromosome with
//! [`sort_chromosome`] after each generation and when drawing the initial
//! population.

pub(crate) mod engine;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cut::{decode_partition, index_mask, mask_from_index, CutBasis, Partition};
use crate::error::{Error, Result};
use crate::eval::{evaluate, Evaluation, FitnessConfig, Tuning};
use crate::graph::FlowGraph;
use crate::instance::Instance;
use crate::mask::EdgeMask;
use crate::problem::Problem;

pub use engine::INIT_ATTEMPTS_PER_SLOT;

/// Crossover probability used when none is given.
pub const DEFAULT_CROSSOVER_RATE: f64 = 0.7;
/// Mutation ratio used when none is given.
pub const DEFAULT_MUTATION_RATE: f64 = 0.03;

/// K cut indices, one per part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chromosome(pub Vec<u64>);

impl Chromosome {
    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    /// The allele chain, part by part; within a part, bit `i` (basis cut
    /// `i`) comes `i`-th.
    pub fn bits(&self, bits_per_part: usize) -> Vec<bool> {
        self.0
            .iter()
            .flat_map(|&p| (0..bits_per_part).map(move |i| p >> i & 1 == 1))
            .collect()
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// No sorting procedure.
    Cga,
    /// Chromosomes are canonicalized with [`sort_chromosome`].
    Scga,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cga" => Ok(Variant::Cga),
            "scga" => Ok(Variant::Scga),
            _ => Err(Error::InvalidParameter(format!("unknown GA variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub variant: Variant,
    pub seed: u64,
    pub tuning: Tuning,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 100,
            crossover_rate: DEFAULT_CROSSOVER_RATE,
            mutation_rate: DEFAULT_MUTATION_RATE,
            variant: Variant::Scga,
            seed: 0,
            tuning: Tuning::Identity,
        }
    }
}

impl GaParams {
    pub fn new(population_size: usize, generations: usize, variant: Variant, seed: u64) -> Self {
        Self {
            population_size,
            generations,
            variant,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "population size must be at least 2, got {}",
                self.population_size
            )));
        }
        for (name, rate) in [("crossover", self.crossover_rate), ("mutation", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidParameter(format!(
                    "{name} rate must lie in [0, 1], got {rate}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GaResult<G> {
    pub best: G,
    pub best_evaluation: Evaluation,
    /// Best `Y` after initialization and after each generation
    /// (`generations + 1` entries, non-decreasing).
    pub best_history: Vec<u128>,
    pub wall_time: Duration,
    /// Whether any feasible individual was ever evaluated.
    pub feasible_found: bool,
}

/// Number of cut parts, `ceil(m / N)`.
pub fn compute_k(machines: usize, max_cell_size: usize) -> usize {
    assert!(max_cell_size >= 1);
    machines.div_ceil(max_cell_size)
}

/// OR of the part cuts; zero parts contribute nothing.
pub fn chromosome_mask(ch: &Chromosome, basis: &CutBasis) -> EdgeMask {
    let mut mask = EdgeMask::zeros(basis.edge_count());
    for &part in ch.parts() {
        assert!(part <= basis.max_index(), "part {part} out of range");
        if part != 0 {
            mask |= &mask_from_index(basis, part);
        }
    }
    mask
}

pub fn decode_chromosome(ch: &Chromosome, basis: &CutBasis, g: &FlowGraph) -> Partition {
    decode_partition(g, &chromosome_mask(ch, basis))
}

/// Parts in descending order, each repeated value replaced by zero, zeros
/// last. The decoded partition is unchanged because OR is idempotent.
pub fn sort_chromosome(ch: &Chromosome) -> Chromosome {
    let mut nonzero: Vec<u64> = ch.0.iter().copied().filter(|&p| p != 0).collect();
    nonzero.sort_unstable_by(|a, b| b.cmp(a));
    nonzero.dedup();
    nonzero.resize(ch.0.len(), 0);
    Chromosome(nonzero)
}

/// Shape of a cut chromosome, enough to draw and vary individuals without a
/// graph.
#[derive(Debug, Clone, Copy)]
struct CutShape {
    parts: usize,
    bits: usize,
    sorting: bool,
}

impl CutShape {
    fn new(machines: usize, parts: usize, variant: Variant) -> Result<Self> {
        let bits = machines - 1;
        if bits > 64 {
            return Err(Error::TooManyMachines {
                what: "the cut-based GA",
                limit: 65,
                machines,
            });
        }
        Ok(Self {
            parts,
            bits,
            sorting: variant == Variant::Scga,
        })
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Chromosome {
        let mask = index_mask(self.bits);
        Chromosome((0..self.parts).map(|_| rng.gen::<u64>() & mask).collect())
    }

    fn distinct_limit(&self) -> Option<u128> {
        let variant = if self.sorting { Variant::Scga } else { Variant::Cga };
        distinct_chromosomes(self.bits + 1, self.parts, variant)
    }
}

/// Number of distinct chromosomes for `machines` machines and `parts` parts,
/// counting sorted forms only for [`Variant::Scga`]. `None` when the count
/// does not fit in a `u128`.
///
/// A population larger than this cannot be drawn without repetition.
pub fn distinct_chromosomes(machines: usize, parts: usize, variant: Variant) -> Option<u128> {
    let bits = machines.checked_sub(1)?;
    if bits >= 128 {
        return None;
    }
    let values = 1u128 << bits;
    match variant {
        Variant::Cga => {
            let total_bits = bits.checked_mul(parts)?;
            (total_bits < 128).then(|| 1u128 << total_bits)
        }
        Variant::Scga => {
            // A sorted chromosome is a set of at most `parts` nonzero indices.
            let nonzero = values - 1;
            let mut term = 1u128;
            let mut sum = 1u128;
            for j in 1..=parts as u128 {
                if j > nonzero {
                    break;
                }
                term = term.checked_mul(nonzero - j + 1)? / j;
                sum = sum.checked_add(term)?;
            }
            Some(sum)
        }
    }
}

/// Draws `population_size` distinct chromosomes from `params.seed`. In the
/// sorted variant, distinctness is checked on the sorted form.
pub fn init_population(params: &GaParams, machines: usize, parts: usize) -> Result<Vec<Chromosome>> {
    let shape = CutShape::new(machines, parts, params.variant)?;
    let mut rng = engine::seeded(params.seed);
    engine::initial_population(&ShapeOnly(shape), params.population_size, &mut rng)
}

/// Index chosen by a roulette spin with `draw` uniform in `[0, 1)`.
/// All-zero weights fall back to uniform choice.
pub fn roulette_pick(weights: &[f64], draw: f64) -> usize {
    assert!(!weights.is_empty());
    let total: f64 = weights.iter().sum();
    if total <= 0.0 || !total.is_finite() {
        return ((draw * weights.len() as f64) as usize).min(weights.len() - 1);
    }
    let target = draw * total;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i;
        }
    }
    weights.len() - 1
}

/// `count` fitness-proportional draws with replacement.
pub fn roulette_select(weights: &[f64], count: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 || !total.is_finite() {
        return (0..count).map(|_| rng.gen_range(0..weights.len())).collect();
    }
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for &w in weights {
        acc += w;
        cumulative.push(acc);
    }
    (0..count)
        .map(|_| {
            let target = rng.gen::<f64>() * acc;
            cumulative
                .partition_point(|&c| c <= target)
                .min(weights.len() - 1)
        })
        .collect()
}

/// One-point crossover with the cut at chain position `at`: the first `at`
/// alleles come from one parent and the rest from the other.
pub fn crossover_any_at(
    a: &Chromosome,
    b: &Chromosome,
    bits_per_part: usize,
    at: usize,
) -> (Chromosome, Chromosome) {
    assert_eq!(a.0.len(), b.0.len());
    let splice = |x: &Chromosome, y: &Chromosome| {
        Chromosome(
            x.0.iter()
                .zip(&y.0)
                .enumerate()
                .map(|(j, (&xp, &yp))| {
                    let start = j * bits_per_part;
                    if start + bits_per_part <= at {
                        xp
                    } else if start >= at {
                        yp
                    } else {
                        let low = index_mask(at - start);
                        (xp & low) | (yp & !low)
                    }
                })
                .collect(),
        )
    };
    (splice(a, b), splice(b, a))
}

/// One-point crossover anywhere in the allele chain.
pub fn crossover_any(
    a: &Chromosome,
    b: &Chromosome,
    bits_per_part: usize,
    rng: &mut ChaCha8Rng,
) -> (Chromosome, Chromosome) {
    let len = a.0.len() * bits_per_part;
    if len < 2 {
        return (a.clone(), b.clone());
    }
    let at = rng.gen_range(1..len);
    crossover_any_at(a, b, bits_per_part, at)
}

/// Exchanges whole parts after part boundary `boundary` (in `1..K`).
pub fn crossover_boundary_at(a: &Chromosome, b: &Chromosome, boundary: usize) -> (Chromosome, Chromosome) {
    assert_eq!(a.0.len(), b.0.len());
    let mut c = a.0[..boundary].to_vec();
    c.extend_from_slice(&b.0[boundary..]);
    let mut d = b.0[..boundary].to_vec();
    d.extend_from_slice(&a.0[boundary..]);
    (Chromosome(c), Chromosome(d))
}

/// One-point crossover restricted to part boundaries; with a single part
/// the parents are returned unchanged.
pub fn crossover_boundary(a: &Chromosome, b: &Chromosome, rng: &mut ChaCha8Rng) -> (Chromosome, Chromosome) {
    let k = a.0.len();
    if k < 2 {
        return (a.clone(), b.clone());
    }
    crossover_boundary_at(a, b, rng.gen_range(1..k))
}

/// Replaces one uniformly chosen part by a uniform index in `[0, 2^bits - 1]`.
pub fn mutate(ch: &mut Chromosome, bits_per_part: usize, rng: &mut ChaCha8Rng) {
    let j = rng.gen_range(0..ch.0.len());
    ch.0[j] = rng.gen::<u64>() & index_mask(bits_per_part);
}

struct ShapeOnly(CutShape);

impl engine::Encoding for ShapeOnly {
    type Genome = Chromosome;

    fn random(&self, rng: &mut ChaCha8Rng) -> Chromosome {
        self.0.random(rng)
    }

    fn crossover(&self, a: &Chromosome, b: &Chromosome, _: &mut ChaCha8Rng) -> (Chromosome, Chromosome) {
        (a.clone(), b.clone())
    }

    fn mutate(&self, _: &mut Chromosome, _: &mut ChaCha8Rng) {}

    fn canonical(&self) -> bool {
        self.0.sorting
    }

    fn canonicalize(&self, g: &mut Chromosome) {
        *g = sort_chromosome(g);
    }

    fn distinct_limit(&self) -> Option<u128> {
        self.0.distinct_limit()
    }

    fn evaluate(&self, _: &Chromosome) -> Evaluation {
        unreachable!("shape-only encoding is never evaluated")
    }
}

struct CutEncoding<'a> {
    shape: CutShape,
    basis: &'a CutBasis,
    graph: &'a FlowGraph,
    instance: &'a Instance,
    config: FitnessConfig,
}

impl engine::Encoding for CutEncoding<'_> {
    type Genome = Chromosome;

    fn random(&self, rng: &mut ChaCha8Rng) -> Chromosome {
        self.shape.random(rng)
    }

    fn crossover(&self, a: &Chromosome, b: &Chromosome, rng: &mut ChaCha8Rng) -> (Chromosome, Chromosome) {
        if engine::coin(rng) {
            crossover_any(a, b, self.shape.bits, rng)
        } else {
            crossover_boundary(a, b, rng)
        }
    }

    fn mutate(&self, g: &mut Chromosome, rng: &mut ChaCha8Rng) {
        mutate(g, self.shape.bits, rng);
    }

    fn canonical(&self) -> bool {
        self.shape.sorting
    }

    fn canonicalize(&self, g: &mut Chromosome) {
        *g = sort_chromosome(g);
    }

    fn distinct_limit(&self) -> Option<u128> {
        self.shape.distinct_limit()
    }

    fn evaluate(&self, g: &Chromosome) -> Evaluation {
        let mask = chromosome_mask(g, self.basis);
        evaluate(self.graph, self.instance, &mask, &self.config)
            .expect("traffic never exceeds total flow")
    }
}

/// Runs the cut-based GA (CGA or SCGA per `params.variant`).
pub fn run_ga(problem: &Problem, params: &GaParams) -> Result<GaResult<Chromosome>> {
    let inst = problem.instance();
    let basis = problem.basis()?;
    let k = compute_k(inst.machine_count(), inst.max_cell_size());
    let enc = CutEncoding {
        shape: CutShape::new(inst.machine_count(), k, params.variant)?,
        basis,
        graph: problem.graph(),
        instance: inst,
        config: problem.fitness_config(params.tuning),
    };
    engine::run(&enc, params)
}
