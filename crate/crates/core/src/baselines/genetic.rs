//! The two genetic-algorithm baselines.
//!
//! GAD evolves job permutations with an order-preserving two-point crossover
//! and single-swap mutation. MGA evolves type sequences instead: crossover
//! copies all genes of a random type subset from one parent, mutation
//! shuffles a random contiguous subsequence, and decoding maps the i-th
//! occurrence of a type to the i-th job of that type's deadline-sorted chain,
//! so every decoded schedule has its types in earliest-due-date order by
//! construction.
//!
//! Both algorithms draw all randomness from one seeded ChaCha stream. Per
//! generation and offspring the draw order is: parent indices (two), the
//! crossover coin, crossover parameters (GAD: two cut points; MGA: subset
//! size, then the subset sample), the mutation coin, and mutation parameters
//! (GAD: two positions; MGA: two positions plus the shuffle).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fitness, fitness_scale};
use crate::edds::{edd_chains, EddChain};
use crate::model::{Instance, JobId, Schedule, TypeId};
use crate::report::{Budget, Improvement, RunReport, Termination};

/// Genetic-algorithm parameters. Values outside their valid ranges are
/// clamped (`population >= 2`, probabilities into `[0, 1]`).
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub selection_rate: f64,
    pub seed: u64,
}

impl GaConfig {
    pub fn new(seed: u64) -> Self {
        GaConfig {
            population: 100,
            crossover_prob: 0.9,
            mutation_prob: 0.01,
            selection_rate: 0.2,
            seed,
        }
    }
}

/// State snapshot after one generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaEvent {
    pub generation: u64,
    pub elite_fitness: u128,
    pub population_size: usize,
}

struct GaContext<'a> {
    instance: &'a Instance,
    chains: Vec<EddChain>,
    scale: u128,
}

trait Chromosome: Clone {
    fn random(ctx: &GaContext, rng: &mut ChaCha8Rng) -> Self;
    fn crossover(ctx: &GaContext, a: &Self, b: &Self, rng: &mut ChaCha8Rng) -> Self;
    fn mutate(&mut self, ctx: &GaContext, rng: &mut ChaCha8Rng);
    fn decode(&self, ctx: &GaContext) -> Schedule;
}

/// Draws a uniformly random interleaving of the deadline-sorted chains; the
/// result is exactly a uniform sample of the earliest-due-date schedules.
fn random_edds_order(ctx: &GaContext, rng: &mut ChaCha8Rng) -> Vec<JobId> {
    let n = ctx.instance.len();
    let mut taken = vec![0usize; ctx.chains.len()];
    let mut order = Vec::with_capacity(n);
    for remaining in (1..=n).rev() {
        let mut r = rng.gen_range(0..remaining);
        for (c, chain) in ctx.chains.iter().enumerate() {
            let left = chain.job_ids.len() - taken[c];
            if r < left {
                order.push(chain.job_ids[taken[c]]);
                taken[c] += 1;
                break;
            }
            r -= left;
        }
    }
    order
}

/// Permutation chromosome (GAD).
#[derive(Clone)]
struct PermGenes(Vec<JobId>);

impl Chromosome for PermGenes {
    fn random(ctx: &GaContext, rng: &mut ChaCha8Rng) -> Self {
        PermGenes(random_edds_order(ctx, rng))
    }

    /// Two-point crossover: the segment between the cut points comes from
    /// parent `a`; the remaining positions take the other jobs in parent
    /// `b`'s relative order, which keeps the child a permutation.
    fn crossover(ctx: &GaContext, a: &Self, b: &Self, rng: &mut ChaCha8Rng) -> Self {
        let n = ctx.instance.len();
        let c1 = rng.gen_range(0..=n);
        let c2 = rng.gen_range(0..=n);
        let (lo, hi) = (c1.min(c2), c1.max(c2));
        let mut in_segment = vec![false; n];
        for &JobId(id) in &a.0[lo..hi] {
            in_segment[id] = true;
        }
        let mut fill = b.0.iter().filter(|&&JobId(id)| !in_segment[id]);
        let mut child = Vec::with_capacity(n);
        child.extend(fill.by_ref().take(lo));
        child.extend_from_slice(&a.0[lo..hi]);
        child.extend(fill);
        PermGenes(child)
    }

    fn mutate(&mut self, ctx: &GaContext, rng: &mut ChaCha8Rng) {
        let n = ctx.instance.len();
        if n < 2 {
            return;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        self.0.swap(i, j);
    }

    fn decode(&self, _ctx: &GaContext) -> Schedule {
        Schedule::from_order_unchecked(self.0.clone())
    }
}

/// Type-sequence chromosome (MGA).
#[derive(Clone)]
struct TypeGenes(Vec<TypeId>);

impl Chromosome for TypeGenes {
    fn random(ctx: &GaContext, rng: &mut ChaCha8Rng) -> Self {
        let order = random_edds_order(ctx, rng);
        TypeGenes(order.into_iter().map(|j| ctx.instance.type_of(j)).collect())
    }

    /// Type-based crossover: a random non-empty subset of the occurring
    /// types is copied positionally from parent `b`; the remaining slots are
    /// filled with parent `a`'s other genes in their relative order. Both
    /// parents carry the instance's type multiset, so the child does too.
    fn crossover(ctx: &GaContext, a: &Self, b: &Self, rng: &mut ChaCha8Rng) -> Self {
        let k = ctx.chains.len();
        let subset_size = rng.gen_range(1..=k);
        let mut pool: Vec<TypeId> = ctx.chains.iter().map(|c| c.type_id).collect();
        for i in 0..subset_size {
            let j = rng.gen_range(i..k);
            pool.swap(i, j);
        }
        let mut selected = vec![false; ctx.instance.type_count()];
        for &TypeId(t) in &pool[..subset_size] {
            selected[t] = true;
        }
        let mut fill = a.0.iter().filter(|&&TypeId(t)| !selected[t]);
        let child = b
            .0
            .iter()
            .map(|&gene| {
                if selected[gene.0] {
                    gene
                } else {
                    *fill.next().expect("parents share one type multiset")
                }
            })
            .collect();
        TypeGenes(child)
    }

    /// Shuffles the subsequence between two random positions (inclusive).
    fn mutate(&mut self, ctx: &GaContext, rng: &mut ChaCha8Rng) {
        let n = ctx.instance.len();
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let (lo, hi) = (i.min(j), i.max(j));
        let span = &mut self.0[lo..=hi];
        for idx in (1..span.len()).rev() {
            let pick = rng.gen_range(0..=idx);
            span.swap(idx, pick);
        }
    }

    /// The i-th occurrence of a type becomes the i-th job of that type's
    /// deadline-sorted chain, so decoded schedules are always
    /// earliest-due-date schedules.
    fn decode(&self, ctx: &GaContext) -> Schedule {
        let mut taken = vec![0usize; ctx.instance.type_count()];
        let mut chain_of = vec![usize::MAX; ctx.instance.type_count()];
        for (c, chain) in ctx.chains.iter().enumerate() {
            chain_of[chain.type_id.0] = c;
        }
        let order = self
            .0
            .iter()
            .map(|&TypeId(t)| {
                let job = ctx.chains[chain_of[t]].job_ids[taken[t]];
                taken[t] += 1;
                job
            })
            .collect();
        Schedule::from_order_unchecked(order)
    }
}

struct Individual<G> {
    genes: G,
    fitness: u128,
}

fn run_ga<G: Chromosome>(
    instance: &Instance,
    config: &GaConfig,
    budget: Budget,
    observer: &mut dyn FnMut(GaEvent),
) -> RunReport {
    let ctx = GaContext {
        instance,
        chains: edd_chains(instance),
        scale: fitness_scale(instance),
    };
    let population_size = config.population.max(2);
    let crossover_prob = config.crossover_prob.clamp(0.0, 1.0);
    let mutation_prob = config.mutation_prob.clamp(0.0, 1.0);
    let pool_size = ((config.selection_rate.clamp(0.0, 1.0) * population_size as f64).ceil()
        as usize)
        .clamp(2, population_size);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let evaluate = |genes: &G| {
        let schedule = genes.decode(&ctx);
        let objective = ctx
            .instance
            .evaluate(&schedule)
            .expect("decoded chromosomes are valid schedules")
            .objective();
        (fitness(ctx.scale, objective), schedule, objective)
    };

    let mut population: Vec<Individual<G>> = (0..population_size)
        .map(|_| {
            let genes = G::random(&ctx, &mut rng);
            let fitness = evaluate(&genes).0;
            Individual { genes, fitness }
        })
        .collect();

    let mut best_index = (0..population_size)
        .min_by_key(|&i| population[i].fitness)
        .unwrap();
    let (mut best_fitness, mut best_schedule, mut best_objective) =
        evaluate(&population[best_index].genes);
    let mut trajectory: Vec<Improvement> = Vec::new();
    let mut tracker = budget.tracker();

    while tracker.admit() {
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by_key(|&i| (population[i].fitness, i));
        let elite = population[ranked[0]].genes.clone();
        let elite_fitness = population[ranked[0]].fitness;
        let pool: Vec<usize> = ranked[..pool_size].to_vec();

        let mut offspring: Vec<Individual<G>> = (0..population_size)
            .map(|_| {
                let pa = &population[pool[rng.gen_range(0..pool_size)]].genes;
                let pb = &population[pool[rng.gen_range(0..pool_size)]].genes;
                let mut child = if rng.gen_bool(crossover_prob) {
                    G::crossover(&ctx, pa, pb, &mut rng)
                } else {
                    pa.clone()
                };
                if rng.gen_bool(mutation_prob) {
                    child.mutate(&ctx, &mut rng);
                }
                let fitness = evaluate(&child).0;
                Individual {
                    genes: child,
                    fitness,
                }
            })
            .collect();

        // Selection: the previous best survives unconditionally; the rest of
        // the next population are the best population_size - 1 offspring.
        let mut ranked_offspring: Vec<usize> = (0..offspring.len()).collect();
        ranked_offspring.sort_by_key(|&i| (offspring[i].fitness, i));
        ranked_offspring.truncate(population_size - 1);
        ranked_offspring.sort_unstable();
        let mut next = Vec::with_capacity(population_size);
        next.push(Individual {
            fitness: elite_fitness,
            genes: elite,
        });
        for i in ranked_offspring.into_iter().rev() {
            next.push(offspring.swap_remove(i));
        }
        population = next;

        best_index = (0..population.len())
            .min_by_key(|&i| population[i].fitness)
            .unwrap();
        if population[best_index].fitness < best_fitness {
            let (f, schedule, objective) = evaluate(&population[best_index].genes);
            best_fitness = f;
            best_schedule = schedule;
            best_objective = objective;
            trajectory.push(Improvement {
                step: tracker.step(),
                elapsed: tracker.elapsed(),
                k: 0,
                objective,
            });
        }
        observer(GaEvent {
            generation: tracker.step(),
            elite_fitness: population[0].fitness,
            population_size: population.len(),
        });
    }

    RunReport {
        best: best_schedule,
        objective: best_objective,
        trajectory,
        termination: Termination::TimeLimit,
        wall: tracker.elapsed(),
    }
}

/// Permutation-encoded genetic algorithm.
pub fn run_gad(instance: &Instance, config: &GaConfig, budget: Budget) -> RunReport {
    run_ga::<PermGenes>(instance, config, budget, &mut |_| {})
}

/// [`run_gad`] with a per-generation callback.
pub fn run_gad_observed(
    instance: &Instance,
    config: &GaConfig,
    budget: Budget,
    observer: &mut dyn FnMut(GaEvent),
) -> RunReport {
    run_ga::<PermGenes>(instance, config, budget, observer)
}

/// Type-encoded genetic algorithm; every candidate it evaluates is an
/// earliest-due-date schedule by construction.
pub fn run_mga(instance: &Instance, config: &GaConfig, budget: Budget) -> RunReport {
    run_ga::<TypeGenes>(instance, config, budget, &mut |_| {})
}

/// [`run_mga`] with a per-generation callback.
pub fn run_mga_observed(
    instance: &Instance,
    config: &GaConfig,
    budget: Budget,
    observer: &mut dyn FnMut(GaEvent),
) -> RunReport {
    run_ga::<TypeGenes>(instance, config, budget, observer)
}
