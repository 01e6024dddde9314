//! Baseline metaheuristics for comparison runs: the perturbation-based local
//! search PILS1 and two genetic algorithms (permutation-encoded GAD and
//! type-encoded MGA). All three are seeded and reproducible: every random
//! choice is drawn from one ChaCha stream per run in a documented order.

mod genetic;
mod pils;

pub use genetic::{run_gad, run_gad_observed, run_mga, run_mga_observed, GaConfig, GaEvent};
pub use pils::{run_pils1, run_pils1_observed, PilsEvent};

use crate::model::{Instance, Objective, Schedule};

/// Scalarization factor `mu = n * (max processing + max setup) + 1`.
///
/// `mu` exceeds every possible makespan, so comparing
/// [`fitness`] values equals comparing `(tardiness, makespan)`
/// lexicographically.
pub fn fitness_scale(instance: &Instance) -> u128 {
    instance.len() as u128
        * (instance.max_processing() as u128 + instance.setup().max_setup() as u128)
        + 1
}

/// Scalarized objective `makespan + mu * tardiness`; smaller is better.
pub fn fitness(scale: u128, objective: Objective) -> u128 {
    objective.makespan as u128 + scale * objective.tardiness as u128
}

/// A set of schedules whose `(tardiness, makespan)` pairs form an antichain:
/// no member dominates another (dominance = strictly worse in both
/// components).
#[derive(Debug, Clone, Default)]
pub struct NdArchive {
    entries: Vec<ArchiveEntry>,
}

#[derive(Debug, Clone)]
pub struct ArchiveEntry {
    pub schedule: Schedule,
    pub objective: Objective,
}

impl NdArchive {
    pub fn new() -> Self {
        NdArchive::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    /// Whether a candidate would enter the archive: no member may match or
    /// beat it in both components. (Admitting exact objective ties would let
    /// the archive fill up with equivalent schedules, so ties are rejected.)
    pub fn admits(&self, objective: Objective) -> bool {
        !self.entries.iter().any(|e| {
            e.objective.tardiness <= objective.tardiness
                && e.objective.makespan <= objective.makespan
        })
    }

    /// Inserts the schedule if admitted, evicting every member the candidate
    /// matches or beats in both components. Returns whether it was inserted.
    pub fn insert(&mut self, schedule: Schedule, objective: Objective) -> bool {
        if !self.admits(objective) {
            return false;
        }
        self.entries.retain(|e| {
            !(e.objective.tardiness >= objective.tardiness
                && e.objective.makespan >= objective.makespan)
        });
        self.entries.push(ArchiveEntry { schedule, objective });
        true
    }

    /// Invariant check: no member strictly dominates another.
    pub fn is_pairwise_non_dominating(&self) -> bool {
        self.entries.iter().all(|a| {
            self.entries.iter().all(|b| {
                !(a.objective.tardiness < b.objective.tardiness
                    && a.objective.makespan < b.objective.makespan)
            })
        })
    }

    /// Member of lowest tardiness; ties by lowest makespan, then insertion
    /// order. Panics on an empty archive.
    pub fn best_by_tardiness(&self) -> &ArchiveEntry {
        self.entries
            .iter()
            .min_by_key(|e| e.objective)
            .expect("archive is never empty during a run")
    }
}
