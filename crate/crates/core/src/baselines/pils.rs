//! PILS1: single-swap/single-insert local search over an archive of
//! non-dominated schedules, with random subsequence-reversal perturbations of
//! growing length when no neighbor is admissible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NdArchive;
use crate::model::{Instance, Objective, Schedule};
use crate::report::{Budget, Improvement, RunReport, Termination};

/// State snapshot after one PILS1 iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PilsEvent {
    pub iteration: u64,
    /// Perturbation length after the iteration: 4 right after an insertion,
    /// incremented otherwise.
    pub p: usize,
    pub inserted: bool,
    pub archive_len: usize,
}

/// Runs PILS1 from `start` until the budget expires and returns the archive
/// member of lowest tardiness (ties by makespan).
///
/// Random draws per iteration, in order: the subject index (only when no
/// perturbed candidate is pending), then on a failed neighbor scan the
/// perturbation base index and the reversal start position (the latter only
/// when the reversed span is shorter than the schedule).
pub fn run_pils1(instance: &Instance, start: &Schedule, budget: Budget, seed: u64) -> RunReport {
    run_pils1_observed(instance, start, budget, seed, &mut |_, _| {})
}

/// [`run_pils1`] with a callback receiving the archive and an event after
/// every iteration.
pub fn run_pils1_observed(
    instance: &Instance,
    start: &Schedule,
    budget: Budget,
    seed: u64,
    observer: &mut dyn FnMut(&NdArchive, PilsEvent),
) -> RunReport {
    let n = instance.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_objective = instance
        .evaluate(start)
        .expect("start must belong to the instance")
        .objective();

    let mut archive = NdArchive::new();
    archive.insert(start.clone(), start_objective);
    let mut best = start_objective;
    let mut trajectory: Vec<Improvement> = Vec::new();
    let mut p = 4usize;
    let mut pending: Option<Schedule> = None;
    let mut tracker = budget.tracker();

    while tracker.admit() {
        let subject = match pending.take() {
            Some(candidate) => candidate,
            None => {
                let idx = rng.gen_range(0..archive.len());
                archive.entries()[idx].schedule.clone()
            }
        };
        let found = first_admissible_neighbor(instance, &subject, &archive);
        let inserted = found.is_some();
        if let Some((schedule, objective)) = found {
            if objective < best {
                best = objective;
                trajectory.push(Improvement {
                    step: tracker.step(),
                    elapsed: tracker.elapsed(),
                    k: p,
                    objective,
                });
            }
            archive.insert(schedule, objective);
            p = 4;
        } else {
            let idx = rng.gen_range(0..archive.len());
            let base = archive.entries()[idx].schedule.clone();
            let len = p.min(n);
            let mut order = base.order().to_vec();
            let start_pos = if len < n { rng.gen_range(0..=n - len) } else { 0 };
            order[start_pos..start_pos + len].reverse();
            pending = Some(Schedule::from_order_unchecked(order));
            p += 1;
        }
        observer(
            &archive,
            PilsEvent {
                iteration: tracker.step(),
                p,
                inserted,
                archive_len: archive.len(),
            },
        );
    }

    let final_best = archive.best_by_tardiness();
    RunReport {
        best: final_best.schedule.clone(),
        objective: final_best.objective,
        trajectory,
        termination: Termination::TimeLimit,
        wall: tracker.elapsed(),
    }
}

/// Scans all single transpositions, then all single remove-and-reinsert
/// moves, in deterministic order; returns the first neighbor the archive
/// admits.
fn first_admissible_neighbor(
    instance: &Instance,
    subject: &Schedule,
    archive: &NdArchive,
) -> Option<(Schedule, Objective)> {
    let n = subject.len();
    let order = subject.order();
    let try_candidate = |order: Vec<crate::model::JobId>| {
        let schedule = Schedule::from_order_unchecked(order);
        let objective = instance
            .evaluate(&schedule)
            .expect("neighbors stay valid permutations")
            .objective();
        archive.admits(objective).then_some((schedule, objective))
    };
    for a in 0..n {
        for b in a + 1..n {
            let mut cand = order.to_vec();
            cand.swap(a, b);
            if let Some(hit) = try_candidate(cand) {
                return Some(hit);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            let mut cand = order.to_vec();
            let job = cand.remove(a);
            cand.insert(b, job);
            if let Some(hit) = try_candidate(cand) {
                return Some(hit);
            }
        }
    }
    None
}
