//! Run budgets and machine-readable run outcomes shared by the hill-climbing
//! strategies and the baseline algorithms.

use std::time::Duration;

use crate::model::{Objective, Schedule};

/// How long an algorithm may run.
///
/// `Steps` counts algorithm iterations (hill-climb neighborhood queries,
/// perturbation iterations, GA generations) and makes randomized runs exactly
/// reproducible; `Wall` is a wall-clock limit checked between iterations, so
/// an iteration in flight always completes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Wall(Duration),
    Steps(u64),
}

impl Budget {
    pub(crate) fn tracker(self) -> BudgetTracker {
        BudgetTracker {
            budget: self,
            started: std::time::Instant::now(),
            steps: 0,
        }
    }
}

pub(crate) struct BudgetTracker {
    budget: Budget,
    started: std::time::Instant,
    steps: u64,
}

impl BudgetTracker {
    /// True when the next iteration may still run; counts it.
    pub(crate) fn admit(&mut self) -> bool {
        let ok = match self.budget {
            Budget::Wall(limit) => self.started.elapsed() < limit,
            Budget::Steps(limit) => self.steps < limit,
        };
        self.steps += 1;
        ok
    }

    pub(crate) fn step(&self) -> u64 {
        self.steps
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The wall-clock or step budget ran out.
    TimeLimit,
    /// The search radius exceeded its cap with no improvement left.
    KExhausted,
}

/// One accepted improvement.
///
/// Equality ignores `elapsed`: wall-clock timing is informational and two
/// runs of the same seeded algorithm are considered identical when their
/// algorithmic content matches.
#[derive(Debug, Clone)]
pub struct Improvement {
    /// Iteration counter at the event (neighborhood queries, perturbation
    /// iterations, or generations, depending on the algorithm).
    pub step: u64,
    /// Wall-clock time since the run started.
    pub elapsed: Duration,
    /// Search radius / perturbation length in effect; 0 when not applicable.
    pub k: usize,
    /// Objective after accepting the improvement.
    pub objective: Objective,
}

impl PartialEq for Improvement {
    fn eq(&self, other: &Self) -> bool {
        self.step == other.step && self.k == other.k && self.objective == other.objective
    }
}

impl Eq for Improvement {}

/// Outcome of one run: incumbent, trajectory of accepted improvements, and
/// why the run stopped.
///
/// Equality ignores wall-clock fields (`wall`, `Improvement::elapsed`); see
/// [`Improvement`].
#[derive(Debug, Clone)]
pub struct RunReport {
    pub best: Schedule,
    pub objective: Objective,
    /// Strictly improving objectives, in order of acceptance.
    pub trajectory: Vec<Improvement>,
    pub termination: Termination,
    /// Total wall-clock time of the run.
    pub wall: Duration,
}

impl PartialEq for RunReport {
    fn eq(&self, other: &Self) -> bool {
        self.best == other.best
            && self.objective == other.objective
            && self.trajectory == other.trajectory
            && self.termination == other.termination
    }
}

impl Eq for RunReport {}

impl RunReport {
    /// Trajectory objectives must strictly decrease; used by tests and
    /// debug assertions.
    pub fn trajectory_is_strictly_decreasing(&self) -> bool {
        self.trajectory.windows(2).all(|w| w[1].objective < w[0].objective)
    }
}
