//! Hill-climbing strategies over the parameterized neighborhoods.
//!
//! All four strategies escalate the search radius `k` at local optima and
//! reset it to `k_init` after every accepted improvement. The `+Swap`
//! variants first try the much cheaper 1-swap neighborhood on every
//! iteration. A run ends when the time budget expires or when `k` would
//! exceed its cap with no improvement found.

use std::time::Duration;

use crate::model::{Instance, Objective, Schedule};
use crate::neighborhoods::{improve_multi_window, improve_swap, improve_window_with, ImproveRule};
use crate::report::{Improvement, RunReport, Termination};

/// Which neighborhood combination to climb with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Win,
    WinSwap,
    Mw,
    MwSwap,
}

impl Variant {
    pub fn uses_swap(self) -> bool {
        matches!(self, Variant::WinSwap | Variant::MwSwap)
    }

    pub fn uses_multi_window(self) -> bool {
        matches!(self, Variant::Mw | Variant::MwSwap)
    }
}

/// Configuration of one hill-climbing run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyConfig {
    pub variant: Variant,
    /// Radius after a reset; also the starting radius. Clamped to at least 2.
    pub k_init: usize,
    /// Cap on the escalating radius; `None` means the job count.
    pub k_max: Option<usize>,
    /// Wall-clock budget, checked between neighborhood queries.
    pub time_limit: Duration,
    /// First improvement (default) or best-in-radius for the window search.
    pub first_improvement: bool,
}

impl StrategyConfig {
    pub fn new(variant: Variant) -> Self {
        StrategyConfig {
            variant,
            k_init: 4,
            k_max: None,
            time_limit: Duration::from_secs(1200),
            first_improvement: true,
        }
    }
}

/// A neighborhood query issued by a run; exposed to observers so tests can
/// check the radius discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub kind: ProbeKind,
    pub k: usize,
    pub improved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    Swap,
    Window,
    MultiWindow,
}

/// Runs one strategy from `start` until the budget expires or the radius cap
/// is exhausted, returning the incumbent and its trajectory.
pub fn run(instance: &Instance, start: &Schedule, config: &StrategyConfig) -> RunReport {
    run_observed(instance, start, config, &mut |_| {})
}

/// [`run`] with a callback invoked after every neighborhood query.
pub fn run_observed(
    instance: &Instance,
    start: &Schedule,
    config: &StrategyConfig,
    observer: &mut dyn FnMut(Probe),
) -> RunReport {
    let n = instance.len();
    let k_init = config.k_init.max(2);
    let k_max = config.k_max.unwrap_or(n).max(k_init);
    let rule = if config.first_improvement {
        ImproveRule::FirstBetter
    } else {
        ImproveRule::BestInRadius
    };

    let started = std::time::Instant::now();
    let mut incumbent = start.clone();
    let mut objective = instance
        .evaluate(&incumbent)
        .expect("start must belong to the instance")
        .objective();
    let mut trajectory: Vec<Improvement> = Vec::new();
    let mut k = k_init;
    let mut steps = 0u64;

    let accept = |schedule: Schedule,
                      k: usize,
                      steps: u64,
                      incumbent: &mut Schedule,
                      objective: &mut Objective,
                      trajectory: &mut Vec<Improvement>| {
        let new_objective = instance
            .evaluate(&schedule)
            .expect("neighborhoods return valid schedules")
            .objective();
        debug_assert!(new_objective < *objective);
        *incumbent = schedule;
        *objective = new_objective;
        trajectory.push(Improvement {
            step: steps,
            elapsed: started.elapsed(),
            k,
            objective: new_objective,
        });
    };

    let termination = 'run: loop {
        if started.elapsed() >= config.time_limit {
            break Termination::TimeLimit;
        }
        if config.variant.uses_swap() {
            steps += 1;
            let found = improve_swap(instance, &incumbent, 1);
            let improved = found.is_some();
            observer(Probe {
                kind: ProbeKind::Swap,
                k: 1,
                improved,
            });
            if let Some(better) = found {
                accept(better, 1, steps, &mut incumbent, &mut objective, &mut trajectory);
                k = k_init;
                continue 'run;
            }
            if started.elapsed() >= config.time_limit {
                break Termination::TimeLimit;
            }
        }
        steps += 1;
        let (kind, found) = if config.variant.uses_multi_window() {
            (
                ProbeKind::MultiWindow,
                improve_multi_window(instance, &incumbent, k),
            )
        } else {
            (
                ProbeKind::Window,
                improve_window_with(instance, &incumbent, k, rule),
            )
        };
        let improved = found.is_some();
        observer(Probe { kind, k, improved });
        match found {
            Some(better) => {
                accept(better, k, steps, &mut incumbent, &mut objective, &mut trajectory);
                k = k_init;
            }
            None => {
                if k >= k_max {
                    break Termination::KExhausted;
                }
                k += 1;
            }
        }
    };

    debug_assert!(trajectory.windows(2).all(|w| w[1].objective < w[0].objective));
    RunReport {
        best: incumbent,
        objective,
        trajectory,
        termination,
        wall: started.elapsed(),
    }
}
