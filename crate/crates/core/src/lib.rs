//! Single-machine makespan minimization with sequence-dependent family setup
//! times and deadlines.
//!
//! Jobs carry a processing time, a deadline, and a product type; switching
//! the machine between types costs setup time from a square matrix (zero
//! diagonal, triangle inequality). Solutions are permutations of the jobs,
//! compared by total tardiness first and makespan second.
//!
//! The crate provides:
//!
//! - [`model`]: the data model and exact objective evaluation;
//! - [`distances`]: window, multi-window, swap, and insert distances between
//!   schedules;
//! - [`window_dp`]: an exact dynamic program over earliest-due-date
//!   arrangements of a window, the engine behind the window searches;
//! - [`neighborhoods`]: radius-`k` improvement searches for all four
//!   distances;
//! - [`hillclimb`]: the Win/Win+Swap/MW/MW+Swap climbing strategies with
//!   radius escalation and reset;
//! - [`edds`]: deadline-sorted chains and the DD/SM/TM greedy starts;
//! - [`baselines`]: PILS1 and two genetic algorithms for comparison runs;
//! - [`io`], [`datagen`], [`oracle`]: instance files, benchmark adaptation,
//!   and an exhaustive reference solver for tiny instances.

pub mod baselines;
pub mod datagen;
pub mod distances;
pub mod edds;
mod error;
pub mod hillclimb;
pub mod io;
pub mod model;
pub mod neighborhoods;
pub mod oracle;
pub mod report;
pub mod window_dp;

pub use error::Error;
pub use model::{
    Deadline, Evaluation, Instance, Job, JobId, Objective, Schedule, SetupMatrix, SetupViolation,
    TypeId,
};
pub use report::{Budget, Improvement, RunReport, Termination};
