use crate::model::SetupViolation;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("instance has no jobs")]
    EmptyInstance,

    #[error("job {job} has type {type_id} but the setup matrix covers only {type_count} types")]
    TypeOutOfRange {
        job: usize,
        type_id: usize,
        type_count: usize,
    },

    #[error("setup matrix violates its invariants: {0:?}")]
    InvalidSetup(Vec<SetupViolation>),

    #[error("order of length {got} is not a permutation of 0..{expected}")]
    NotAPermutation { expected: usize, got: usize },

    #[error("schedule has {got} jobs but the instance has {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("schedules have different lengths: {0} vs {1}")]
    ScheduleLengthMismatch(usize, usize),

    #[error("job {0} referenced by the query does not exist in the instance")]
    UnknownJob(usize),

    #[error("window jobs and suffix jobs overlap (job {0})")]
    OverlappingJobSets(usize),

    #[error("{count} distinct type blocks exceed the enumeration limit of {limit}")]
    TooManyTypeBlocks { count: usize, limit: usize },

    #[error("exhaustive search refused: {n} jobs exceed the limit of {limit}")]
    TooManyJobsForExhaustiveSearch { n: usize, limit: usize },
}
