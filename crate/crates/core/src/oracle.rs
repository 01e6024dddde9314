//! Exhaustive reference solver for tiny instances.
//!
//! Enumerates every permutation in lexicographic order and keeps the
//! objective-minimal one, so the tie-broken answer is the lexicographically
//! smallest optimal schedule. Deliberately free of any solver machinery: this
//! is the independent yardstick the optimized code is tested against.

use crate::error::Error;
use crate::model::{Instance, JobId, Objective, Schedule, TypeId};

/// Refusal threshold: `n!` evaluation is hopeless beyond this.
pub const MAX_ORACLE_JOBS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub objective: Objective,
    /// The lexicographically smallest optimal schedule.
    pub schedule: Schedule,
    /// How many permutations attain the optimum.
    pub optimal_count: u64,
}

struct Search<'a> {
    instance: &'a Instance,
    order: Vec<JobId>,
    used: Vec<bool>,
    best: Option<(Objective, Vec<JobId>)>,
    optimal_count: u64,
}

impl Search<'_> {
    fn descend(&mut self, time: u64, tardiness: u64, prev_type: Option<TypeId>) {
        let n = self.instance.len();
        if self.order.len() == n {
            let objective = Objective::new(tardiness, time);
            match &self.best {
                Some((b, _)) if objective > *b => {}
                Some((b, _)) if objective == *b => self.optimal_count += 1,
                _ => {
                    self.best = Some((objective, self.order.clone()));
                    self.optimal_count = 1;
                }
            }
            return;
        }
        for id in 0..n {
            if self.used[id] {
                continue;
            }
            let job = self.instance.job(JobId(id));
            let setup = match prev_type {
                Some(p) => self.instance.setup().get(p, job.type_id),
                None => 0,
            };
            let completion = time + setup + job.processing_time;
            self.used[id] = true;
            self.order.push(JobId(id));
            self.descend(
                completion,
                tardiness + job.deadline.tardiness(completion),
                Some(job.type_id),
            );
            self.order.pop();
            self.used[id] = false;
        }
    }
}

/// Exact optimum by full enumeration; refuses instances with more than
/// [`MAX_ORACLE_JOBS`] jobs.
pub fn optimal(instance: &Instance) -> Result<OracleResult, Error> {
    let n = instance.len();
    if n > MAX_ORACLE_JOBS {
        return Err(Error::TooManyJobsForExhaustiveSearch {
            n,
            limit: MAX_ORACLE_JOBS,
        });
    }
    let mut search = Search {
        instance,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
        optimal_count: 0,
    };
    search.descend(0, 0, None);
    let (objective, order) = search.best.expect("instances are non-empty");
    Ok(OracleResult {
        objective,
        schedule: Schedule::from_order_unchecked(order),
        optimal_count: search.optimal_count,
    })
}
