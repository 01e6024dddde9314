//! Exact optimization of a window's job arrangement.
//!
//! Given a set of window jobs, a completion-time offset `theta` accumulated
//! before the window, a forced start and end type, and a fixed suffix, this
//! module finds the earliest-due-date arrangement (per type, jobs in deadline
//! order) of the window jobs minimizing `(total tardiness, makespan)` of the
//! offset window followed by the suffix.
//!
//! The search runs a dynamic program over prefix vectors: each type's jobs
//! form a deadline-sorted chain, and a state records how many jobs of each
//! chain are already scheduled plus the type of the last one. A state stores a
//! Pareto frontier of `(tardiness so far, completion time)` pairs rather than
//! a single feasibility-pruned value, which keeps the search exact for the
//! lexicographic objective even when zero tardiness is unreachable, and
//! coincides with the feasibility-pruned recurrence whenever it is.
//!
//! Table size is `t * prod_types (q_type + 1)` for `q_type` jobs of each type
//! in the window, so the cost is exponential only in the number of distinct
//! types present.

use crate::error::Error;
use crate::model::{Deadline, Instance, JobId, Objective, TypeId};

/// A window-arrangement query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowQuery {
    /// Jobs to rearrange (a set; incoming order is irrelevant).
    pub window_jobs: Vec<JobId>,
    /// Jobs scheduled after the window, in fixed order. May be empty.
    pub suffix: Vec<JobId>,
    /// Type the arrangement must start with.
    pub start_type: TypeId,
    /// Type the arrangement must end with.
    pub end_type: TypeId,
    /// Completion time accumulated before the window, including the setup
    /// into the first window job.
    pub theta: u64,
}

/// Best arrangement found for a [`WindowQuery`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSolution {
    /// Tardiness of window plus suffix jobs, and the completion time of the
    /// last job (of the suffix, or of the window when the suffix is empty).
    pub objective: Objective,
    /// The window jobs in their optimized order.
    pub window_order: Vec<JobId>,
}

/// Table-size accounting for a solved query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpStats {
    /// States that ended up reachable.
    pub cells_filled: usize,
    /// `t * prod (q_type + 1)`, the table-size bound.
    pub cell_limit: usize,
}

/// One Pareto-frontier entry: tardiness and completion time of a partial
/// arrangement, plus the predecessor link for traceback.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pair {
    pub tardiness: u64,
    pub completion: u64,
    prev_type: u16,
    prev_pair: u32,
}

const NO_PREV: u32 = u32::MAX;

/// Inserts `p` unless dominated; evicts entries `p` dominates. Frontiers stay
/// sorted by strictly increasing tardiness and strictly decreasing completion.
/// Equal pairs keep the earlier insertion.
fn skyline_insert(frontier: &mut Vec<Pair>, p: Pair) -> bool {
    let idx = frontier.partition_point(|q| q.tardiness < p.tardiness);
    if idx > 0 && frontier[idx - 1].completion <= p.completion {
        return false;
    }
    if idx < frontier.len()
        && frontier[idx].tardiness == p.tardiness
        && frontier[idx].completion <= p.completion
    {
        return false;
    }
    let mut end = idx;
    while end < frontier.len() && frontier[end].completion >= p.completion {
        end += 1;
    }
    frontier.splice(idx..end, [p]);
    true
}

/// Reusable DP state for one fixed window job set. `run` may be called many
/// times with different start types and offsets; buffers are retained.
pub(crate) struct WindowDp {
    /// Occurring types, ascending by global id; index = local type.
    types: Vec<TypeId>,
    /// Per local type: the window's jobs of that type in deadline order.
    chains: Vec<Vec<(u64, Deadline, JobId)>>,
    /// Local `t x t` setup submatrix, row-major.
    setup: Vec<u64>,
    /// Mixed-radix strides of the prefix-vector encoding.
    strides: Vec<usize>,
    /// Number of prefix vectors, `prod (q + 1)`.
    vec_count: usize,
    /// Prefix-vector indices grouped by total scheduled jobs.
    by_weight: Vec<Vec<usize>>,
    /// Decoded counts per prefix vector, `vec_count * t` entries.
    counts: Vec<u16>,
    /// Frontiers, `vec_count * t` cells indexed `pv * t + end_type`.
    cells: Vec<Vec<Pair>>,
}

impl WindowDp {
    pub(crate) fn new(instance: &Instance, window_jobs: &[JobId]) -> Self {
        let mut types: Vec<TypeId> = window_jobs.iter().map(|&j| instance.type_of(j)).collect();
        types.sort_unstable();
        types.dedup();

        let mut chains: Vec<Vec<(u64, Deadline, JobId)>> = vec![Vec::new(); types.len()];
        for &j in window_jobs {
            let local = types.binary_search(&instance.type_of(j)).unwrap();
            let job = instance.job(j);
            chains[local].push((job.processing_time, job.deadline, j));
        }
        for chain in &mut chains {
            chain.sort_by_key(|&(_, d, id)| (d, id));
        }

        let t = types.len();
        let mut setup = vec![0u64; t * t];
        for (a, &ta) in types.iter().enumerate() {
            for (b, &tb) in types.iter().enumerate() {
                setup[a * t + b] = instance.setup().get(ta, tb);
            }
        }

        let mut strides = vec![0usize; t];
        let mut vec_count = 1usize;
        for (i, chain) in chains.iter().enumerate() {
            strides[i] = vec_count;
            vec_count *= chain.len() + 1;
        }

        let total_jobs = window_jobs.len();
        let mut by_weight = vec![Vec::new(); total_jobs + 1];
        let mut counts = vec![0u16; vec_count * t];
        for pv in 0..vec_count {
            let mut rest = pv;
            let mut weight = 0usize;
            for i in 0..t {
                let radix = chains[i].len() + 1;
                let c = rest % radix;
                rest /= radix;
                counts[pv * t + i] = c as u16;
                weight += c;
            }
            by_weight[weight].push(pv);
        }

        WindowDp {
            types,
            chains,
            setup,
            strides,
            vec_count,
            by_weight,
            counts,
            cells: vec![Vec::new(); vec_count * t],
        }
    }

    pub(crate) fn types(&self) -> &[TypeId] {
        &self.types
    }

    pub(crate) fn local_of(&self, t: TypeId) -> Option<usize> {
        self.types.binary_search(&t).ok()
    }

    pub(crate) fn job_count(&self) -> usize {
        self.by_weight.len() - 1
    }

    /// Fills the table for a window starting with `start_local` at offset
    /// `theta`. Afterwards [`Self::final_frontier`] holds, for every end
    /// type, the Pareto-optimal `(tardiness, completion)` pairs over all
    /// earliest-due-date arrangements of the window jobs.
    pub(crate) fn run(&mut self, start_local: usize, theta: u64) {
        for cell in &mut self.cells {
            cell.clear();
        }
        let t = self.types.len();
        self.cells[start_local].push(Pair {
            tardiness: 0,
            completion: theta,
            prev_type: 0,
            prev_pair: NO_PREV,
        });

        for weight in 0..self.job_count() {
            for wi in 0..self.by_weight[weight].len() {
                let pv = self.by_weight[weight][wi];
                for next in 0..t {
                    // The first scheduled job must carry the start type.
                    if weight == 0 && next != start_local {
                        continue;
                    }
                    let scheduled = self.counts[pv * t + next] as usize;
                    if scheduled == self.chains[next].len() {
                        continue;
                    }
                    let (processing, deadline, _) = self.chains[next][scheduled];
                    let target = (pv + self.strides[next]) * t + next;
                    for src in 0..t {
                        let src_cell = pv * t + src;
                        if self.cells[src_cell].is_empty() {
                            continue;
                        }
                        let setup = self.setup[src * t + next];
                        for pi in 0..self.cells[src_cell].len() {
                            let pair = self.cells[src_cell][pi];
                            let completion = pair.completion + setup + processing;
                            let tardiness = pair.tardiness + deadline.tardiness(completion);
                            skyline_insert(
                                &mut self.cells[target],
                                Pair {
                                    tardiness,
                                    completion,
                                    prev_type: src as u16,
                                    prev_pair: pi as u32,
                                },
                            );
                        }
                    }
                }
            }
        }
    }

    /// Frontier of complete arrangements ending with the given local type.
    pub(crate) fn final_frontier(&self, end_local: usize) -> &[Pair] {
        let t = self.types.len();
        &self.cells[(self.vec_count - 1) * t + end_local]
    }

    /// Reconstructs the arrangement behind a final-frontier pair.
    pub(crate) fn traceback(&self, end_local: usize, pair_index: usize) -> Vec<JobId> {
        let t = self.types.len();
        let mut order = Vec::with_capacity(self.job_count());
        let mut pv = self.vec_count - 1;
        let mut local = end_local;
        let mut pair = self.final_frontier(end_local)[pair_index];
        // Every pair except the offset seed schedules exactly one job.
        for _ in 0..self.job_count() {
            let scheduled = self.counts[pv * t + local] as usize;
            order.push(self.chains[local][scheduled - 1].2);
            pv -= self.strides[local];
            local = pair.prev_type as usize;
            pair = self.cells[pv * t + local][pair.prev_pair as usize];
        }
        order.reverse();
        order
    }

    pub(crate) fn stats(&self) -> DpStats {
        DpStats {
            cells_filled: self.cells.iter().filter(|c| !c.is_empty()).count(),
            cell_limit: self.vec_count * self.types.len(),
        }
    }
}

/// Walks a fixed suffix from a window's end, accumulating the extra tardiness
/// and the final completion time.
pub(crate) fn walk_suffix(
    instance: &Instance,
    suffix: &[JobId],
    from_type: TypeId,
    from_completion: u64,
) -> (u64, u64) {
    let mut time = from_completion;
    let mut tardiness = 0u64;
    let mut prev = from_type;
    for &id in suffix {
        let job = instance.job(id);
        time += instance.setup().get(prev, job.type_id) + job.processing_time;
        tardiness += job.deadline.tardiness(time);
        prev = job.type_id;
    }
    (tardiness, time)
}

fn validate_query(instance: &Instance, query: &WindowQuery) -> Result<(), Error> {
    let n = instance.len();
    let mut used = vec![false; n];
    for &JobId(id) in query.window_jobs.iter().chain(&query.suffix) {
        if id >= n {
            return Err(Error::UnknownJob(id));
        }
        if used[id] {
            return Err(Error::OverlappingJobSets(id));
        }
        used[id] = true;
    }
    Ok(())
}

/// Solves a [`WindowQuery`] exactly over earliest-due-date arrangements.
///
/// Returns `Ok(None)` when the window is empty or when the start or end type
/// does not occur among the window jobs.
pub fn solve(instance: &Instance, query: &WindowQuery) -> Result<Option<WindowSolution>, Error> {
    solve_with_stats(instance, query).map(|(solution, _)| solution)
}

/// Like [`solve`], also reporting table-size statistics.
pub fn solve_with_stats(
    instance: &Instance,
    query: &WindowQuery,
) -> Result<(Option<WindowSolution>, DpStats), Error> {
    validate_query(instance, query)?;
    if query.window_jobs.is_empty() {
        return Ok((
            None,
            DpStats {
                cells_filled: 0,
                cell_limit: 0,
            },
        ));
    }
    let mut dp = WindowDp::new(instance, &query.window_jobs);
    let (Some(start_local), Some(end_local)) =
        (dp.local_of(query.start_type), dp.local_of(query.end_type))
    else {
        return Ok((
            None,
            DpStats {
                cells_filled: 0,
                cell_limit: dp.vec_count * dp.types.len(),
            },
        ));
    };
    dp.run(start_local, query.theta);
    let stats = dp.stats();

    let mut best: Option<(Objective, usize)> = None;
    for (pi, pair) in dp.final_frontier(end_local).iter().enumerate() {
        let (suffix_tardiness, final_completion) =
            walk_suffix(instance, &query.suffix, query.end_type, pair.completion);
        let objective = Objective::new(pair.tardiness + suffix_tardiness, final_completion);
        if best.is_none_or(|(b, _)| objective < b) {
            best = Some((objective, pi));
        }
    }
    let solution = best.map(|(objective, pi)| WindowSolution {
        objective,
        window_order: dp.traceback(end_local, pi),
    });
    Ok((solution, stats))
}
