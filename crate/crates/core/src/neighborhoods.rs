//! Neighborhood searches: find a strictly better schedule within radius `k`
//! of the incumbent for one of the four distance measures, or certify local
//! optimality by returning `None`.
//!
//! Window and multi-window searches are exact over earliest-due-date window
//! arrangements (exhaustive for zero-tardiness incumbents); swap and insert
//! searches enumerate move sequences outright.

use std::collections::HashSet;

use crate::model::{Instance, JobId, Objective, Schedule, TypeId};
use crate::window_dp::{walk_suffix, WindowDp};

/// Whether a search returns the first improvement in enumeration order or the
/// best improvement in the whole radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImproveRule {
    #[default]
    FirstBetter,
    BestInRadius,
}

fn current_objective(instance: &Instance, schedule: &Schedule) -> Objective {
    instance
        .evaluate(schedule)
        .expect("schedule must belong to the instance")
        .objective()
}

/// Searches all length-`k` windows for a rearrangement strictly improving the
/// incumbent, returning the first one found (enumeration order: window start
/// ascending, then start type, then end type). `k` is clamped to `n`.
pub fn improve_window(instance: &Instance, current: &Schedule, k: usize) -> Option<Schedule> {
    improve_window_with(instance, current, k, ImproveRule::FirstBetter)
}

/// [`improve_window`] with an explicit first-vs-best improvement rule.
pub fn improve_window_with(
    instance: &Instance,
    current: &Schedule,
    k: usize,
    rule: ImproveRule,
) -> Option<Schedule> {
    let n = instance.len();
    let k = k.min(n);
    if k < 2 {
        return None;
    }
    let eval = instance
        .evaluate(current)
        .expect("schedule must belong to the instance");
    let current_obj = eval.objective();
    let order = current.order();

    // Tardiness of the first i jobs; windows never change it.
    let mut prefix_tardiness = vec![0u64; n + 1];
    for i in 0..n {
        let job = instance.job(order[i]);
        prefix_tardiness[i + 1] =
            prefix_tardiness[i] + job.deadline.tardiness(eval.completion_times[i]);
    }

    let mut best: Option<(Objective, Schedule)> = None;
    for start in 0..=(n - k) {
        let window = &order[start..start + k];
        let suffix = &order[start + k..];
        let mut dp = WindowDp::new(instance, window);
        for start_local in 0..dp.types().len() {
            let start_type = dp.types()[start_local];
            let theta = if start == 0 {
                0
            } else {
                let prev = instance.type_of(order[start - 1]);
                eval.completion_times[start - 1] + instance.setup().get(prev, start_type)
            };
            dp.run(start_local, theta);
            for end_local in 0..dp.types().len() {
                let end_type = dp.types()[end_local];
                let mut cell_best: Option<(Objective, usize)> = None;
                for (pi, pair) in dp.final_frontier(end_local).iter().enumerate() {
                    let (suffix_tardiness, final_completion) =
                        walk_suffix(instance, suffix, end_type, pair.completion);
                    let objective = Objective::new(
                        prefix_tardiness[start] + pair.tardiness + suffix_tardiness,
                        final_completion,
                    );
                    if cell_best.is_none_or(|(b, _)| objective < b) {
                        cell_best = Some((objective, pi));
                    }
                }
                let Some((objective, pi)) = cell_best else {
                    continue;
                };
                if objective >= current_obj {
                    continue;
                }
                if best.as_ref().is_none_or(|(b, _)| objective < *b) {
                    let mut new_order = Vec::with_capacity(n);
                    new_order.extend_from_slice(&order[..start]);
                    new_order.extend_from_slice(&dp.traceback(end_local, pi));
                    new_order.extend_from_slice(suffix);
                    let improved = Schedule::from_order_unchecked(new_order);
                    if rule == ImproveRule::FirstBetter {
                        return Some(improved);
                    }
                    best = Some((objective, improved));
                }
            }
        }
    }
    best.map(|(_, schedule)| schedule)
}

/// One Pareto entry of the multi-window table: a prefix schedule ending with
/// a given type, stored with the rearranged segment that produced it and a
/// link to its predecessor entry.
struct MwPair {
    tardiness: u64,
    completion: u64,
    /// Rearranged jobs covering positions `[cut, i)` of the incumbent.
    segment: Vec<JobId>,
    /// Prefix length before this segment; 0 means the segment starts the
    /// schedule.
    cut: usize,
    prev_type: u16,
    prev_pair: u32,
}

fn mw_insert(frontier: &mut Vec<MwPair>, pair: MwPair) {
    let idx = frontier.partition_point(|q| q.tardiness < pair.tardiness);
    if idx > 0 && frontier[idx - 1].completion <= pair.completion {
        return;
    }
    if idx < frontier.len()
        && frontier[idx].tardiness == pair.tardiness
        && frontier[idx].completion <= pair.completion
    {
        return;
    }
    let mut end = idx;
    while end < frontier.len() && frontier[end].completion >= pair.completion {
        end += 1;
    }
    frontier.splice(idx..end, [pair]);
}

/// Searches all decompositions of the schedule into consecutive windows of
/// length at most `k` for a strictly better simultaneous rearrangement.
/// Returns the best schedule in that neighborhood, or `None` if the incumbent
/// is already optimal within it. `k` is clamped to `n`.
pub fn improve_multi_window(instance: &Instance, current: &Schedule, k: usize) -> Option<Schedule> {
    let n = instance.len();
    let k = k.min(n);
    if k < 1 {
        return None;
    }
    let current_obj = current_objective(instance, current);
    let order = current.order();

    let mut types: Vec<TypeId> = order.iter().map(|&j| instance.type_of(j)).collect();
    types.sort_unstable();
    types.dedup();
    let t = types.len();
    let local_of = |ty: TypeId| types.binary_search(&ty).unwrap();

    // table[i][e]: Pareto pairs over schedules of the first i incumbent jobs
    // that end with type e and stay within multi-window distance k.
    let mut table: Vec<Vec<Vec<MwPair>>> = (0..=n).map(|_| (0..t).map(|_| Vec::new()).collect()).collect();

    for i in 1..=n {
        let cuts: Vec<usize> = if i <= k {
            vec![0]
        } else {
            (i - k..i).collect()
        };
        for cut in cuts {
            let segment_jobs = &order[cut..i];
            let mut dp = WindowDp::new(instance, segment_jobs);
            for start_local in 0..dp.types().len() {
                let start_type = dp.types()[start_local];
                // Offsets to run this segment from: the trivial one when the
                // segment opens the schedule, otherwise one candidate per
                // non-dominated (prefix tardiness, offset) combination.
                let mut candidates: Vec<(u64, u64, u16, u32)> = Vec::new();
                if cut == 0 {
                    candidates.push((0, 0, 0, 0));
                } else {
                    for prev_local in 0..t {
                        let entering = instance.setup().get(types[prev_local], start_type);
                        for (pi, prev) in table[cut][prev_local].iter().enumerate() {
                            let cand = (
                                prev.tardiness,
                                prev.completion + entering,
                                prev_local as u16,
                                pi as u32,
                            );
                            if candidates
                                .iter()
                                .any(|c| c.0 <= cand.0 && c.1 <= cand.1)
                            {
                                continue;
                            }
                            candidates.retain(|c| !(c.0 >= cand.0 && c.1 >= cand.1));
                            candidates.push(cand);
                        }
                    }
                }
                for (base_tardiness, theta, prev_type, prev_pair) in candidates {
                    dp.run(start_local, theta);
                    for end_local in 0..dp.types().len() {
                        let end_instance_local = local_of(dp.types()[end_local]);
                        for (pi, pair) in dp.final_frontier(end_local).iter().enumerate() {
                            mw_insert(
                                &mut table[i][end_instance_local],
                                MwPair {
                                    tardiness: base_tardiness + pair.tardiness,
                                    completion: pair.completion,
                                    segment: dp.traceback(end_local, pi),
                                    cut,
                                    prev_type,
                                    prev_pair,
                                },
                            );
                        }
                    }
                }
            }
        }
    }

    // Best complete schedule in the table.
    let mut best: Option<(Objective, usize, usize)> = None;
    for (e, frontier) in table[n].iter().enumerate() {
        for (pi, pair) in frontier.iter().enumerate() {
            let objective = Objective::new(pair.tardiness, pair.completion);
            if best.is_none_or(|(b, _, _)| objective < b) {
                best = Some((objective, e, pi));
            }
        }
    }
    let (objective, mut e, mut pi) = best?;
    if objective >= current_obj {
        return None;
    }
    let mut segments: Vec<&[JobId]> = Vec::new();
    let mut i = n;
    loop {
        let pair = &table[i][e][pi];
        segments.push(&pair.segment);
        if pair.cut == 0 {
            break;
        }
        i = pair.cut;
        e = pair.prev_type as usize;
        pi = pair.prev_pair as usize;
    }
    let mut new_order = Vec::with_capacity(n);
    for segment in segments.into_iter().rev() {
        new_order.extend_from_slice(segment);
    }
    Some(Schedule::from_order_unchecked(new_order))
}

fn search_moves<F>(
    instance: &Instance,
    current: &Schedule,
    k: usize,
    mut push_moves: F,
) -> Option<Schedule>
where
    F: FnMut(&[JobId], &mut Vec<Vec<JobId>>),
{
    if k == 0 {
        return None;
    }
    let current_obj = current_objective(instance, current);
    let mut visited: HashSet<Vec<JobId>> = HashSet::new();
    visited.insert(current.order().to_vec());
    let mut frontier = vec![current.order().to_vec()];
    let mut moves = Vec::new();
    for _ in 0..k {
        let mut next = Vec::new();
        for perm in &frontier {
            moves.clear();
            push_moves(perm, &mut moves);
            for cand in moves.drain(..) {
                if !visited.insert(cand.clone()) {
                    continue;
                }
                let schedule = Schedule::from_order_unchecked(cand.clone());
                if current_objective(instance, &schedule) < current_obj {
                    return Some(schedule);
                }
                next.push(cand);
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

/// Brute-force search over all sequences of at most `k` transpositions,
/// deduplicated by resulting permutation. Returns the first strictly better
/// schedule in deterministic enumeration order.
pub fn improve_swap(instance: &Instance, current: &Schedule, k: usize) -> Option<Schedule> {
    let n = current.len();
    search_moves(instance, current, k.min(n), |perm, out| {
        for a in 0..n {
            for b in a + 1..n {
                let mut cand = perm.to_vec();
                cand.swap(a, b);
                out.push(cand);
            }
        }
    })
}

/// Brute-force search over all sequences of at most `k` remove-and-reinsert
/// moves, deduplicated by resulting permutation. Returns the first strictly
/// better schedule in deterministic enumeration order.
pub fn improve_insert(instance: &Instance, current: &Schedule, k: usize) -> Option<Schedule> {
    let n = current.len();
    search_moves(instance, current, k.min(n), |perm, out| {
        for a in 0..n {
            for b in 0..n {
                if b == a {
                    continue;
                }
                let mut cand = perm.to_vec();
                let job = cand.remove(a);
                cand.insert(b, job);
                out.push(cand);
            }
        }
    })
}
