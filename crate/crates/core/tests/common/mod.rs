//! Shared fixtures, seeded instance generators, and independent brute-force
//! oracles. The oracles deliberately avoid the library's solver machinery:
//! they enumerate and evaluate directly so they can serve as a second route.

#![allow(dead_code)]

use famsched::model::{Deadline, Instance, Job, JobId, Objective, Schedule, SetupMatrix, TypeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn schedule(order: &[usize]) -> Schedule {
    Schedule::new(order.iter().map(|&i| JobId(i)).collect()).unwrap()
}

/// Four unit-time jobs over three types with unit setups between distinct
/// types. The identity order has makespan 7; the global optimum is 6.
pub fn small_instance() -> Instance {
    let job = |t: usize| Job {
        processing_time: 1,
        deadline: Deadline::Infinite,
        type_id: TypeId(t),
    };
    Instance::new(
        vec![job(0), job(1), job(2), job(0)],
        SetupMatrix::uniform(3, 1),
    )
    .unwrap()
}

/// Random symmetric setup matrix with off-diagonal entries in `[lo, 2 * lo]`,
/// which always satisfies the triangle inequality.
pub fn random_setup(rng: &mut ChaCha8Rng, t: usize, lo: u64) -> SetupMatrix {
    let mut cells = vec![0u64; t * t];
    for a in 0..t {
        for b in a + 1..t {
            let v = rng.gen_range(lo..=2 * lo);
            cells[a * t + b] = v;
            cells[b * t + a] = v;
        }
    }
    SetupMatrix::new(t, cells)
}

/// Random instance with mixed deadlines: some infinite, some loose, some
/// tight enough to be violated by many schedules.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, t: usize) -> Instance {
    let lo = rng.gen_range(1..=4);
    let setup = random_setup(rng, t, lo);
    let horizon: u64 = 12 * n as u64;
    let jobs = (0..n)
        .map(|_| {
            let deadline = match rng.gen_range(0..10) {
                0..=2 => Deadline::Infinite,
                3..=5 => Deadline::Finite(rng.gen_range(horizon / 2..=horizon)),
                _ => Deadline::Finite(rng.gen_range(1..=horizon / 2)),
            };
            Job {
                processing_time: rng.gen_range(1..=9),
                deadline,
                type_id: TypeId(rng.gen_range(0..t)),
            }
        })
        .collect();
    Instance::new(jobs, setup).unwrap()
}

pub fn random_schedule(rng: &mut ChaCha8Rng, n: usize) -> Schedule {
    let mut order: Vec<JobId> = (0..n).map(JobId).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    Schedule::new(order).unwrap()
}

/// Random instance plus a schedule that is feasible on it: deadlines are
/// derived from the schedule's own completion times (often exactly tight),
/// with some jobs left unconstrained.
pub fn random_feasible_pair(rng: &mut ChaCha8Rng, n: usize, t: usize) -> (Instance, Schedule) {
    let lo = rng.gen_range(1..=4);
    let setup = random_setup(rng, t, lo);
    let mut jobs: Vec<Job> = (0..n)
        .map(|_| Job {
            processing_time: rng.gen_range(1..=9),
            deadline: Deadline::Infinite,
            type_id: TypeId(rng.gen_range(0..t)),
        })
        .collect();
    let current = random_schedule(rng, n);
    let draft = Instance::new(jobs.clone(), setup.clone()).unwrap();
    let eval = draft.evaluate(&current).unwrap();
    for (pos, &JobId(id)) in current.order().iter().enumerate() {
        jobs[id].deadline = match rng.gen_range(0..10) {
            0..=2 => Deadline::Infinite,
            3..=5 => Deadline::Finite(eval.completion_times[pos]),
            _ => Deadline::Finite(eval.completion_times[pos] + rng.gen_range(1..=15)),
        };
    }
    let instance = Instance::new(jobs, setup).unwrap();
    debug_assert!(instance.evaluate(&current).unwrap().is_feasible());
    (instance, current)
}

/// All permutations of a slice, in lexicographic index order.
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(items.len());
    let mut used = vec![false; items.len()];
    fn rec<T: Clone>(
        items: &[T],
        used: &mut [bool],
        current: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if current.len() == items.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..items.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            current.push(items[i].clone());
            rec(items, used, current, out);
            current.pop();
            used[i] = false;
        }
    }
    rec(items, &mut used, &mut current, &mut out);
    out
}

/// Walks a job sequence starting at `time` after a job of type `prev_type`
/// (`None` at the very start); returns (added tardiness, final time).
pub fn walk(
    instance: &Instance,
    jobs: &[JobId],
    prev_type: Option<TypeId>,
    time: u64,
) -> (u64, u64) {
    let mut tardiness = 0;
    let mut time = time;
    let mut prev = prev_type;
    for &id in jobs {
        let job = instance.job(id);
        if let Some(p) = prev {
            time += instance.setup().get(p, job.type_id);
        }
        time += job.processing_time;
        tardiness += job.deadline.tardiness(time);
        prev = Some(job.type_id);
    }
    (tardiness, time)
}

/// Brute force over all earliest-due-date arrangements of `window` that start
/// with `start_type` and end with `end_type`: groups the window jobs into
/// deadline-sorted chains and enumerates every interleaving, evaluating the
/// offset timeline followed by `suffix`. Returns the best objective.
pub fn edds_brute_force(
    instance: &Instance,
    window: &[JobId],
    suffix: &[JobId],
    start_type: TypeId,
    end_type: TypeId,
    theta: u64,
) -> Option<Objective> {
    let mut chains: HashMap<TypeId, Vec<JobId>> = HashMap::new();
    for &j in window {
        chains.entry(instance.type_of(j)).or_default().push(j);
    }
    let mut chains: Vec<(TypeId, Vec<JobId>)> = chains.into_iter().collect();
    chains.sort_by_key(|(t, _)| *t);
    for (_, jobs) in &mut chains {
        jobs.sort_by_key(|&j| (instance.job(j).deadline, j));
    }

    struct Rec<'a> {
        instance: &'a Instance,
        chains: &'a [(TypeId, Vec<JobId>)],
        suffix: &'a [JobId],
        start_type: TypeId,
        end_type: TypeId,
        best: Option<Objective>,
    }
    impl Rec<'_> {
        fn go(&mut self, taken: &mut [usize], left: usize, time: u64, tard: u64, prev: Option<TypeId>) {
            if left == 0 {
                if prev != Some(self.end_type) {
                    return;
                }
                let (suffix_tard, final_time) =
                    walk(self.instance, self.suffix, prev, time);
                let objective = Objective::new(tard + suffix_tard, final_time);
                if self.best.is_none_or(|b| objective < b) {
                    self.best = Some(objective);
                }
                return;
            }
            for (c, (chain_type, jobs)) in self.chains.iter().enumerate() {
                if taken[c] == jobs.len() {
                    continue;
                }
                if prev.is_none() && *chain_type != self.start_type {
                    continue;
                }
                let job = self.instance.job(jobs[taken[c]]);
                let setup = prev.map_or(0, |p| self.instance.setup().get(p, *chain_type));
                let completion = time + setup + job.processing_time;
                taken[c] += 1;
                self.go(
                    taken,
                    left - 1,
                    completion,
                    tard + job.deadline.tardiness(completion),
                    Some(*chain_type),
                );
                taken[c] -= 1;
            }
        }
    }
    let mut rec = Rec {
        instance,
        chains: &chains,
        suffix,
        start_type,
        end_type,
        best: None,
    };
    let mut taken = vec![0usize; chains.len()];
    rec.go(&mut taken, window.len(), theta, 0, None);
    rec.best
}

/// Best objective over every schedule at window distance at most `k` from
/// `current`, by rearranging each length-`k` window with all permutations.
/// Includes the incumbent itself, so an improvement exists iff the result is
/// strictly below the incumbent's objective.
pub fn best_window_rearrangement(instance: &Instance, current: &Schedule, k: usize) -> Objective {
    let n = instance.len();
    let k = k.min(n);
    let order = current.order();
    let mut best = instance.evaluate(current).unwrap().objective();
    for start in 0..=(n - k) {
        for perm in permutations(&order[start..start + k]) {
            let mut candidate = order.to_vec();
            candidate[start..start + k].copy_from_slice(&perm);
            let objective = instance
                .evaluate(&Schedule::new(candidate).unwrap())
                .unwrap()
                .objective();
            if objective < best {
                best = objective;
            }
        }
    }
    best
}

/// Best objective over every decomposition of the schedule into consecutive
/// intervals of length at most `k`, rearranging each interval arbitrarily.
/// Includes the incumbent.
pub fn best_multi_window_rearrangement(
    instance: &Instance,
    current: &Schedule,
    k: usize,
) -> Objective {
    let n = instance.len();
    let k = k.min(n);
    let order = current.order();
    let mut best = instance.evaluate(current).unwrap().objective();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        instance: &Instance,
        order: &[JobId],
        k: usize,
        pos: usize,
        prev: Option<TypeId>,
        time: u64,
        tard: u64,
        best: &mut Objective,
    ) {
        let n = order.len();
        if pos == n {
            let objective = Objective::new(tard, time);
            if objective < *best {
                *best = objective;
            }
            return;
        }
        for len in 1..=k.min(n - pos) {
            for perm in permutations(&order[pos..pos + len]) {
                let (added_tard, new_time) = walk(instance, &perm, prev, time);
                let last_type = instance.type_of(*perm.last().unwrap());
                rec(
                    instance,
                    order,
                    k,
                    pos + len,
                    Some(last_type),
                    new_time,
                    tard + added_tard,
                    best,
                );
            }
        }
    }
    rec(instance, order, k, 0, None, 0, 0, &mut best);
    best
}

fn bfs_distance<F>(a: &Schedule, b: &Schedule, neighbors: F) -> usize
where
    F: Fn(&[JobId], &mut Vec<Vec<JobId>>),
{
    if a == b {
        return 0;
    }
    let target = b.order().to_vec();
    let mut seen: HashMap<Vec<JobId>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(a.order().to_vec(), 0);
    queue.push_back(a.order().to_vec());
    let mut scratch = Vec::new();
    while let Some(state) = queue.pop_front() {
        let d = seen[&state];
        scratch.clear();
        neighbors(&state, &mut scratch);
        for next in scratch.drain(..) {
            if next == target {
                return d + 1;
            }
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("all permutations are connected by swaps/inserts")
}

/// Shortest-path swap distance in the graph of single transpositions.
pub fn bfs_swap_distance(a: &Schedule, b: &Schedule) -> usize {
    bfs_distance(a, b, |state, out| {
        let n = state.len();
        for i in 0..n {
            for j in i + 1..n {
                let mut next = state.to_vec();
                next.swap(i, j);
                out.push(next);
            }
        }
    })
}

/// Shortest-path insert distance in the graph of single remove-and-reinsert
/// moves.
pub fn bfs_insert_distance(a: &Schedule, b: &Schedule) -> usize {
    bfs_distance(a, b, |state, out| {
        let n = state.len();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = state.to_vec();
                let job = next.remove(i);
                next.insert(j, job);
                out.push(next);
            }
        }
    })
}

/// Multi-window distance straight from its recursive definition: the minimal
/// `k` such that the two orders decompose into aligned intervals of length at
/// most `k` with equal job sets.
pub fn multi_window_distance_by_definition(a: &Schedule, b: &Schedule) -> usize {
    fn multiset_eq(x: &[JobId], y: &[JobId]) -> bool {
        let mut xs: Vec<JobId> = x.to_vec();
        let mut ys: Vec<JobId> = y.to_vec();
        xs.sort_unstable();
        ys.sort_unstable();
        xs == ys
    }
    fn decomposes(a: &[JobId], b: &[JobId], k: usize) -> bool {
        let n = a.len();
        if n <= k {
            return true;
        }
        for prefix in n - k..n {
            if multiset_eq(&a[prefix..], &b[prefix..]) && decomposes(&a[..prefix], &b[..prefix], k)
            {
                return true;
            }
        }
        false
    }
    if a == b {
        return 0;
    }
    (1..=a.len())
        .find(|&k| decomposes(a.order(), b.order(), k))
        .expect("any pair decomposes at k = n")
}
