//! Per-type earliest-due-date chains and the three greedy starting solutions.
//!
//! `start_dd` sorts all jobs by deadline. `start_sm` and `start_tm` keep jobs
//! of one type contiguous (deadline-sorted inside the block) and enumerate all
//! block orders, picking the one with minimum total setup (`sm`) or minimum
//! tardiness-then-makespan (`tm`).

use crate::error::Error;
use crate::model::{Instance, JobId, Objective, Schedule, TypeId};

/// Blocks of `start_sm`/`start_tm` are found by enumerating all orders of the
/// occurring types, which is only sensible for small type counts.
pub const MAX_ENUMERATED_TYPES: usize = 10;

/// All jobs of one type, sorted by non-decreasing deadline
/// (ties by ascending job id; infinite deadlines last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EddChain {
    pub type_id: TypeId,
    pub job_ids: Vec<JobId>,
}

/// One chain per occurring type, in ascending type order. The chains
/// partition the instance's jobs.
pub fn edd_chains(instance: &Instance) -> Vec<EddChain> {
    let mut per_type: Vec<Vec<JobId>> = vec![Vec::new(); instance.type_count()];
    for (i, job) in instance.jobs().iter().enumerate() {
        per_type[job.type_id.0].push(JobId(i));
    }
    per_type
        .into_iter()
        .enumerate()
        .filter(|(_, ids)| !ids.is_empty())
        .map(|(t, mut ids)| {
            ids.sort_by_key(|&id| (instance.job(id).deadline, id));
            EddChain {
                type_id: TypeId(t),
                job_ids: ids,
            }
        })
        .collect()
}

/// Deadline-sorted start: all jobs ordered by non-decreasing deadline,
/// ties by type id, then job id.
pub fn start_dd(instance: &Instance) -> Schedule {
    let mut order: Vec<JobId> = (0..instance.len()).map(JobId).collect();
    order.sort_by_key(|&id| {
        let job = instance.job(id);
        (job.deadline, job.type_id, id)
    });
    Schedule::from_order_unchecked(order)
}

fn enumerate_block_orders<F>(chains: &[EddChain], mut visit: F) -> Result<(), Error>
where
    F: FnMut(&[usize]),
{
    let k = chains.len();
    if k > MAX_ENUMERATED_TYPES {
        return Err(Error::TooManyTypeBlocks {
            count: k,
            limit: MAX_ENUMERATED_TYPES,
        });
    }
    // Lexicographic enumeration of chain-index permutations, so ties resolve
    // to the smallest type sequence.
    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        visit(&indices);
        // next_permutation
        let Some(i) = (0..k.saturating_sub(1)).rfind(|&i| indices[i] < indices[i + 1]) else {
            return Ok(());
        };
        let j = (i + 1..k).rfind(|&j| indices[j] > indices[i]).unwrap();
        indices.swap(i, j);
        indices[i + 1..].reverse();
    }
}

fn blocks_to_schedule(chains: &[EddChain], block_order: &[usize]) -> Schedule {
    let mut order = Vec::with_capacity(chains.iter().map(|c| c.job_ids.len()).sum());
    for &b in block_order {
        order.extend_from_slice(&chains[b].job_ids);
    }
    Schedule::from_order_unchecked(order)
}

/// Type-block start minimizing the total setup time over all block orders.
/// Errors when more than [`MAX_ENUMERATED_TYPES`] types occur.
pub fn start_sm(instance: &Instance) -> Result<Schedule, Error> {
    let chains = edd_chains(instance);
    let setup = instance.setup();
    let mut best: Option<(u64, Vec<usize>)> = None;
    enumerate_block_orders(&chains, |block_order| {
        let total: u64 = block_order
            .windows(2)
            .map(|w| setup.get(chains[w[0]].type_id, chains[w[1]].type_id))
            .sum();
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            best = Some((total, block_order.to_vec()));
        }
    })?;
    let (_, block_order) = best.expect("instances are non-empty");
    Ok(blocks_to_schedule(&chains, &block_order))
}

/// Type-block start minimizing total tardiness, then makespan, over all block
/// orders. Errors when more than [`MAX_ENUMERATED_TYPES`] types occur.
pub fn start_tm(instance: &Instance) -> Result<Schedule, Error> {
    let chains = edd_chains(instance);
    let mut best: Option<(Objective, Vec<usize>)> = None;
    enumerate_block_orders(&chains, |block_order| {
        let candidate = blocks_to_schedule(&chains, block_order);
        let objective = instance
            .evaluate(&candidate)
            .expect("block schedules are permutations")
            .objective();
        if best.as_ref().is_none_or(|(b, _)| objective < *b) {
            best = Some((objective, block_order.to_vec()));
        }
    })?;
    let (_, block_order) = best.expect("instances are non-empty");
    Ok(blocks_to_schedule(&chains, &block_order))
}

/// Counts pairs of same-type jobs scheduled with the later-deadline job
/// first. A schedule is an earliest-due-date schedule (EDDS) iff this is 0.
pub fn type_inversions(instance: &Instance, schedule: &Schedule) -> usize {
    let mut last_seen: Vec<Vec<JobId>> = vec![Vec::new(); instance.type_count()];
    for &id in schedule.order() {
        last_seen[instance.type_of(id).0].push(id);
    }
    let mut inversions = 0;
    for ids in last_seen {
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if instance.job(ids[i]).deadline > instance.job(ids[j]).deadline {
                    inversions += 1;
                }
            }
        }
    }
    inversions
}

/// Whether every type's jobs appear in non-decreasing deadline order.
pub fn is_edds(instance: &Instance, schedule: &Schedule) -> bool {
    type_inversions(instance, schedule) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Deadline, Job, SetupMatrix};
    use proptest::prelude::*;

    fn job(p: u64, d: Option<u64>, t: usize) -> Job {
        Job {
            processing_time: p,
            deadline: d.map_or(Deadline::Infinite, Deadline::Finite),
            type_id: TypeId(t),
        }
    }

    #[test]
    fn chains_sort_by_deadline_then_id() {
        let inst = Instance::new(
            vec![job(1, Some(10), 0), job(1, Some(5), 0)],
            SetupMatrix::zero(1),
        )
        .unwrap();
        let chains = edd_chains(&inst);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].job_ids, vec![JobId(1), JobId(0)]);
    }

    #[test]
    fn chains_singletons_for_distinct_types() {
        let inst = Instance::new(
            vec![job(1, None, 0), job(1, None, 1), job(1, None, 2)],
            SetupMatrix::uniform(3, 1),
        )
        .unwrap();
        let chains = edd_chains(&inst);
        assert_eq!(chains.len(), 3);
        for (i, chain) in chains.iter().enumerate() {
            assert_eq!(chain.type_id, TypeId(i));
            assert_eq!(chain.job_ids.len(), 1);
        }
    }

    #[test]
    fn chains_break_infinite_ties_by_job_id() {
        // Four unit jobs, types 0,1,2,0, all deadlines infinite.
        let inst = Instance::new(
            vec![job(1, None, 0), job(1, None, 1), job(1, None, 2), job(1, None, 0)],
            SetupMatrix::uniform(3, 1),
        )
        .unwrap();
        let chains = edd_chains(&inst);
        assert_eq!(chains[0].job_ids, vec![JobId(0), JobId(3)]);
        assert_eq!(chains[1].job_ids, vec![JobId(1)]);
        assert_eq!(chains[2].job_ids, vec![JobId(2)]);
    }

    #[test]
    fn dd_sorts_by_deadline() {
        let inst = Instance::new(
            vec![job(1, Some(9), 0), job(1, Some(3), 0), job(1, Some(7), 0)],
            SetupMatrix::zero(1),
        )
        .unwrap();
        assert_eq!(start_dd(&inst).order(), &[JobId(1), JobId(2), JobId(0)]);
    }

    #[test]
    fn dd_equal_deadlines_stable() {
        let inst = Instance::new(
            vec![job(1, Some(4), 0), job(1, Some(4), 0), job(1, Some(4), 0)],
            SetupMatrix::zero(1),
        )
        .unwrap();
        assert_eq!(start_dd(&inst).order(), &[JobId(0), JobId(1), JobId(2)]);
    }

    #[test]
    fn dd_all_infinite_groups_by_type_then_id() {
        let inst = Instance::new(
            vec![job(1, None, 0), job(1, None, 1), job(1, None, 2), job(1, None, 0)],
            SetupMatrix::uniform(3, 1),
        )
        .unwrap();
        // Deadline ties resolve by type id, then job id.
        assert_eq!(
            start_dd(&inst).order(),
            &[JobId(0), JobId(3), JobId(1), JobId(2)]
        );
    }

    #[test]
    fn sm_two_symmetric_types_picks_lexicographic_order() {
        let inst = Instance::new(
            vec![job(1, None, 1), job(1, None, 0)],
            SetupMatrix::uniform(2, 7),
        )
        .unwrap();
        // Both block orders cost 7; the tie resolves to blocks (0, 1).
        assert_eq!(start_sm(&inst).unwrap().order(), &[JobId(1), JobId(0)]);
    }

    #[test]
    fn sm_three_types_minimizes_total_setup() {
        // Cheap edges 0->1 and 1->2; everything else expensive but metric.
        let cells = vec![
            0, 1, 2, //
            5, 0, 1, //
            5, 5, 0,
        ];
        let inst = Instance::new(
            vec![job(1, None, 2), job(1, None, 0), job(1, None, 1)],
            SetupMatrix::new(3, cells),
        )
        .unwrap();
        let sched = start_sm(&inst).unwrap();
        assert_eq!(sched.order(), &[JobId(1), JobId(2), JobId(0)]);
        assert_eq!(inst.total_setup(&sched).unwrap(), 2);

        // Independent route: evaluate every block order through the model.
        let chains = edd_chains(&inst);
        let mut best = u64::MAX;
        enumerate_block_orders(&chains, |bo| {
            let s = blocks_to_schedule(&chains, bo);
            best = best.min(inst.total_setup(&s).unwrap());
        })
        .unwrap();
        assert_eq!(best, 2);
    }

    #[test]
    fn sm_single_type_has_zero_setup() {
        let inst = Instance::new(
            vec![job(2, Some(9), 0), job(3, None, 0)],
            SetupMatrix::zero(1),
        )
        .unwrap();
        let sched = start_sm(&inst).unwrap();
        assert_eq!(inst.total_setup(&sched).unwrap(), 0);
        assert_eq!(sched.order(), &[JobId(0), JobId(1)]);
    }

    #[test]
    fn tm_puts_tight_block_first() {
        // Type 0 is tight, type 1 is loose; scheduling type 1 first makes
        // type 0 late.
        let inst = Instance::new(
            vec![job(3, Some(3), 0), job(3, Some(6), 0), job(3, Some(100), 1), job(3, Some(100), 1)],
            SetupMatrix::uniform(2, 1),
        )
        .unwrap();
        let sched = start_tm(&inst).unwrap();
        assert_eq!(sched.order(), &[JobId(0), JobId(1), JobId(2), JobId(3)]);
        assert!(inst.evaluate(&sched).unwrap().is_feasible());

        // Independent route: both block orders, evaluated through the model.
        let other = Schedule::new(vec![JobId(2), JobId(3), JobId(0), JobId(1)]).unwrap();
        assert!(
            inst.evaluate(&sched).unwrap().objective()
                < inst.evaluate(&other).unwrap().objective()
        );
    }

    #[test]
    fn tm_all_infinite_matches_sm_tie_break() {
        let inst = Instance::new(
            vec![job(1, None, 1), job(1, None, 0)],
            SetupMatrix::uniform(2, 7),
        )
        .unwrap();
        assert_eq!(
            start_tm(&inst).unwrap().order(),
            start_sm(&inst).unwrap().order()
        );
    }

    #[test]
    fn tm_single_type_is_chain() {
        let inst = Instance::new(
            vec![job(2, Some(9), 0), job(3, Some(2), 0)],
            SetupMatrix::zero(1),
        )
        .unwrap();
        assert_eq!(start_tm(&inst).unwrap().order(), &[JobId(1), JobId(0)]);
    }

    #[test]
    fn block_starts_refuse_too_many_types() {
        let t = MAX_ENUMERATED_TYPES + 1;
        let jobs: Vec<Job> = (0..t).map(|i| job(1, None, i)).collect();
        let inst = Instance::new(jobs, SetupMatrix::zero(t)).unwrap();
        assert!(matches!(start_sm(&inst), Err(Error::TooManyTypeBlocks { .. })));
        assert!(matches!(start_tm(&inst), Err(Error::TooManyTypeBlocks { .. })));
    }

    fn arb_instance() -> impl Strategy<Value = Instance> {
        (1usize..8, 1usize..5).prop_flat_map(|(n, t)| {
            let jobs = proptest::collection::vec(
                (1u64..9, 0u64..40, 0usize..t).prop_map(move |(p, d, ty)| Job {
                    processing_time: p,
                    deadline: if d > 30 { Deadline::Infinite } else { Deadline::Finite(d) },
                    type_id: TypeId(ty),
                }),
                n,
            );
            let matrix = proptest::collection::vec(2u64..=4, t * t);
            (jobs, matrix, Just(t)).prop_map(move |(jobs, mut cells, t)| {
                for a in 0..t {
                    cells[a * t + a] = 0;
                }
                Instance::new(jobs, SetupMatrix::new(t, cells)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn block_starts_are_edds_and_deterministic(inst in arb_instance()) {
            let sm = start_sm(&inst).unwrap();
            let tm = start_tm(&inst).unwrap();
            let dd = start_dd(&inst);
            prop_assert!(is_edds(&inst, &sm));
            prop_assert!(is_edds(&inst, &tm));
            prop_assert!(is_edds(&inst, &dd));
            let sm_again = start_sm(&inst).unwrap();
            let tm_again = start_tm(&inst).unwrap();
            prop_assert_eq!(sm.order(), sm_again.order());
            prop_assert_eq!(tm.order(), tm_again.order());
        }

        #[test]
        fn sm_setup_is_minimum_over_block_orders(inst in arb_instance()) {
            let sm = start_sm(&inst).unwrap();
            let chains = edd_chains(&inst);
            let mut best = u64::MAX;
            enumerate_block_orders(&chains, |bo| {
                let s = blocks_to_schedule(&chains, bo);
                best = best.min(inst.total_setup(&s).unwrap());
            }).unwrap();
            prop_assert_eq!(inst.total_setup(&sm).unwrap(), best);
        }
    }
}
