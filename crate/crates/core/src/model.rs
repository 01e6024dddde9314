//! Problem data model, validation, and exact objective evaluation.
//!
//! An instance pairs a list of jobs (processing time, deadline, product type)
//! with a square matrix of sequence-dependent setup times between types.
//! A solution is a permutation of the job indices; evaluating it yields
//! completion times, the makespan, and the total tardiness.

use crate::error::Error;

/// Index of a product type, `0..t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeId(pub usize);

/// Index of a job inside an [`Instance`], `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JobId(pub usize);

/// A job deadline. `Finite(d) < Infinite`, so sorting by deadline puts
/// unconstrained jobs last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Deadline {
    Finite(u64),
    Infinite,
}

impl Deadline {
    /// Tardiness of a job with this deadline completing at `completion`.
    pub fn tardiness(self, completion: u64) -> u64 {
        match self {
            Deadline::Finite(d) => completion.saturating_sub(d),
            Deadline::Infinite => 0,
        }
    }
}

/// One job: processing time, deadline, product type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Job {
    pub processing_time: u64,
    pub deadline: Deadline,
    pub type_id: TypeId,
}

/// A reported defect of a setup matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetupViolation {
    /// `cells[t][t] != 0`.
    NonZeroDiagonal(TypeId),
    /// `cells[a][c] > cells[a][b] + cells[b][c]` for the triple `(a, b, c)`.
    TriangleInequality(TypeId, TypeId, TypeId),
}

/// Square matrix of setup times between product types.
///
/// The machine needs `get(a, b)` extra time units when a job of type `b`
/// directly follows a job of type `a`. Valid matrices have a zero diagonal and
/// satisfy the triangle inequality; symmetry is not required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetupMatrix {
    type_count: usize,
    cells: Vec<u64>,
}

impl SetupMatrix {
    /// Builds a matrix from row-major cells. Panics if `cells.len() != t * t`.
    pub fn new(type_count: usize, cells: Vec<u64>) -> Self {
        assert_eq!(
            cells.len(),
            type_count * type_count,
            "setup matrix needs {t}x{t} cells",
            t = type_count
        );
        SetupMatrix { type_count, cells }
    }

    /// All-zero matrix (no setups between any pair of types).
    pub fn zero(type_count: usize) -> Self {
        SetupMatrix::new(type_count, vec![0; type_count * type_count])
    }

    /// Uniform matrix with `value` off the diagonal and zero on it.
    pub fn uniform(type_count: usize, value: u64) -> Self {
        let mut cells = vec![value; type_count * type_count];
        for t in 0..type_count {
            cells[t * type_count + t] = 0;
        }
        SetupMatrix { type_count, cells }
    }

    pub fn type_count(&self) -> usize {
        self.type_count
    }

    #[inline]
    pub fn get(&self, from: TypeId, to: TypeId) -> u64 {
        self.cells[from.0 * self.type_count + to.0]
    }

    /// Largest setup time in the matrix.
    pub fn max_setup(&self) -> u64 {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    /// Checks the zero-diagonal and triangle-inequality invariants and returns
    /// every violated constraint. Violations are data, not failures; an empty
    /// list means the matrix is valid.
    pub fn validate(&self) -> Vec<SetupViolation> {
        let mut violations = Vec::new();
        let t = self.type_count;
        for a in 0..t {
            if self.cells[a * t + a] != 0 {
                violations.push(SetupViolation::NonZeroDiagonal(TypeId(a)));
            }
        }
        for a in 0..t {
            for b in 0..t {
                for c in 0..t {
                    if self.cells[a * t + c] > self.cells[a * t + b] + self.cells[b * t + c] {
                        violations.push(SetupViolation::TriangleInequality(
                            TypeId(a),
                            TypeId(b),
                            TypeId(c),
                        ));
                    }
                }
            }
        }
        violations
    }

    /// Whether `get(a, b) == get(b, a)` for all pairs. Asymmetry is allowed;
    /// this is informational only.
    pub fn is_symmetric(&self) -> bool {
        let t = self.type_count;
        (0..t).all(|a| (0..t).all(|b| self.cells[a * t + b] == self.cells[b * t + a]))
    }
}

/// A scheduling instance: jobs plus the setup matrix for their types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    jobs: Vec<Job>,
    setup: SetupMatrix,
}

impl Instance {
    /// Validates that the job list is non-empty, every type id is covered by
    /// the matrix, and the matrix itself is valid.
    pub fn new(jobs: Vec<Job>, setup: SetupMatrix) -> Result<Self, Error> {
        if jobs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (i, job) in jobs.iter().enumerate() {
            if job.type_id.0 >= setup.type_count() {
                return Err(Error::TypeOutOfRange {
                    job: i,
                    type_id: job.type_id.0,
                    type_count: setup.type_count(),
                });
            }
        }
        let violations = setup.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidSetup(violations));
        }
        Ok(Instance { jobs, setup })
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    #[inline]
    pub fn job(&self, id: JobId) -> &Job {
        &self.jobs[id.0]
    }

    pub fn setup(&self) -> &SetupMatrix {
        &self.setup
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty job lists
    }

    pub fn type_count(&self) -> usize {
        self.setup.type_count()
    }

    #[inline]
    pub fn type_of(&self, id: JobId) -> TypeId {
        self.jobs[id.0].type_id
    }

    /// Sum of all processing times; a lower bound on any makespan.
    pub fn total_processing(&self) -> u64 {
        self.jobs.iter().map(|j| j.processing_time).sum()
    }

    /// Largest processing time among the jobs.
    pub fn max_processing(&self) -> u64 {
        self.jobs.iter().map(|j| j.processing_time).max().unwrap_or(0)
    }

    /// Evaluates a schedule: completion times via the recurrence
    /// `C(1) = t_first`, `C(i) = C(i-1) + setup(prev, cur) + t_cur`,
    /// plus makespan and total tardiness.
    pub fn evaluate(&self, schedule: &Schedule) -> Result<Evaluation, Error> {
        if schedule.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: schedule.len(),
            });
        }
        let order = schedule.order();
        let mut completion_times = Vec::with_capacity(order.len());
        let mut time = 0u64;
        let mut tardiness = 0u64;
        let mut prev_type: Option<TypeId> = None;
        for &id in order {
            let job = self.job(id);
            if let Some(prev) = prev_type {
                time += self.setup.get(prev, job.type_id);
            }
            time += job.processing_time;
            tardiness += job.deadline.tardiness(time);
            completion_times.push(time);
            prev_type = Some(job.type_id);
        }
        Ok(Evaluation {
            makespan: time,
            total_tardiness: tardiness,
            completion_times,
        })
    }

    /// Sum of the setup times a schedule incurs between adjacent jobs.
    ///
    /// The machine never idles, so this always equals
    /// `makespan - total_processing()`.
    pub fn total_setup(&self, schedule: &Schedule) -> Result<u64, Error> {
        if schedule.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: schedule.len(),
            });
        }
        let order = schedule.order();
        let mut total = 0u64;
        for pair in order.windows(2) {
            total += self.setup.get(self.type_of(pair[0]), self.type_of(pair[1]));
        }
        Ok(total)
    }
}

/// A solution: a permutation of the instance's job indices
/// (position -> job id).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    order: Vec<JobId>,
}

impl Schedule {
    /// Validates that `order` is a bijection on `0..order.len()`.
    pub fn new(order: Vec<JobId>) -> Result<Self, Error> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &JobId(id) in &order {
            if id >= n || seen[id] {
                return Err(Error::NotAPermutation { expected: n, got: n });
            }
            seen[id] = true;
        }
        Ok(Schedule { order })
    }

    /// The identity permutation over `n` jobs.
    pub fn identity(n: usize) -> Self {
        Schedule {
            order: (0..n).map(JobId).collect(),
        }
    }

    /// Builds a schedule from an order already known to be a permutation.
    pub(crate) fn from_order_unchecked(order: Vec<JobId>) -> Self {
        debug_assert!(Schedule::new(order.clone()).is_ok());
        Schedule { order }
    }

    pub fn order(&self) -> &[JobId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of each job: `positions()[job.0]` is where `job` is scheduled.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &JobId(id)) in self.order.iter().enumerate() {
            pos[id] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Schedule { order }
    }
}

/// The objective bundle computed from a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    /// Completion time of the job at each position.
    pub completion_times: Vec<u64>,
    /// Completion time of the last job.
    pub makespan: u64,
    /// Sum over jobs of `max(completion - deadline, 0)`.
    pub total_tardiness: u64,
}

impl Evaluation {
    /// A schedule is feasible iff every job meets its deadline.
    pub fn is_feasible(&self) -> bool {
        self.total_tardiness == 0
    }

    pub fn objective(&self) -> Objective {
        Objective {
            tardiness: self.total_tardiness,
            makespan: self.makespan,
        }
    }
}

/// Comparison key for schedules: total tardiness first, makespan as the
/// tie-break. The derived `Ord` is exactly this lexicographic order, so
/// `a < b` means `a` is strictly better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Objective {
    pub tardiness: u64,
    pub makespan: u64,
}

impl Objective {
    pub fn new(tardiness: u64, makespan: u64) -> Self {
        Objective { tardiness, makespan }
    }

    pub fn is_feasible(&self) -> bool {
        self.tardiness == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Four unit-time jobs over three types with uniform unit setups;
    /// the identity order has makespan 7 and the optimum is 6.
    pub(crate) fn small_instance() -> Instance {
        let jobs = vec![
            Job { processing_time: 1, deadline: Deadline::Infinite, type_id: TypeId(0) },
            Job { processing_time: 1, deadline: Deadline::Infinite, type_id: TypeId(1) },
            Job { processing_time: 1, deadline: Deadline::Infinite, type_id: TypeId(2) },
            Job { processing_time: 1, deadline: Deadline::Infinite, type_id: TypeId(0) },
        ];
        Instance::new(jobs, SetupMatrix::uniform(3, 1)).unwrap()
    }

    #[test]
    fn validate_two_types_always_ok() {
        let m = SetupMatrix::new(2, vec![0, 5, 5, 0]);
        assert!(m.validate().is_empty());
    }

    #[test]
    fn validate_reports_triangle_violation() {
        let m = SetupMatrix::new(3, vec![0, 1, 10, 1, 0, 1, 1, 1, 0]);
        let violations = m.validate();
        assert!(violations
            .contains(&SetupViolation::TriangleInequality(TypeId(0), TypeId(1), TypeId(2))));
    }

    #[test]
    fn validate_uniform_unit_matrix_ok() {
        assert!(SetupMatrix::uniform(3, 1).validate().is_empty());
    }

    #[test]
    fn validate_reports_nonzero_diagonal() {
        let m = SetupMatrix::new(2, vec![1, 5, 5, 0]);
        assert_eq!(m.validate(), vec![SetupViolation::NonZeroDiagonal(TypeId(0))]);
    }

    #[test]
    fn evaluate_small_identity_and_improved() {
        let inst = small_instance();
        let eval = inst.evaluate(&Schedule::identity(4)).unwrap();
        assert_eq!(eval.makespan, 7);
        assert_eq!(eval.total_tardiness, 0);
        assert_eq!(eval.completion_times, vec![1, 3, 5, 7]);

        let improved =
            Schedule::new(vec![JobId(1), JobId(0), JobId(3), JobId(2)]).unwrap();
        let eval = inst.evaluate(&improved).unwrap();
        assert_eq!(eval.makespan, 6);
        assert!(eval.is_feasible());
    }

    #[test]
    fn evaluate_single_job_base_case() {
        let inst = Instance::new(
            vec![Job {
                processing_time: 7,
                deadline: Deadline::Finite(7),
                type_id: TypeId(0),
            }],
            SetupMatrix::zero(1),
        )
        .unwrap();
        let eval = inst.evaluate(&Schedule::identity(1)).unwrap();
        assert_eq!(eval.makespan, 7);
        assert_eq!(eval.total_tardiness, 0);
    }

    #[test]
    fn evaluate_rejects_wrong_length() {
        let inst = small_instance();
        let err = inst.evaluate(&Schedule::identity(3)).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { expected: 4, got: 3 });
    }

    #[test]
    fn schedule_rejects_non_permutation() {
        assert!(Schedule::new(vec![JobId(0), JobId(0)]).is_err());
        assert!(Schedule::new(vec![JobId(1), JobId(2)]).is_err());
    }

    #[test]
    fn objective_order_is_lexicographic() {
        assert!(Objective::new(0, 100) < Objective::new(5, 10));
        assert!(Objective::new(0, 100) > Objective::new(0, 99));
        assert_eq!(Objective::new(3, 50), Objective::new(3, 50));
    }

    #[test]
    fn feasibility_is_zero_tardiness() {
        assert!(Objective::new(0, 10).is_feasible());
        assert!(!Objective::new(1, 10).is_feasible());
        let inst = small_instance();
        assert!(inst.evaluate(&Schedule::identity(4)).unwrap().is_feasible());
    }

    #[test]
    fn instance_rejects_bad_type_and_empty() {
        assert_eq!(
            Instance::new(vec![], SetupMatrix::zero(1)).unwrap_err(),
            Error::EmptyInstance
        );
        let err = Instance::new(
            vec![Job {
                processing_time: 1,
                deadline: Deadline::Infinite,
                type_id: TypeId(3),
            }],
            SetupMatrix::zero(2),
        )
        .unwrap_err();
        assert!(matches!(err, Error::TypeOutOfRange { type_id: 3, .. }));
    }

    #[test]
    fn total_setup_matches_makespan_identity() {
        let inst = small_instance();
        for order in [
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![3, 2, 1, 0],
            vec![2, 0, 3, 1],
        ] {
            let s = Schedule::new(order.into_iter().map(JobId).collect()).unwrap();
            let eval = inst.evaluate(&s).unwrap();
            assert_eq!(
                inst.total_setup(&s).unwrap(),
                eval.makespan - inst.total_processing()
            );
        }
    }

    fn arb_small() -> impl Strategy<Value = (Instance, Schedule)> {
        (1usize..7, 1usize..4).prop_flat_map(|(n, t)| {
            let jobs = proptest::collection::vec(
                (1u64..10, 0u64..30, 0usize..t).prop_map(move |(p, d, ty)| Job {
                    processing_time: p,
                    deadline: if d > 20 { Deadline::Infinite } else { Deadline::Finite(d) },
                    type_id: TypeId(ty),
                }),
                n,
            );
            // Off-diagonal values in [lo, 2*lo] always satisfy the triangle
            // inequality, so random matrices from this range are valid.
            let matrix = proptest::collection::vec(3u64..=6, t * t);
            (jobs, matrix, Just(t), proptest::collection::vec(0usize..100, n))
                .prop_map(move |(jobs, mut cells, t, keys)| {
                    for a in 0..t {
                        cells[a * t + a] = 0;
                    }
                    let n = jobs.len();
                    let inst = Instance::new(jobs, SetupMatrix::new(t, cells)).unwrap();
                    let mut order: Vec<JobId> = (0..n).map(JobId).collect();
                    order.sort_by_key(|&JobId(i)| keys[i]);
                    (inst, Schedule::from_order_unchecked(order))
                })
        })
    }

    proptest! {
        #[test]
        fn completion_gaps_match_recurrence((inst, sched) in arb_small()) {
            let eval = inst.evaluate(&sched).unwrap();
            let order = sched.order();
            prop_assert_eq!(eval.completion_times[0], inst.job(order[0]).processing_time);
            for i in 1..order.len() {
                let gap = eval.completion_times[i] - eval.completion_times[i - 1];
                let setup = inst.setup().get(inst.type_of(order[i - 1]), inst.type_of(order[i]));
                prop_assert_eq!(gap, setup + inst.job(order[i]).processing_time);
            }
            prop_assert_eq!(eval.makespan, *eval.completion_times.last().unwrap());
        }

        #[test]
        fn total_processing_is_makespan_lower_bound((inst, sched) in arb_small()) {
            let eval = inst.evaluate(&sched).unwrap();
            prop_assert!(eval.makespan >= inst.total_processing());
        }

        #[test]
        fn completion_times_strictly_increase((inst, sched) in arb_small()) {
            // all generated processing times are positive
            let eval = inst.evaluate(&sched).unwrap();
            for w in eval.completion_times.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
        }

        #[test]
        fn reverse_keeps_makespan_when_symmetric((inst, sched) in arb_small()) {
            // Symmetrize by taking the pairwise min; values stay in [3, 6],
            // where any assignment satisfies the triangle inequality.
            let t = inst.type_count();
            let mut cells = vec![0u64; t * t];
            for a in 0..t {
                for b in 0..t {
                    let fwd = inst.setup().get(TypeId(a), TypeId(b));
                    let bwd = inst.setup().get(TypeId(b), TypeId(a));
                    cells[a * t + b] = fwd.min(bwd);
                }
            }
            let sym = Instance::new(inst.jobs().to_vec(), SetupMatrix::new(t, cells)).unwrap();
            assert!(sym.setup().is_symmetric());
            let fwd = sym.evaluate(&sched).unwrap().makespan;
            let bwd = sym.evaluate(&sched.reversed()).unwrap().makespan;
            prop_assert_eq!(fwd, bwd);
        }
    }
}
