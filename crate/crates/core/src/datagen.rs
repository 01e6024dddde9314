//! Instance generation from two-column benchmark data and random (but always
//! valid) setup matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::model::{Deadline, Instance, Job, SetupMatrix, TypeId};

/// Builds an instance from `(processing_time, deadline)` benchmark pairs:
/// both values are multiplied by `scale`, and each job draws a type
/// independently and uniformly from the matrix's type range using the seeded
/// generator. Scaling keeps setup times from dominating every objective.
pub fn adapt_pairs(
    pairs: &[(u64, u64)],
    setup: SetupMatrix,
    scale: u64,
    seed: u64,
) -> Result<Instance, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = setup.type_count();
    let jobs = pairs
        .iter()
        .map(|&(processing, deadline)| Job {
            processing_time: processing * scale,
            deadline: Deadline::Finite(deadline * scale),
            type_id: TypeId(rng.gen_range(0..t)),
        })
        .collect();
    Instance::new(jobs, setup)
}

/// Random symmetric setup matrix with off-diagonal values drawn uniformly
/// from `[lo, min(hi, 2 * lo)]`. Capping the range at twice its minimum makes
/// every draw satisfy the triangle inequality.
pub fn random_metric_setup(type_count: usize, lo: u64, hi: u64, seed: u64) -> SetupMatrix {
    assert!(type_count >= 1, "need at least one type");
    assert!(lo >= 1, "zero off-diagonal setups would need lo >= 1 anyway");
    let hi = hi.max(lo).min(2 * lo);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = vec![0u64; type_count * type_count];
    for a in 0..type_count {
        for b in a + 1..type_count {
            let v = rng.gen_range(lo..=hi);
            cells[a * type_count + b] = v;
            cells[b * type_count + a] = v;
        }
    }
    SetupMatrix::new(type_count, cells)
}
