//! Distance measures between two schedules of the same job set.
//!
//! Neighborhood searches promise to stay within radius `k` of the incumbent;
//! these measures are how tests certify that promise. All four are symmetric
//! and return 0 exactly when the schedules are equal.

use crate::error::Error;
use crate::model::Schedule;

fn check_same_jobs(a: &Schedule, b: &Schedule) -> Result<usize, Error> {
    // Schedules are always permutations of 0..n, so equal length means equal
    // job sets.
    if a.len() != b.len() {
        return Err(Error::ScheduleLengthMismatch(a.len(), b.len()));
    }
    Ok(a.len())
}

/// Size of the smallest contiguous position range outside which the two
/// schedules agree: `last differing - first differing + 1`, or 0 if equal.
pub fn window_distance(a: &Schedule, b: &Schedule) -> Result<usize, Error> {
    let n = check_same_jobs(a, b)?;
    let ao = a.order();
    let bo = b.order();
    let first = (0..n).find(|&i| ao[i] != bo[i]);
    match first {
        None => Ok(0),
        Some(first) => {
            let last = (0..n).rfind(|&i| ao[i] != bo[i]).unwrap();
            Ok(last - first + 1)
        }
    }
}

/// Smallest `k` such that the schedules decompose into aligned intervals of
/// length at most `k` containing the same job sets; 0 if equal.
///
/// A position `i` is a cut when the first `i` jobs of both schedules form the
/// same set; the answer is the largest gap between consecutive cuts.
pub fn multi_window_distance(a: &Schedule, b: &Schedule) -> Result<usize, Error> {
    let n = check_same_jobs(a, b)?;
    if a.order() == b.order() {
        return Ok(0);
    }
    let mut pending = vec![0i8; n];
    let mut imbalance = 0usize;
    let mut last_cut = 0usize;
    let mut max_gap = 0usize;
    for i in 0..n {
        for (order, delta) in [(a.order(), 1i8), (b.order(), -1i8)] {
            let slot = &mut pending[order[i].0];
            if *slot == 0 {
                imbalance += 1;
            }
            *slot += delta;
            if *slot == 0 {
                imbalance -= 1;
            }
        }
        if imbalance == 0 {
            max_gap = max_gap.max(i + 1 - last_cut);
            last_cut = i + 1;
        }
    }
    Ok(max_gap)
}

/// Minimum number of transpositions transforming one schedule into the other:
/// `n` minus the number of cycles of the relating permutation.
pub fn swap_distance(a: &Schedule, b: &Schedule) -> Result<usize, Error> {
    let n = check_same_jobs(a, b)?;
    let pos_b = b.positions();
    // perm[i] = position in b of the job a schedules at position i
    let perm: Vec<usize> = a.order().iter().map(|&j| pos_b[j.0]).collect();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    Ok(n - cycles)
}

/// Minimum number of remove-and-reinsert moves transforming one schedule into
/// the other: `n` minus the length of their longest common subsequence.
pub fn insert_distance(a: &Schedule, b: &Schedule) -> Result<usize, Error> {
    let n = check_same_jobs(a, b)?;
    // Both are permutations of the same set, so the LCS equals the longest
    // increasing subsequence of a's jobs mapped to their positions in b.
    let pos_b = b.positions();
    let mapped: Vec<usize> = a.order().iter().map(|&j| pos_b[j.0]).collect();
    let mut tails: Vec<usize> = Vec::new();
    for &x in &mapped {
        match tails.binary_search(&x) {
            Err(idx) => {
                if idx == tails.len() {
                    tails.push(x);
                } else {
                    tails[idx] = x;
                }
            }
            Ok(_) => unreachable!("positions are distinct"),
        }
    }
    Ok(n - tails.len())
}
