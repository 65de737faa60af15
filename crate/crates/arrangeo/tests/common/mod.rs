//! Seeded random generators and model checkers shared by the integration
//! suites. Every generator draws from an explicit ChaCha RNG so any failure
//! reproduces exactly from the seed printed by [`seeded_rng`].
#![allow(dead_code)] // each test binary uses its own subset of these helpers

use arrangeo::arrangement::{Arrangement, Hyperplane};
use arrangeo::exactmath::{integer, QVector};
use arrangeo::normsys::{AntipodalMap, NormalSystem};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    println!("rng seed: {seed}");
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero vector with integer entries in `lo..=hi`.
pub fn random_vector(rng: &mut ChaCha8Rng, m: usize, lo: i64, hi: i64) -> QVector {
    loop {
        let v = QVector::new((0..m).map(|_| integer(rng.random_range(lo..=hi))).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random arrangement in general position with integer coefficients in
/// `lo..=hi`, grown one hyperplane at a time under rejection.
pub fn random_arrangement(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: i64, hi: i64) -> Arrangement {
    let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(n);
    while hyperplanes.len() < n {
        let normal = random_vector(rng, m, lo, hi);
        let offset = integer(rng.random_range(lo..=hi));
        let Ok(h) = Hyperplane::new(normal, offset) else {
            continue;
        };
        hyperplanes.push(h);
        let candidate = Arrangement::new(m, hyperplanes.clone()).expect("dimensions match");
        if !candidate.is_general_position() {
            hyperplanes.pop();
        }
    }
    Arrangement::new(m, hyperplanes).expect("dimensions match")
}

/// A random maximally-independent normal system on `n` lines in dimension `m`.
pub fn random_normal_system(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: i64, hi: i64) -> NormalSystem {
    let mut reps: Vec<QVector> = Vec::with_capacity(n);
    while reps.len() < n {
        reps.push(random_vector(rng, m, lo, hi));
        if NormalSystem::new(m, reps.clone()).is_err() {
            reps.pop();
        }
    }
    NormalSystem::new(m, reps).expect("validated while growing")
}

/// The same normals with fresh random offsets, kept in general position.
pub fn random_offsets(rng: &mut ChaCha8Rng, arr: &Arrangement, lo: i64, hi: i64) -> Arrangement {
    loop {
        let offsets = (0..arr.len())
            .map(|_| integer(rng.random_range(lo..=hi)))
            .collect();
        let candidate = arr.with_offsets(offsets).expect("same hyperplane count");
        if candidate.is_general_position() {
            return candidate;
        }
    }
}

/// A uniformly random antipodal bijection on `n` lines.
pub fn random_map(rng: &mut ChaCha8Rng, n: usize) -> AntipodalMap {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let flips = (0..n).map(|_| rng.random_bool(0.5)).collect();
    AntipodalMap::new(perm, flips).expect("valid permutation")
}

/// Relabels the hyperplanes of `arr` by a random permutation, returning the
/// shuffled arrangement and the map sending old subscripts to new ones.
pub fn shuffled_copy(rng: &mut ChaCha8Rng, arr: &Arrangement) -> (Arrangement, Vec<usize>) {
    let n = arr.len();
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let hyperplanes = order.iter().map(|&i| arr.hyperplane(i).clone()).collect();
    let shuffled = Arrangement::new(arr.dim(), hyperplanes).expect("same dimensions");
    // order[k] is the old subscript placed at new position k+1; invert it.
    let mut old_to_new = vec![0; n];
    for (new_pos, &old) in order.iter().enumerate() {
        old_to_new[old - 1] = new_pos + 1;
    }
    (shuffled, old_to_new)
}

/// Model check of arrangement isomorphism by full ordered vertex sequences:
/// on every line of `arr1`, the vertex order mapped through `perm` must
/// equal the vertex order on the image line in `arr2`, up to reversal.
/// Requires dimension at least 2 (lines are cut out by (m−1)-subsets).
pub fn ordered_sequences_isomorphic(arr1: &Arrangement, arr2: &Arrangement, perm: &[usize]) -> bool {
    let n = arr1.len();
    let m = arr1.dim();
    assert!(m >= 2, "lines need at least two dimensions");
    for line in (1..=n).combinations(m - 1) {
        let seq1 = arr1
            .order_on_line(&line)
            .expect("line of an arrangement in general position");
        let mapped: Vec<Vec<usize>> = seq1
            .iter()
            .map(|vertex| {
                let mut image: Vec<usize> = vertex.iter().map(|&i| perm[i - 1]).collect();
                image.sort_unstable();
                image
            })
            .collect();
        let mut image_line: Vec<usize> = line.iter().map(|&i| perm[i - 1]).collect();
        image_line.sort_unstable();
        let seq2 = arr2.order_on_line(&image_line).expect("image line");
        let reversed: Vec<Vec<usize>> = mapped.iter().rev().cloned().collect();
        if seq2 != mapped && seq2 != reversed {
            return false;
        }
    }
    true
}
