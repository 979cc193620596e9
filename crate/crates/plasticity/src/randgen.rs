//! Seeded instance generators for property suites and the CLI's
//! verification runs. Distances are drawn from [1, 2] with a bounded
//! denominator, which makes every triangle inequality automatic
//! (max distance <= 2 = 2 * min distance) while still exercising exact
//! arithmetic.

use crate::metric::FiniteMetricSpace;
use crate::rational::{rational, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// n-point space with distances k/q in [1, 2], q <= max_denominator.
pub fn random_space(rng: &mut impl Rng, n: usize, max_denominator: u32) -> FiniteMetricSpace {
    assert!(n >= 1);
    assert!(max_denominator >= 1);
    let labels = (0..n).map(|i| format!("r{i}")).collect();
    let mut dist = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let q = rng.gen_range(1..=max_denominator) as i64;
            let k = rng.gen_range(q..=2 * q);
            let d = rational(k, q);
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }
    FiniteMetricSpace::new(labels, dist).expect("distances in [1,2] always satisfy the axioms")
}

pub fn random_catalog(
    seed: u64,
    count: usize,
    n: usize,
    max_denominator: u32,
) -> Vec<FiniteMetricSpace> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| random_space(&mut rng, n, max_denominator)).collect()
}

/// Induced subspace on a random k-subset, relabeled in index order.
pub fn random_subspace(
    rng: &mut impl Rng,
    space: &FiniteMetricSpace,
    k: usize,
) -> FiniteMetricSpace {
    assert!(k >= 1 && k <= space.len());
    let mut indices: Vec<usize> = (0..space.len()).collect();
    indices.shuffle(rng);
    indices.truncate(k);
    indices.sort_unstable();
    space.subspace(&indices).expect("nonempty index set")
}

/// Finite-support vectors in the unit ball of l2: 4 coordinates, each
/// m/8 with |m| <= 4, so the squared norm is at most 4 * 1/4 = 1.
pub fn sample_ball_vectors(seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| (0..4).map(|_| rational(rng.gen_range(-4..=4), 8)).collect())
        .collect()
}
