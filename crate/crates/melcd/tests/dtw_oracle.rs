//! DTW verified against exhaustive path enumeration.
//!
//! The oracle enumerates every monotone path with steps (1,0), (0,1), (1,1)
//! and sums precomputed local costs left to right, exactly as the scorer
//! does, so optimal costs compare exactly on random inputs.

use melcd::cepstra::CepstraMatrix;
use melcd::dtw::dtw;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn local_cost(a: &CepstraMatrix<f64>, b: &CepstraMatrix<f64>, i: usize, j: usize) -> f64 {
    a.row(i)
        .iter()
        .zip(b.row(j))
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Minimum total cost over all monotone paths from (0,0) to (ta-1, tb-1),
/// by plain recursion over path extensions. No memoization.
fn brute_force_min_cost(a: &CepstraMatrix<f64>, b: &CepstraMatrix<f64>) -> f64 {
    let (ta, tb) = (a.frames(), b.frames());
    let mut costs = vec![vec![0.0f64; tb]; ta];
    for (i, row) in costs.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = local_cost(a, b, i, j);
        }
    }
    fn go(costs: &[Vec<f64>], i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + costs[i][j];
        if i + 1 == costs.len() && j + 1 == costs[0].len() {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i + 1 < costs.len() && j + 1 < costs[0].len() {
            go(costs, i + 1, j + 1, acc, best);
        }
        if i + 1 < costs.len() {
            go(costs, i + 1, j, acc, best);
        }
        if j + 1 < costs[0].len() {
            go(costs, i, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    go(&costs, 0, 0, 0.0, &mut best);
    best
}

fn path_cost(a: &CepstraMatrix<f64>, b: &CepstraMatrix<f64>, path: &[(usize, usize)]) -> f64 {
    let mut acc = 0.0;
    for &(i, j) in path {
        acc += local_cost(a, b, i, j);
    }
    acc
}

fn random_matrix(rng: &mut StdRng, frames: usize, dims: usize) -> CepstraMatrix<f64> {
    let rows: Vec<Vec<f64>> = (0..frames)
        .map(|_| (0..dims).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    CepstraMatrix::from_rows(rows, 25.0, 10.0).unwrap()
}

#[test]
fn dtw_matches_brute_force_on_200_random_trials() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let ta = rng.gen_range(1..=8);
        let tb = rng.gen_range(1..=8);
        let dims = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, ta, dims);
        let b = random_matrix(&mut rng, tb, dims);
        let expected = brute_force_min_cost(&a, &b);
        let path = dtw(&a, &b).unwrap();
        let got = path_cost(&a, &b, path.pairs());
        assert_eq!(got, expected, "trial {trial}: {ta}x{tb}, dims {dims}");
    }
}

#[test]
fn dtw_fixed_6x8_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(42);
    let a = random_matrix(&mut rng, 6, 3);
    let b = random_matrix(&mut rng, 8, 3);
    let expected = brute_force_min_cost(&a, &b);
    let path = dtw(&a, &b).unwrap();
    assert_eq!(path_cost(&a, &b, path.pairs()), expected);
}

#[test]
fn identical_matrices_align_on_the_diagonal() {
    let mut rng = StdRng::seed_from_u64(7);
    let a = random_matrix(&mut rng, 5, 4);
    let path = dtw(&a, &a).unwrap();
    let expected: Vec<(usize, usize)> = (0..5).map(|i| (i, i)).collect();
    assert_eq!(path.pairs(), expected.as_slice());
    assert_eq!(path_cost(&a, &a, path.pairs()), 0.0);
}

#[test]
fn single_frame_against_many_visits_all() {
    let mut rng = StdRng::seed_from_u64(9);
    let a = random_matrix(&mut rng, 1, 3);
    let b = random_matrix(&mut rng, 6, 3);
    let path = dtw(&a, &b).unwrap();
    let expected: Vec<(usize, usize)> = (0..6).map(|j| (0, j)).collect();
    assert_eq!(path.pairs(), expected.as_slice());
}

#[test]
fn dimension_mismatch_is_an_error() {
    let mut rng = StdRng::seed_from_u64(1);
    let a = random_matrix(&mut rng, 3, 3);
    let b = random_matrix(&mut rng, 3, 4);
    assert!(dtw(&a, &b).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dtw_paths_are_valid(
        rows_a in proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, 3), 1..10),
        rows_b in proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, 3), 1..10),
    ) {
        let a = CepstraMatrix::from_rows(rows_a, 25.0, 10.0).unwrap();
        let b = CepstraMatrix::from_rows(rows_b, 25.0, 10.0).unwrap();
        let path = dtw(&a, &b).unwrap();
        let pairs = path.pairs();
        prop_assert_eq!(pairs.first().copied(), Some((0usize, 0usize)));
        prop_assert_eq!(pairs.last().copied(), Some((a.frames() - 1, b.frames() - 1)));
        for w in pairs.windows(2) {
            let (di, dj) = (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64);
            prop_assert!(
                matches!((di, dj), (1, 0) | (0, 1) | (1, 1)),
                "invalid step {:?} -> {:?}", w[0], w[1]
            );
        }
    }
}
