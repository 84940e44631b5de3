mod common;

use std::collections::BTreeSet;

use common::*;
use ideal_points::{
    degeneration_matrix, equations_at_infinity_in_chart, quotient_by_weight_action, solve_at_infinity, IntMatrix,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn det_matches_cofactor_expansion() {
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..300 {
        let n = 1 + trial % 5;
        let m = random_matrix(&mut rng, n, n, 9);
        let got = IntMatrix::from_rows(&m, n).unwrap().det().unwrap();
        assert_eq!(got, cofactor_det(&m), "{m:?}");
    }
}

#[test]
fn det_of_singular_matrices() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let mut m = random_matrix(&mut rng, n, n, 5);
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let k = rng.gen_range(-3..=3);
        if a != b {
            m[a] = m[b].iter().map(|x| k * x).collect();
        } else {
            m[a] = vec![0; n];
        }
        assert!(IntMatrix::from_rows(&m, n).unwrap().det().unwrap().is_zero());
    }
}

#[test]
fn minor_vector_matches_cofactor_expansion() {
    let mut rng = StdRng::seed_from_u64(13);
    for trial in 0..200 {
        let k = trial % 5;
        let m = random_matrix(&mut rng, k, k + 1, 7);
        let got = IntMatrix::from_rows(&m, k + 1).unwrap().maximal_minor_vector().unwrap();
        assert_eq!(got, minor_vector_oracle(&m), "{m:?}");
    }
}

#[test]
fn rank_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(17);
    for trial in 0..150 {
        let rows = 1 + trial % 4;
        let cols = 1 + (trial / 4) % 5;
        // small entries make rank deficiency common
        let m = random_matrix(&mut rng, rows, cols, 1);
        assert_eq!(IntMatrix::from_rows(&m, cols).unwrap().rank(), brute_force_rank(&m), "{m:?}");
    }
}

#[test]
fn fixture_ranks_match_brute_force() {
    for name in ["m006", "m009"] {
        let sys = reduced(name);
        for index in all_indices(3) {
            let r = degeneration_matrix(&sys, &index).unwrap();
            let rows = to_i64_rows(&r.to_rows());
            assert_eq!(r.rank(), brute_force_rank(&rows), "{name} {index}");
            let d = r.maximal_minor_vector().unwrap();
            assert_eq!(d, minor_vector_oracle(&rows));
        }
    }
}

#[test]
fn solutions_match_brute_force_in_every_chart() {
    for name in ["m006", "m009"] {
        let sys = reduced(name);
        for (index, vector) in certified(name) {
            for chart in 0..3 {
                if vector.d[chart].is_zero() {
                    continue;
                }
                let msys = equations_at_infinity_in_chart(&sys, &index, &vector, chart).unwrap();
                let solved: BTreeSet<_> = solve_at_infinity(&msys)
                    .unwrap()
                    .into_iter()
                    .map(|s| s.angles.iter().map(|a| a.value().clone()).collect::<Vec<_>>())
                    .collect();
                let oracle = brute_force_solutions(&msys);
                assert_eq!(solved, oracle, "{name} {index} chart {}", chart + 1);
                assert_eq!(BigInt::from(solved.len()), vector.d[chart].abs());
            }
        }
    }
}

#[test]
fn orbit_counts_agree_across_charts() {
    for name in ["m006", "m009"] {
        let sys = reduced(name);
        for (index, vector) in certified(name) {
            for chart in 0..3 {
                let msys = equations_at_infinity_in_chart(&sys, &index, &vector, chart).unwrap();
                let reps = quotient_by_weight_action(&solve_at_infinity(&msys).unwrap(), &msys).unwrap();
                assert_eq!(BigInt::from(reps.len()), vector.gcd_value, "{name} {index} chart {}", chart + 1);
            }
        }
    }
}

#[test]
fn kernel_dimension_of_fixture_matrices() {
    // dim ker R(I) = n - rank; for a nonzero d the kernel is the line through d
    for name in ["m006", "m009"] {
        let sys = reduced(name);
        for index in all_indices(3) {
            let r = degeneration_matrix(&sys, &index).unwrap();
            let d = r.maximal_minor_vector().unwrap();
            let rank = brute_force_rank(&to_i64_rows(&r.to_rows()));
            assert_eq!(d.iter().all(Zero::is_zero), rank < 2, "{name} {index}");
        }
    }
}
