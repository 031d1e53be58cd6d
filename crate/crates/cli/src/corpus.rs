//! Seeded corpus generation: random formulas, random programs, and the
//! fixed corpora used by the acceptance checks. All randomness flows from a
//! caller-supplied seed through ChaCha, so identical invocations produce
//! identical corpora byte for byte.

use ipwidth_core::cnf::CnfFormula;
use ipwidth_core::reductions::IpInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random CNF with clause sizes `1..=max_size` over distinct variables.
pub fn random_cnf(rng: &mut ChaCha8Rng, n: usize, m: usize, max_size: usize) -> CnfFormula {
    assert!(n >= 1);
    let clauses: Vec<Vec<i32>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            random_clause(rng, n, size)
        })
        .collect();
    CnfFormula::new(n, clauses).expect("generated clauses are valid")
}

/// Random CNF with exactly three distinct variables per clause.
pub fn random_three_cnf(rng: &mut ChaCha8Rng, n: usize, m: usize) -> CnfFormula {
    assert!(n >= 3);
    let clauses: Vec<Vec<i32>> = (0..m).map(|_| random_clause(rng, n, 3)).collect();
    CnfFormula::new(n, clauses).expect("generated clauses are valid")
}

fn random_clause(rng: &mut ChaCha8Rng, n: usize, size: usize) -> Vec<i32> {
    let mut vars: Vec<i32> = (1..=n as i32).collect();
    for k in 0..size {
        let pick = rng.gen_range(k..vars.len());
        vars.swap(k, pick);
    }
    vars[..size]
        .iter()
        .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
        .collect()
}

/// Random non-negative program with entries in `0..=max_entry` and target
/// entries in `0..=max_target`.
pub fn random_ip(
    rng: &mut ChaCha8Rng,
    max_rows: usize,
    max_cols: usize,
    max_entry: i64,
    max_target: i64,
) -> IpInstance {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..=max_entry)).collect())
        .collect();
    let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..=max_target)).collect();
    IpInstance::from_rows(&data, b).expect("generated dimensions are consistent")
}

/// Hand-picked edge formulas, all with at least two clauses so that every
/// construction accepts them.
pub fn handcrafted_formulas() -> Vec<CnfFormula> {
    let cases: Vec<(usize, Vec<Vec<i32>>)> = vec![
        // Forced unique assignment through unit clauses.
        (3, vec![vec![1], vec![-2], vec![3]]),
        // Plain contradiction.
        (1, vec![vec![1], vec![-1]]),
        // Contradiction hidden behind a chain.
        (3, vec![vec![1], vec![-1, 2], vec![-2, 3], vec![-3]]),
        // Duplicate clauses.
        (2, vec![vec![1, 2], vec![1, 2]]),
        // Duplicate literal inside a clause.
        (2, vec![vec![1, 1], vec![2, -1]]),
        // Tautological clause plus a unit.
        (2, vec![vec![1, -1], vec![2]]),
        // All four sign patterns on two variables: unsatisfiable.
        (2, vec![vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2]]),
        // Same but one clause missing: satisfiable.
        (2, vec![vec![1, 2], vec![1, -2], vec![-1, 2]]),
        // Single variable, repeated demands.
        (1, vec![vec![1], vec![1], vec![1]]),
        // Implication cycle.
        (4, vec![vec![-1, 2], vec![-2, 3], vec![-3, 4], vec![-4, 1]]),
        // Cycle broken by a forced false.
        (4, vec![vec![-1, 2], vec![-2, 3], vec![-3, 4], vec![-4, 1], vec![-1]]),
        // Variables untouched by any clause (padding-heavy blocks).
        (7, vec![vec![1], vec![7]]),
        // Exactly divisible block sizes.
        (6, vec![vec![1, 4], vec![2, 5], vec![3, 6]]),
        // Sizes that leave the last block mostly padding for c = 3.
        (7, vec![vec![-7, 1], vec![6, 7]]),
        // All negative literals.
        (4, vec![vec![-1, -2], vec![-3, -4], vec![-1, -4]]),
        // Wide clauses of the maximum allowed size 3.
        (5, vec![vec![1, 2, 3], vec![-1, -2, -3], vec![3, 4, 5], vec![-3, -4, -5]]),
        // Pigeonhole-style: two pigeons, one hole.
        (2, vec![vec![1], vec![2], vec![-1, -2]]),
        // Formula whose only model is all-true.
        (3, vec![vec![1], vec![2], vec![3], vec![1, 2, 3]]),
        // Formula whose only model is all-false.
        (3, vec![vec![-1], vec![-2], vec![-3]]),
        // Two independent components.
        (6, vec![vec![1, 2], vec![-1, -2], vec![5, 6], vec![-5, -6]]),
        // Maximum corpus size: ten variables, fifteen clauses.
        (
            10,
            vec![
                vec![1, -2, 3],
                vec![-1, 4],
                vec![5],
                vec![-5, 6, -7],
                vec![7, 8],
                vec![-8, 9, 10],
                vec![-10, 1],
                vec![2, -3],
                vec![-4, -6],
                vec![9],
                vec![-9, 5, 2],
                vec![10, -1, 6],
                vec![3, 7],
                vec![-2, -7, 8],
                vec![4, 1, -5],
            ],
        ),
        // Unsatisfiable at full width.
        (
            10,
            vec![
                vec![10],
                vec![-10, 9],
                vec![-9, 8],
                vec![-8, 7],
                vec![-7, 6],
                vec![-6, 5],
                vec![-5, 4],
                vec![-4, 3],
                vec![-3, 2],
                vec![-2, 1],
                vec![-1, -10],
            ],
        ),
    ];
    cases
        .into_iter()
        .map(|(n, clauses)| CnfFormula::new(n, clauses).expect("handcrafted formulas are valid"))
        .collect()
}

/// The seeded random corpus behind the reduction acceptance checks: at
/// least 200 formulas covering every variable count up to 10 and clause
/// counts up to 15, weighted so that the whole corpus solves within the
/// stated time budget on one core.
pub fn acceptance_cnf_corpus(seed: u64) -> Vec<CnfFormula> {
    let mut rng = rng_from_seed(seed);
    let mut corpus = Vec::new();
    let counts: &[(usize, usize)] = &[
        (1, 24),
        (2, 26),
        (3, 26),
        (4, 26),
        (5, 26),
        (6, 26),
        (7, 20),
        (8, 14),
        (9, 8),
        (10, 8),
    ];
    for &(n, how_many) in counts {
        for _ in 0..how_many {
            let m = rng.gen_range(2..=15);
            corpus.push(random_cnf(&mut rng, n, m, 3));
        }
    }
    corpus
}
