//! Feasibility engines for `A x = b, x >= 0` over non-negative instances.
//!
//! Three engines with one report shape:
//!
//! - [`solve_pathwidth_dp`]: the ordering-driven dynamic program. Columns
//!   are consumed in the instance's ordering; the state after `j` columns is
//!   the set of vectors `b'` with `0 <= b' <= b` that are non-negative
//!   integer combinations of the consumed columns and lie in the span of the
//!   remaining columns plus `b`. Filtering against that span caps each stage
//!   at `(d+1)^dim` vectors, where `dim` is the stage's cut dimension.
//! - [`solve_box_dp`]: plain reachability over the box `0..b`, no subspace
//!   filter. Pseudo-polynomial in `(d+1)^m`.
//! - [`solve_bruteforce`]: capped exhaustive enumeration, the ground-truth
//!   oracle for the other two.
//!
//! Every feasible verdict carries a witness that has been re-checked against
//! the instance with exact arithmetic.
//!
//! Membership in `span(prefix) ∩ span(suffix ∪ {b})` is tested against the
//! two halves separately. The suffix half uses precomputed annihilator
//! functionals; the prefix half holds by construction for every candidate
//! (each one is an integer combination of consumed columns), which the
//! reference-oracle tests re-verify instead of paying a per-candidate check.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::echelon::{Annihilator, EchelonBasis};
use crate::linalg::rat;
use crate::matroid::PathOrdering;
use crate::reductions::{IpInstance, IpWitness};

/// Errors raised by the solvers before any search starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// The dynamic programs require non-negative `A` and `b`.
    NegativeEntry { row: usize, col: Option<usize>, value: i64 },
    /// The brute-force search space exceeds its hard cap.
    SearchSpaceTooLarge { cols: usize, cap: u64, limit: u64 },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NegativeEntry { row, col: Some(col), value } => {
                write!(f, "negative matrix entry {value} at row {row}, column {col}")
            }
            SolveError::NegativeEntry { row, col: None, value } => {
                write!(f, "negative target entry {value} at row {row}")
            }
            SolveError::SearchSpaceTooLarge { cols, cap, limit } => {
                write!(f, "(cap+1)^n with cap {cap} over {cols} columns exceeds {limit}")
            }
        }
    }
}

impl core::error::Error for SolveError {}

/// Per-run measurements of a solve.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Size of the partial-solution set after each consumed column.
    pub stage_sizes: Vec<usize>,
    /// Dimension of the prefix/suffix cut subspace at each stage
    /// (pathwidth engine only).
    pub stage_dims: Vec<usize>,
    pub max_set_size: usize,
    /// Filled in by callers with access to a clock; 0 inside this crate.
    pub wall_millis: u64,
}

/// Outcome of a solve: verdict, certificate, and measurements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub feasible: bool,
    pub witness: Option<IpWitness>,
    pub stats: SolveStats,
}

impl SolveReport {
    fn infeasible(stats: SolveStats) -> Self {
        SolveReport { feasible: false, witness: None, stats }
    }

    fn feasible(inst: &IpInstance, x: Vec<u64>, stats: SolveStats) -> Self {
        assert!(inst.is_solution(&x), "witness must satisfy A x = b exactly");
        SolveReport { feasible: true, witness: Some(IpWitness { x }), stats }
    }
}

fn require_nonnegative(inst: &IpInstance) -> Result<(Vec<Vec<u64>>, Vec<u64>), SolveError> {
    for r in 0..inst.rows() {
        for (c, &v) in inst.row(r).iter().enumerate() {
            if v < 0 {
                return Err(SolveError::NegativeEntry { row: r, col: Some(c), value: v });
            }
        }
    }
    for (r, &v) in inst.b().iter().enumerate() {
        if v < 0 {
            return Err(SolveError::NegativeEntry { row: r, col: None, value: v });
        }
    }
    let cols = (0..inst.cols())
        .map(|c| inst.column(c).into_iter().map(|v| v as u64).collect())
        .collect();
    let b = inst.b().iter().map(|&v| v as u64).collect();
    Ok((cols, b))
}

/// Largest `a` such that `base + a * col <= b`, or `None` when unbounded
/// (zero columns admit any multiplier but contribute nothing).
fn max_multiplier(base: &[u64], col: &[u64], b: &[u64]) -> Option<u64> {
    let mut bound: Option<u64> = None;
    for q in 0..col.len() {
        if col[q] > 0 {
            let room = (b[q] - base[q]) / col[q];
            bound = Some(bound.map_or(room, |cur| cur.min(room)));
        }
    }
    bound
}

struct BackRef {
    prev: u32,
    mult: u64,
}

/// Dynamic program over the instance's column ordering (natural order when
/// none is attached). Stage `j` keeps the vectors `0 <= b' <= b` expressible
/// from the first `j` columns that lie in the span of the remaining columns
/// and `b`; the instance is feasible iff `b` survives to the last stage.
pub fn solve_pathwidth_dp(inst: &IpInstance) -> Result<SolveReport, SolveError> {
    let (all_cols, b) = require_nonnegative(inst)?;
    let n = inst.cols();
    let m = inst.rows();
    let natural;
    let ordering = match inst.ordering() {
        Some(ord) => ord,
        None => {
            natural = PathOrdering::natural(n);
            &natural
        }
    };
    let cols: Vec<&Vec<u64>> = ordering.as_slice().iter().map(|&j| &all_cols[j]).collect();
    let d = b.iter().copied().max().unwrap_or(0);

    if n == 0 {
        let stats = SolveStats::default();
        return Ok(if b.iter().all(|&v| v == 0) {
            SolveReport::feasible(inst, Vec::new(), stats)
        } else {
            SolveReport::infeasible(stats)
        });
    }

    // Annihilator snapshots of every suffix: suffix_ann[t] covers columns
    // t.. plus b, so stage t filters against suffix_ann[t + 1].
    let mut suffix_ann: Vec<Annihilator> = alloc::vec![Annihilator::full(0); n + 1];
    let mut ann = Annihilator::full(m);
    ann.add_column(&b);
    suffix_ann[n] = ann.clone();
    for t in (1..n).rev() {
        ann.add_column(cols[t]);
        suffix_ann[t] = ann.clone();
    }

    let r_total = {
        let mut ech = EchelonBasis::new();
        for col in &cols {
            ech.insert(sparse_u64(col));
        }
        ech.insert(sparse_u64(&b));
        ech.rank()
    };

    let mut prefix_ech = EchelonBasis::new();
    let mut stats = SolveStats::default();
    let mut vectors: Vec<Vec<u64>> = alloc::vec![alloc::vec![0u64; m]];
    let mut backrefs: Vec<Vec<BackRef>> = Vec::with_capacity(n);

    for t in 0..n {
        let col = cols[t];
        prefix_ech.insert(sparse_u64(col));
        let ann_t = &suffix_ann[t + 1];
        let dim = prefix_ech.rank() + (m - ann_t.len()) - r_total;

        let mut next: Vec<Vec<u64>> = Vec::new();
        let mut back: Vec<BackRef> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for (pidx, base) in vectors.iter().enumerate() {
            let bound = max_multiplier(base, col, &b).unwrap_or(0);
            let mut cand = base.clone();
            for a in 0..=bound {
                if a > 0 {
                    for (dst, &src) in cand.iter_mut().zip(col.iter()) {
                        *dst += src;
                    }
                }
                // First-found back-reference wins: duplicates of an already
                // seen sum are dropped before any filtering.
                if seen.insert(cand.clone()) && ann_t.in_span(&cand, d) {
                    next.push(cand.clone());
                    back.push(BackRef { prev: pidx as u32, mult: a });
                }
            }
        }

        stats.stage_sizes.push(next.len());
        stats.stage_dims.push(dim);
        stats.max_set_size = stats.max_set_size.max(next.len());
        vectors = next;
        backrefs.push(back);
        if vectors.is_empty() {
            return Ok(SolveReport::infeasible(stats));
        }
    }

    let Some(mut idx) = vectors.iter().position(|v| v == &b) else {
        return Ok(SolveReport::infeasible(stats));
    };
    let mut x = alloc::vec![0u64; n];
    for t in (0..n).rev() {
        let entry = &backrefs[t][idx];
        x[ordering.as_slice()[t]] = entry.mult;
        idx = entry.prev as usize;
    }
    Ok(SolveReport::feasible(inst, x, stats))
}

/// Reachability over the box `0..b`: every non-negative combination of the
/// columns that stays below `b` is kept, with no subspace filter.
pub fn solve_box_dp(inst: &IpInstance) -> Result<SolveReport, SolveError> {
    let (all_cols, b) = require_nonnegative(inst)?;
    let n = inst.cols();
    let m = inst.rows();

    if n == 0 {
        let stats = SolveStats::default();
        return Ok(if b.iter().all(|&v| v == 0) {
            SolveReport::feasible(inst, Vec::new(), stats)
        } else {
            SolveReport::infeasible(stats)
        });
    }

    let mut stats = SolveStats::default();
    let mut vectors: Vec<Vec<u64>> = alloc::vec![alloc::vec![0u64; m]];
    let mut backrefs: Vec<Vec<BackRef>> = Vec::with_capacity(n);

    for col in &all_cols {
        let mut next: Vec<Vec<u64>> = Vec::new();
        let mut back: Vec<BackRef> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for (pidx, base) in vectors.iter().enumerate() {
            let bound = max_multiplier(base, col, &b).unwrap_or(0);
            let mut cand = base.clone();
            for a in 0..=bound {
                if a > 0 {
                    for (dst, &src) in cand.iter_mut().zip(col.iter()) {
                        *dst += src;
                    }
                }
                if seen.insert(cand.clone()) {
                    next.push(cand.clone());
                    back.push(BackRef { prev: pidx as u32, mult: a });
                }
            }
        }
        stats.stage_sizes.push(next.len());
        stats.max_set_size = stats.max_set_size.max(next.len());
        vectors = next;
        backrefs.push(back);
    }

    let Some(mut idx) = vectors.iter().position(|v| v == &b) else {
        return Ok(SolveReport::infeasible(stats));
    };
    let mut x = alloc::vec![0u64; n];
    for t in (0..n).rev() {
        let entry = &backrefs[t][idx];
        x[t] = entry.mult;
        idx = entry.prev as usize;
    }
    Ok(SolveReport::feasible(inst, x, stats))
}

const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// Exhaustive search over `x` in `{0..entry_cap}^n`, refused when
/// `(entry_cap+1)^n` exceeds 10^7. On non-negative instances partial sums
/// are pruned against `b`, which loses no solutions since sums only grow.
pub fn solve_bruteforce(inst: &IpInstance, entry_cap: u64) -> Result<SolveReport, SolveError> {
    check_search_space(inst, entry_cap)?;
    let mut first = None;
    enumerate_inner(inst, entry_cap, &mut |x| {
        first = Some(x.to_vec());
        false
    });
    let stats = SolveStats::default();
    Ok(match first {
        Some(x) => SolveReport::feasible(inst, x, stats),
        None => SolveReport::infeasible(stats),
    })
}

/// All solutions with entries at most `entry_cap`, in lexicographic
/// multiplier order. Unlike [`solve_bruteforce`] there is no global size
/// cap for non-negative instances, where box pruning keeps the walk small.
pub fn enumerate_solutions(inst: &IpInstance, entry_cap: u64) -> Result<Vec<Vec<u64>>, SolveError> {
    if !inst.is_nonnegative() {
        check_search_space(inst, entry_cap)?;
    }
    let mut all = Vec::new();
    enumerate_inner(inst, entry_cap, &mut |x| {
        all.push(x.to_vec());
        true
    });
    Ok(all)
}

fn check_search_space(inst: &IpInstance, entry_cap: u64) -> Result<(), SolveError> {
    let mut acc: u128 = 1;
    for _ in 0..inst.cols() {
        acc = acc.saturating_mul(entry_cap as u128 + 1);
        if acc > BRUTE_FORCE_LIMIT as u128 {
            return Err(SolveError::SearchSpaceTooLarge {
                cols: inst.cols(),
                cap: entry_cap,
                limit: BRUTE_FORCE_LIMIT,
            });
        }
    }
    Ok(())
}

/// Depth-first over multipliers; `emit` returns false to stop the walk.
fn enumerate_inner(inst: &IpInstance, entry_cap: u64, emit: &mut dyn FnMut(&[u64]) -> bool) {
    let prune = inst.is_nonnegative();
    let n = inst.cols();
    let m = inst.rows();
    let mut x = alloc::vec![0u64; n];
    let mut partial = alloc::vec![0i128; m];

    fn go(
        inst: &IpInstance,
        cap: u64,
        prune: bool,
        col: usize,
        x: &mut [u64],
        partial: &mut Vec<i128>,
        emit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        if col == inst.cols() {
            let ok = partial
                .iter()
                .zip(inst.b().iter())
                .all(|(&lhs, &rhs)| lhs == rhs as i128);
            if ok {
                return emit(x);
            }
            return true;
        }
        for a in 0..=cap {
            x[col] = a;
            if a > 0 {
                for (q, acc) in partial.iter_mut().enumerate() {
                    *acc += inst.entry(q, col) as i128;
                }
                if prune
                    && partial
                        .iter()
                        .zip(inst.b().iter())
                        .any(|(&lhs, &rhs)| lhs > rhs as i128)
                {
                    // Sums are monotone on non-negative instances; undo and stop.
                    for (q, acc) in partial.iter_mut().enumerate() {
                        *acc -= a as i128 * inst.entry(q, col) as i128;
                    }
                    x[col] = 0;
                    return true;
                }
            }
            if !go(inst, cap, prune, col + 1, x, partial, emit) {
                return false;
            }
        }
        for (q, acc) in partial.iter_mut().enumerate() {
            *acc -= cap as i128 * inst.entry(q, col) as i128;
        }
        x[col] = 0;
        true
    }

    go(inst, entry_cap, prune, 0, &mut x, &mut partial, emit);
}

/// True iff every recorded stage respected `|B([j])| <= (d+1)^dim`, the
/// partial-solution-set cap implied by the cut dimensions.
pub fn stage_bound_check(report: &SolveReport, inst: &IpInstance) -> bool {
    let d = inst.max_b().max(0) as u64;
    let stats = &report.stats;
    stats.stage_sizes.len() == stats.stage_dims.len()
        && stats
            .stage_sizes
            .iter()
            .zip(stats.stage_dims.iter())
            .all(|(&size, &dim)| cap_holds(size, d, dim))
}

fn cap_holds(size: usize, d: u64, dim: usize) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..dim {
        acc = acc.saturating_mul(d as u128 + 1);
        if acc >= size as u128 {
            return true;
        }
    }
    size as u128 <= acc
}

fn sparse_u64(col: &[u64]) -> crate::echelon::SparseVec {
    col.iter()
        .enumerate()
        .filter(|&(_, &v)| v != 0)
        .map(|(i, &v)| (i as u32, rat(v as i64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: &[Vec<i64>], b: Vec<i64>) -> IpInstance {
        IpInstance::from_rows(rows, b).unwrap()
    }

    #[test]
    fn identity_is_immediate() {
        let i3 = inst(
            &[alloc::vec![1, 0, 0], alloc::vec![0, 1, 0], alloc::vec![0, 0, 1]],
            alloc::vec![2, 0, 5],
        );
        let report = solve_pathwidth_dp(&i3).unwrap();
        assert!(report.feasible);
        assert!(stage_bound_check(&report, &i3));
        assert_eq!(report.witness.unwrap().x, alloc::vec![2, 0, 5]);

        let report = solve_box_dp(&i3).unwrap();
        assert_eq!(report.witness.unwrap().x, alloc::vec![2, 0, 5]);
    }

    #[test]
    fn parity_infeasibility() {
        let odd = inst(&[alloc::vec![2]], alloc::vec![3]);
        assert!(!solve_pathwidth_dp(&odd).unwrap().feasible);
        assert!(!solve_box_dp(&odd).unwrap().feasible);
        assert!(!solve_bruteforce(&odd, 3).unwrap().feasible);
    }

    #[test]
    fn box_dp_example() {
        let m = inst(&[alloc::vec![1, 1], alloc::vec![0, 1]], alloc::vec![2, 1]);
        let report = solve_box_dp(&m).unwrap();
        assert!(report.feasible);
        assert_eq!(report.witness.unwrap().x, alloc::vec![1, 1]);
    }

    #[test]
    fn zero_target_is_always_feasible() {
        let m = inst(&[alloc::vec![3, 1], alloc::vec![7, 0]], alloc::vec![0, 0]);
        for report in [solve_pathwidth_dp(&m).unwrap(), solve_box_dp(&m).unwrap()] {
            assert!(report.feasible);
            assert_eq!(report.witness.unwrap().x, alloc::vec![0, 0]);
        }
    }

    #[test]
    fn zero_columns_take_multiplier_zero() {
        let m = inst(&[alloc::vec![0, 1]], alloc::vec![1]);
        let report = solve_pathwidth_dp(&m).unwrap();
        assert!(report.feasible);
        assert_eq!(report.witness.unwrap().x, alloc::vec![0, 1]);
    }

    #[test]
    fn negative_entries_are_rejected() {
        let m = inst(&[alloc::vec![1, -1]], alloc::vec![1]);
        assert!(matches!(
            solve_pathwidth_dp(&m),
            Err(SolveError::NegativeEntry { row: 0, col: Some(1), value: -1 })
        ));
        assert!(matches!(solve_box_dp(&m), Err(SolveError::NegativeEntry { .. })));

        let neg_b = inst(&[alloc::vec![1]], alloc::vec![-2]);
        assert!(matches!(
            solve_pathwidth_dp(&neg_b),
            Err(SolveError::NegativeEntry { row: 0, col: None, value: -2 })
        ));
    }

    #[test]
    fn bruteforce_examples() {
        let m = inst(&[alloc::vec![1]], alloc::vec![1]);
        let report = solve_bruteforce(&m, 2).unwrap();
        assert!(report.feasible);
        assert_eq!(report.witness.unwrap().x, alloc::vec![1]);

        let wide = inst(&[alloc::vec![1; 30]], alloc::vec![1]);
        assert!(matches!(
            solve_bruteforce(&wide, 9),
            Err(SolveError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn bruteforce_handles_negative_entries() {
        // A column with a negative entry disables pruning but not search.
        let m = inst(&[alloc::vec![1, -1]], alloc::vec![0]);
        let report = solve_bruteforce(&m, 2).unwrap();
        assert!(report.feasible);
    }

    #[test]
    fn enumerate_lists_all_solutions() {
        let m = inst(&[alloc::vec![1, 1]], alloc::vec![2]);
        let all = enumerate_solutions(&m, 2).unwrap();
        assert_eq!(all, alloc::vec![alloc::vec![0, 2], alloc::vec![1, 1], alloc::vec![2, 0]]);
    }

    #[test]
    fn empty_instance_feasibility_is_zero_check() {
        let empty = IpInstance::new(2, 0, alloc::vec![], alloc::vec![0, 0]).unwrap();
        assert!(solve_pathwidth_dp(&empty).unwrap().feasible);
        let empty_bad = IpInstance::new(2, 0, alloc::vec![], alloc::vec![1, 0]).unwrap();
        assert!(!solve_pathwidth_dp(&empty_bad).unwrap().feasible);
    }

    #[test]
    fn verdict_invariant_under_column_permutation() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=5);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..=3)).collect())
                .collect();
            let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..=5)).collect();
            let m = inst(&data, b.clone());
            let verdict = solve_pathwidth_dp(&m).unwrap().feasible;

            let mut perm: Vec<usize> = (0..cols).collect();
            perm.shuffle(&mut rng);
            let pdata: Vec<Vec<i64>> = data
                .iter()
                .map(|row| perm.iter().map(|&c| row[c]).collect())
                .collect();
            let pm = inst(&pdata, b);
            assert_eq!(verdict, solve_pathwidth_dp(&pm).unwrap().feasible);
        }
    }

    #[test]
    fn stage_cap_holds_on_identity() {
        let i2 = inst(&[alloc::vec![1, 0], alloc::vec![0, 1]], alloc::vec![2, 2]);
        let report = solve_pathwidth_dp(&i2).unwrap();
        assert!(stage_bound_check(&report, &i2));
        // With b = (2,2) appended, both cuts of A' = [e1, e2, b] have
        // dimension 1, capping each stage at d + 1 = 3 vectors.
        assert_eq!(report.stats.stage_dims, alloc::vec![1, 1]);
        assert_eq!(report.stats.stage_sizes, alloc::vec![3, 3]);
    }

    #[test]
    fn cap_holds_edge_cases() {
        assert!(cap_holds(1, 0, 0));
        assert!(!cap_holds(2, 0, 0));
        assert!(cap_holds(4, 3, 1));
        assert!(!cap_holds(5, 3, 1));
        assert!(cap_holds(usize::MAX, 1, 200));
    }
}
