//! Connectivity of column matroids and widths of column orderings.
//!
//! For a matrix `A` the elements of the matroid are the columns, and a path
//! decomposition specialises to an ordering of them. The width of an
//! ordering is one more than the largest dimension of `span(prefix) ∩
//! span(suffix)` over its proper prefix cuts; leaf cuts of single elements
//! never exceed that value (λ of a singleton is at most 2, and any ordering
//! with a positive prefix-cut dimension already reaches width 2), so the
//! prefix sweep is the whole computation.

use alloc::vec::Vec;
use core::fmt;

use crate::echelon::{sparse_from_dense, EchelonBasis};
use crate::linalg::{LinalgError, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidError {
    /// The given sequence is not a permutation of `0..n`.
    NotAPermutation { len: usize, cols: usize },
    /// `cut_dimension` needs a cut with columns on both sides.
    DegenerateCut,
    /// A column index outside `0..cols`.
    ColumnOutOfRange { index: usize, cols: usize },
    /// The exhaustive ordering search is restricted to small instances.
    TooManyColumns { cols: usize, limit: usize },
}

impl fmt::Display for MatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidError::NotAPermutation { len, cols } => {
                write!(f, "ordering of length {len} is not a permutation of {cols} columns")
            }
            MatroidError::DegenerateCut => write!(f, "cut must leave columns on both sides"),
            MatroidError::ColumnOutOfRange { index, cols } => {
                write!(f, "column index {index} out of range for {cols} columns")
            }
            MatroidError::TooManyColumns { cols, limit } => {
                write!(f, "exhaustive ordering search limited to {limit} columns, got {cols}")
            }
        }
    }
}

impl core::error::Error for MatroidError {}

impl From<LinalgError> for MatroidError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::ColumnOutOfRange { index, cols } => {
                MatroidError::ColumnOutOfRange { index, cols }
            }
            // Shape errors cannot arise from the calls made here.
            LinalgError::ShapeMismatch { .. } | LinalgError::AmbientMismatch { .. } => {
                MatroidError::DegenerateCut
            }
        }
    }
}

/// A permutation of the column indices `0..n`, read as a caterpillar path
/// decomposition: element `perm[t]` sits at the `t`-th leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathOrdering {
    perm: Vec<usize>,
}

impl PathOrdering {
    /// The identity ordering on `n` columns.
    pub fn natural(n: usize) -> Self {
        PathOrdering { perm: (0..n).collect() }
    }

    /// Validates that `perm` visits each of `0..perm.len()` exactly once.
    pub fn new(perm: Vec<usize>) -> Result<Self, MatroidError> {
        let n = perm.len();
        let mut seen = alloc::vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(MatroidError::NotAPermutation { len: n, cols: n });
            }
            seen[p] = true;
        }
        Ok(PathOrdering { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn reversed(&self) -> Self {
        let mut perm = self.perm.clone();
        perm.reverse();
        PathOrdering { perm }
    }
}

/// The connectivity function `λ(X) = r(X) + r(E∖X) - r(E) + 1`.
pub fn lambda(m: &RationalMatrix, x: &[usize]) -> Result<usize, MatroidError> {
    let (inside, outside) = split_columns(m, x)?;
    let rx = m.span_of_columns(&inside)?.dim();
    let rc = m.span_of_columns(&outside)?.dim();
    Ok(rx + rc + 1 - m.rank())
}

/// Dimension of `span(A|X) ∩ span(A|E∖X)`, which equals `λ(X) - 1`.
///
/// Computed through an explicit subspace intersection; `ordering_width`
/// takes the rank-formula route instead, and the two are cross-checked in
/// tests.
pub fn cut_dimension(m: &RationalMatrix, x: &[usize]) -> Result<usize, MatroidError> {
    let (inside, outside) = split_columns(m, x)?;
    if inside.is_empty() || outside.is_empty() {
        return Err(MatroidError::DegenerateCut);
    }
    let u = m.span_of_columns(&inside)?;
    let w = m.span_of_columns(&outside)?;
    Ok(u.intersect(&w).map_err(MatroidError::from)?.dim())
}

/// Width of the ordering: `1 +` the maximum prefix-cut dimension.
pub fn ordering_width(m: &RationalMatrix, ord: &PathOrdering) -> Result<usize, MatroidError> {
    Ok(1 + cut_profile(m, ord)?.into_iter().max().unwrap_or(0))
}

/// Per-cut dimension profile of an ordering: entry `j` is the dimension of
/// the cut between the first `j + 1` columns and the rest.
pub fn cut_profile(m: &RationalMatrix, ord: &PathOrdering) -> Result<Vec<usize>, MatroidError> {
    let n = m.cols();
    if ord.len() != n {
        return Err(MatroidError::NotAPermutation { len: ord.len(), cols: n });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let column = |j: usize| sparse_from_dense(&m.column(j));

    let mut prefix_ranks = Vec::with_capacity(n);
    let mut ech = EchelonBasis::new();
    for &j in ord.as_slice() {
        ech.insert(column(j));
        prefix_ranks.push(ech.rank());
    }
    let total = prefix_ranks[n - 1];

    // suffix_ranks[t] = rank of columns ord[t..].
    let mut suffix_ranks = alloc::vec![0usize; n];
    let mut ech = EchelonBasis::new();
    for t in (0..n).rev() {
        ech.insert(column(ord.as_slice()[t]));
        suffix_ranks[t] = ech.rank();
    }

    Ok((1..n)
        .map(|j| prefix_ranks[j - 1] + suffix_ranks[j] - total)
        .collect())
}

/// Exhaustive minimum-width ordering by dynamic programming over column
/// subsets; the cut dimension of a prefix depends only on the set, so the
/// search space is `2^n` rather than `n!`.
pub fn optimal_ordering_bruteforce(
    m: &RationalMatrix,
) -> Result<(PathOrdering, usize), MatroidError> {
    const LIMIT: usize = 9;
    let n = m.cols();
    if n > LIMIT {
        return Err(MatroidError::TooManyColumns { cols: n, limit: LIMIT });
    }
    if n < 2 {
        return Ok((PathOrdering::natural(n), 1));
    }
    let full = (1usize << n) - 1;

    let mut rank_of = alloc::vec![0usize; full + 1];
    for set in 1..=full {
        let mut ech = EchelonBasis::new();
        for j in 0..n {
            if set & (1 << j) != 0 {
                ech.insert(sparse_from_dense(&m.column(j)));
            }
        }
        rank_of[set] = ech.rank();
    }
    let dim_of = |set: usize| rank_of[set] + rank_of[full ^ set] - rank_of[full];

    // best[set] = minimum over orderings of `set` of the largest cut
    // dimension among its nonempty prefixes (the cut at `full` is skipped).
    let mut best = alloc::vec![usize::MAX; full + 1];
    best[0] = 0;
    for set in 1..=full {
        let inner = (0..n)
            .filter(|&c| set & (1 << c) != 0)
            .map(|c| best[set & !(1 << c)])
            .min()
            .unwrap();
        best[set] = if set == full { inner } else { inner.max(dim_of(set)) };
    }

    let mut perm = alloc::vec![0usize; n];
    let mut set = full;
    for t in (0..n).rev() {
        let c = (0..n)
            .filter(|&c| set & (1 << c) != 0)
            .min_by_key(|&c| (best[set & !(1 << c)], c))
            .unwrap();
        perm[t] = c;
        set &= !(1 << c);
    }
    let ordering = PathOrdering { perm };
    let width = 1 + best[full];
    debug_assert_eq!(ordering_width(m, &ordering)?, width);
    Ok((ordering, width))
}

/// Splits `0..cols` into the deduplicated selection and its complement.
fn split_columns(
    m: &RationalMatrix,
    x: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), MatroidError> {
    let n = m.cols();
    let mut member = alloc::vec![false; n];
    for &j in x {
        if j >= n {
            return Err(MatroidError::ColumnOutOfRange { index: j, cols: n });
        }
        member[j] = true;
    }
    let inside: Vec<usize> = (0..n).filter(|&j| member[j]).collect();
    let outside: Vec<usize> = (0..n).filter(|&j| !member[j]).collect();
    Ok((inside, outside))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tests::bidiagonal_ones;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn random_matrix(rng: &mut impl Rng, max_dim: usize) -> RationalMatrix {
        let rows = rng.gen_range(1..=max_dim);
        let cols = rng.gen_range(2..=max_dim);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        RationalMatrix::from_int_rows(&data).unwrap()
    }

    #[test]
    fn lambda_degenerate_sets_are_one() {
        let m = bidiagonal_ones();
        assert_eq!(lambda(&m, &[]).unwrap(), 1);
        let all: Vec<usize> = (0..m.cols()).collect();
        assert_eq!(lambda(&m, &all).unwrap(), 1);
    }

    #[test]
    fn lambda_bidiagonal_prefix_two() {
        // r({1,2}) = 2, r({3,4,5}) = 3, r = 4: 2 + 3 - 4 + 1 = 2.
        assert_eq!(lambda(&bidiagonal_ones(), &[0, 1]).unwrap(), 2);
    }

    #[test]
    fn cut_dimension_examples() {
        assert_eq!(cut_dimension(&RationalMatrix::identity(3), &[0]).unwrap(), 0);
        assert_eq!(cut_dimension(&bidiagonal_ones(), &[0, 1]).unwrap(), 1);
        // Two identical columns split across the cut share a direction.
        let dup = RationalMatrix::from_int_rows(&[alloc::vec![1, 1], alloc::vec![2, 2]]).unwrap();
        assert!(cut_dimension(&dup, &[0]).unwrap() >= 1);
        assert_eq!(cut_dimension(&dup, &[]), Err(MatroidError::DegenerateCut));
        assert_eq!(cut_dimension(&dup, &[0, 1]), Err(MatroidError::DegenerateCut));
    }

    #[test]
    fn ordering_width_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(ordering_width(&id, &PathOrdering::natural(3)).unwrap(), 1);
        let m = bidiagonal_ones();
        assert_eq!(ordering_width(&m, &PathOrdering::natural(5)).unwrap(), 2);
        assert_eq!(cut_profile(&m, &PathOrdering::natural(5)).unwrap(), alloc::vec![1, 1, 1, 1]);
    }

    #[test]
    fn width_of_single_column_is_one() {
        let m = RationalMatrix::from_int_rows(&[alloc::vec![3], alloc::vec![1]]).unwrap();
        assert_eq!(ordering_width(&m, &PathOrdering::natural(1)).unwrap(), 1);
    }

    #[test]
    fn optimal_ordering_examples() {
        let (_, w) = optimal_ordering_bruteforce(&RationalMatrix::identity(3)).unwrap();
        assert_eq!(w, 1);

        let dup = RationalMatrix::from_int_rows(&[alloc::vec![1, 1]]).unwrap();
        let (_, w) = optimal_ordering_bruteforce(&dup).unwrap();
        assert_eq!(w, 2);

        // Exhaustive over all 5! orderings of the 4x5 instance.
        let (ord, w) = optimal_ordering_bruteforce(&bidiagonal_ones()).unwrap();
        assert_eq!(w, 2);
        assert_eq!(ordering_width(&bidiagonal_ones(), &ord).unwrap(), 2);
    }

    #[test]
    fn optimal_ordering_size_limit() {
        let m = RationalMatrix::zero(1, 10);
        assert!(matches!(
            optimal_ordering_bruteforce(&m),
            Err(MatroidError::TooManyColumns { .. })
        ));
    }

    #[test]
    fn lambda_is_symmetric() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 6);
            let x: Vec<usize> = (0..m.cols()).filter(|_| rng.gen_bool(0.5)).collect();
            let comp: Vec<usize> = (0..m.cols()).filter(|j| !x.contains(j)).collect();
            assert_eq!(lambda(&m, &x).unwrap(), lambda(&m, &comp).unwrap());
        }
    }

    #[test]
    fn cut_dimension_is_lambda_minus_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 6);
            let x: Vec<usize> = (0..m.cols()).filter(|_| rng.gen_bool(0.5)).collect();
            if x.is_empty() || x.len() == m.cols() {
                continue;
            }
            assert_eq!(cut_dimension(&m, &x).unwrap(), lambda(&m, &x).unwrap() - 1);
        }
    }

    #[test]
    fn width_invariant_under_reversal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for _ in 0..30 {
            let m = random_matrix(&mut rng, 6);
            let mut perm: Vec<usize> = (0..m.cols()).collect();
            perm.shuffle(&mut rng);
            let ord = PathOrdering::new(perm).unwrap();
            assert_eq!(
                ordering_width(&m, &ord).unwrap(),
                ordering_width(&m, &ord.reversed()).unwrap()
            );
        }
    }

    #[test]
    fn optimal_never_beaten_by_random_orderings() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 5);
            let (_, best) = optimal_ordering_bruteforce(&m).unwrap();
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..m.cols()).collect();
                perm.shuffle(&mut rng);
                let ord = PathOrdering::new(perm).unwrap();
                assert!(best <= ordering_width(&m, &ord).unwrap());
            }
        }
    }

    #[test]
    fn subset_dp_matches_factorial_enumeration() {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return alloc::vec![Vec::new()];
            }
            let mut out = Vec::new();
            for mut tail in permutations(n - 1) {
                for pos in 0..=tail.len() {
                    tail.insert(pos, n - 1);
                    out.push(tail.clone());
                    tail.remove(pos);
                }
            }
            out
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 5);
            let naive = permutations(m.cols())
                .into_iter()
                .map(|perm| ordering_width(&m, &PathOrdering::new(perm).unwrap()).unwrap())
                .min()
                .unwrap();
            let (ord, width) = optimal_ordering_bruteforce(&m).unwrap();
            assert_eq!(width, naive);
            assert_eq!(ordering_width(&m, &ord).unwrap(), width);
        }
    }

    #[test]
    fn singleton_leaf_cuts_never_raise_the_width() {
        // Width is defined as the max over prefix cuts and singleton leaf
        // cuts; this checks the prefix sweep alone already attains it.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 6);
            let n = m.cols();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let ord = PathOrdering::new(perm).unwrap();
            let width = ordering_width(&m, &ord).unwrap();
            let leaf_max = (0..n).map(|i| lambda(&m, &[i]).unwrap()).max().unwrap();
            assert_eq!(width, width.max(leaf_max));
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PathOrdering::new(alloc::vec![0, 0, 1]).is_err());
        assert!(PathOrdering::new(alloc::vec![0, 2]).is_err());
        assert!(PathOrdering::new(alloc::vec![1, 0, 2]).is_ok());
    }
}
