//! CNF-to-IP instance compilers and their satisfying-assignment witnesses.
//!
//! Three families are produced, all with non-negative constraint matrices
//! and all equivalent to satisfiability of the source formula:
//!
//! - [`reduce_pathwidth`]: one column block per (clause, variable-block,
//!   assignment) triple, chained through predecessor/successor matching rows
//!   so that the column matroid of the output has a natural ordering of
//!   width at most `c + 4`.
//! - [`reduce_binary`]: the same instance with every row holding an entry
//!   larger than one replaced by its bitwise expansion, bringing all matrix
//!   and target entries down to `{0, 1}`.
//! - [`reduce_eth`]: the compact 3-CNF family with two columns per variable
//!   and per clause, whose feasible solutions never exceed entry value 2.
//!
//! The witness builders recover an explicit solution vector from a
//! satisfying assignment and re-verify `A x = b` exactly before returning.

use alloc::vec::Vec;
use core::fmt;

use crate::cnf::{block_satisfies, BlockScheme, CnfFormula};
use crate::linalg::{rat, Rat, RationalMatrix};
use crate::matroid::PathOrdering;

/// Errors from instance construction, witness building, and instance use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    /// The chained construction needs distinct first and last clause blocks.
    TooFewClauses { found: usize },
    TooFewBlocks { blocks: usize },
    /// A clause does not consist of exactly three distinct literals.
    NotThreeCnf { clause: usize },
    /// The witness builders refuse assignments that do not satisfy the formula.
    UnsatisfyingAssignment { clause: usize },
    /// A witness was requested for an instance of the wrong construction.
    WrongConstruction,
    /// Dimensions in a hand-built instance do not line up.
    ShapeMismatch,
    /// An exact check `A x = b` overflowed the accumulator.
    Overflow,
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::TooFewClauses { found } => {
                write!(f, "construction requires at least two clauses, got {found}")
            }
            ReductionError::TooFewBlocks { blocks } => {
                write!(f, "construction requires at least two blocks, got {blocks}")
            }
            ReductionError::NotThreeCnf { clause } => {
                write!(f, "clause {clause} does not have exactly three distinct literals")
            }
            ReductionError::UnsatisfyingAssignment { clause } => {
                write!(f, "assignment leaves clause {clause} unsatisfied; witness refused")
            }
            ReductionError::WrongConstruction => {
                write!(f, "instance was not produced by the expected construction")
            }
            ReductionError::ShapeMismatch => write!(f, "matrix, target and ordering sizes disagree"),
            ReductionError::Overflow => write!(f, "exact arithmetic overflow in instance check"),
        }
    }
}

impl core::error::Error for ReductionError {}

/// Construction tag and parameters carried by reduction outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMeta {
    Pathwidth { blocks: usize, bits: u32, levels: u64 },
    Binary { blocks: usize, bits: u32, levels: u64 },
    Eth,
}

impl ReductionMeta {
    pub fn scheme(&self) -> Option<BlockScheme> {
        match *self {
            ReductionMeta::Pathwidth { blocks, bits, .. }
            | ReductionMeta::Binary { blocks, bits, .. } => {
                Some(BlockScheme::from_parts(blocks, bits).expect("meta validated on construction"))
            }
            ReductionMeta::Eth => None,
        }
    }
}

/// An integer program `A x = b, x >= 0` with an optional column ordering.
///
/// The central exchange format: reductions emit it, solvers consume it, the
/// file format round-trips it. Entries are signed so that hand-written
/// instances can be represented and rejected with a proper error by the
/// solvers, which require non-negativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpInstance {
    rows: usize,
    cols: usize,
    /// Row-major entries.
    a: Vec<i64>,
    b: Vec<i64>,
    ordering: Option<PathOrdering>,
    meta: Option<ReductionMeta>,
}

impl IpInstance {
    pub fn new(rows: usize, cols: usize, a: Vec<i64>, b: Vec<i64>) -> Result<Self, ReductionError> {
        if a.len() != rows * cols || b.len() != rows {
            return Err(ReductionError::ShapeMismatch);
        }
        Ok(IpInstance { rows, cols, a, b, ordering: None, meta: None })
    }

    pub fn from_rows(rows: &[Vec<i64>], b: Vec<i64>) -> Result<Self, ReductionError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(ReductionError::ShapeMismatch);
        }
        let mut a = Vec::with_capacity(nrows * ncols);
        for r in rows {
            a.extend_from_slice(r);
        }
        IpInstance::new(nrows, ncols, a, b)
    }

    pub fn with_ordering(mut self, ordering: PathOrdering) -> Result<Self, ReductionError> {
        if ordering.len() != self.cols {
            return Err(ReductionError::ShapeMismatch);
        }
        self.ordering = Some(ordering);
        Ok(self)
    }

    pub fn with_meta(mut self, meta: ReductionMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.a[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.a[row * self.cols..(row + 1) * self.cols]
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn ordering(&self) -> Option<&PathOrdering> {
        self.ordering.as_ref()
    }

    pub fn meta(&self) -> Option<&ReductionMeta> {
        self.meta.as_ref()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a.iter().all(|&v| v >= 0) && self.b.iter().all(|&v| v >= 0)
    }

    /// Largest entry of `b`, the `d` of the running-time bounds; 0 for `b = 0`.
    pub fn max_b(&self) -> i64 {
        self.b.iter().copied().max().unwrap_or(0)
    }

    /// Column `col` as owned values.
    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.entry(r, col)).collect()
    }

    /// The constraint matrix as exact rationals, for matroid computations.
    pub fn to_rational_matrix(&self) -> RationalMatrix {
        let entries: Vec<Rat> = self.a.iter().map(|&v| rat(v)).collect();
        RationalMatrix::from_entries(self.rows, self.cols, entries).expect("dims validated")
    }

    /// Computes `A x` exactly in `i128`.
    pub fn apply(&self, x: &[u64]) -> Result<Vec<i128>, ReductionError> {
        if x.len() != self.cols {
            return Err(ReductionError::ShapeMismatch);
        }
        let mut out = alloc::vec![0i128; self.rows];
        for (r, acc) in out.iter_mut().enumerate() {
            for (c, &mult) in x.iter().enumerate() {
                if mult != 0 {
                    let term = (self.entry(r, c) as i128)
                        .checked_mul(mult as i128)
                        .ok_or(ReductionError::Overflow)?;
                    *acc = acc.checked_add(term).ok_or(ReductionError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// True iff `A x = b` holds exactly.
    pub fn is_solution(&self, x: &[u64]) -> bool {
        match self.apply(x) {
            Ok(ax) => ax.iter().zip(self.b.iter()).all(|(&lhs, &rhs)| lhs == rhs as i128),
            Err(_) => false,
        }
    }
}

/// A feasibility certificate: a non-negative integer multiplier per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpWitness {
    pub x: Vec<u64>,
}

/// Row index of the evaluation row of clause `r0` (0-indexed).
fn eval_row(r0: usize, c: usize) -> usize {
    r0 * (2 * c + 1)
}

/// Compiles `phi` into the chained blocked instance with `c >= 2` variable
/// blocks. The output has `(m-1)(2c+1) + (c+1)` rows, `m * c * 2^(ell+1)`
/// columns, target entries `L-1` on the assignment-matching rows and 1
/// elsewhere, and carries the natural column ordering.
pub fn reduce_pathwidth(phi: &CnfFormula, c: usize) -> Result<IpInstance, ReductionError> {
    let (scheme, inst) = build_pathwidth(phi, c)?;
    let meta = ReductionMeta::Pathwidth {
        blocks: scheme.blocks(),
        bits: scheme.bits(),
        levels: scheme.levels(),
    };
    Ok(inst.with_meta(meta))
}

fn build_pathwidth(phi: &CnfFormula, c: usize) -> Result<(BlockScheme, IpInstance), ReductionError> {
    if c < 2 {
        return Err(ReductionError::TooFewBlocks { blocks: c });
    }
    let m = phi.num_clauses();
    if m < 2 {
        return Err(ReductionError::TooFewClauses { found: m });
    }
    let scheme = BlockScheme::new(phi.num_vars(), c)
        .map_err(|_| ReductionError::TooFewBlocks { blocks: c })?;
    let levels = scheme.levels();
    let pair_cols = 2 * levels as usize;
    let block_cols = c * pair_cols;

    let nrows = (m - 1) * (2 * c + 1) + c + 1;
    let ncols = m * block_cols;
    let mut a = alloc::vec![0i64; nrows * ncols];
    let mut set = |row: usize, col: usize, value: i64| {
        a[row * ncols + col] = value;
    };

    for r0 in 0..m {
        let col_base = r0 * block_cols;
        // Row band of this clause block; bands of consecutive clauses
        // overlap in the 2c matching rows they share.
        let row_base = if r0 == 0 { 0 } else { r0 * (2 * c + 1) - 2 * c };
        for i in 0..c {
            for j in 0..levels {
                let first = col_base + i * pair_cols + 2 * j as usize;
                let second = first + 1;
                let sat = block_satisfies(&scheme, phi, r0, i, j);

                // Evaluation row: the second column of the pair carries the
                // clause check, the first stays zero.
                set(eval_row(r0, c), second, sat as i64);

                // Predecessor matching rows (absent for the first clause).
                if r0 > 0 {
                    set(row_base + 2 * i, first, j as i64);
                    set(row_base + 2 * i, second, j as i64);
                }

                if r0 + 1 < m {
                    // Successor matching: assignment row then selection row.
                    let local = if r0 == 0 { 0 } else { 2 * c };
                    set(row_base + local + 2 * i + 1, first, (levels - 1 - j) as i64);
                    set(row_base + local + 2 * i + 1, second, (levels - 1 - j) as i64);
                    set(row_base + local + 2 * i + 2, first, 1);
                    set(row_base + local + 2 * i + 2, second, 1);
                } else {
                    // Last clause: one selection row per block.
                    set(row_base + 2 * c + 1 + i, first, 1);
                    set(row_base + 2 * c + 1 + i, second, 1);
                }
            }
        }
    }

    let mut b = alloc::vec![1i64; nrows];
    for r0 in 0..m - 1 {
        for i in 0..c {
            b[r0 * (2 * c + 1) + 2 * i + 1] = (levels - 1) as i64;
        }
    }

    let inst = IpInstance::new(nrows, ncols, a, b)?
        .with_ordering(PathOrdering::natural(ncols))?;
    Ok((scheme, inst))
}

/// The binary-entry variant: rows of the blocked instance holding an entry
/// larger than one are replaced by `ell` rows of bitwise expansions (bit `k`
/// of an entry goes to replacement row `k`, least significant first), and
/// the target becomes all ones.
pub fn reduce_binary(phi: &CnfFormula, c: usize) -> Result<IpInstance, ReductionError> {
    let (scheme, base) = build_pathwidth(phi, c)?;
    let ell = scheme.bits();
    let mut rows_out: Vec<Vec<i64>> = Vec::new();
    for q in 0..base.rows() {
        let row = base.row(q);
        if row.iter().any(|&w| w > 1) {
            for k in 0..ell {
                rows_out.push(row.iter().map(|&w| (w >> k) & 1).collect());
            }
        } else {
            rows_out.push(row.to_vec());
        }
    }
    let nrows = rows_out.len();
    let b = alloc::vec![1i64; nrows];
    let meta = ReductionMeta::Binary {
        blocks: scheme.blocks(),
        bits: scheme.bits(),
        levels: scheme.levels(),
    };
    Ok(IpInstance::from_rows(&rows_out, b)?
        .with_ordering(PathOrdering::natural(base.cols()))?
        .with_meta(meta))
}

/// Builds the witness for a blocked instance (plain or binary) from a
/// satisfying assignment: the assignment is decomposed into one index per
/// variable block, each clause is routed to the least block satisfying it,
/// and exactly one column per (clause, block) pair gets multiplier one.
pub fn witness_pathwidth(
    inst: &IpInstance,
    assignment: &[bool],
) -> Result<IpWitness, ReductionError> {
    let Some(meta) = inst.meta() else {
        return Err(ReductionError::WrongConstruction);
    };
    let Some(scheme) = meta.scheme() else {
        return Err(ReductionError::WrongConstruction);
    };
    let c = scheme.blocks();
    let levels = scheme.levels();
    let pair_cols = 2 * levels as usize;
    let block_cols = c * pair_cols;
    if block_cols == 0 || inst.cols() % block_cols != 0 {
        return Err(ReductionError::WrongConstruction);
    }
    let m = inst.cols() / block_cols;

    // The evaluation rows of the plain construction move when the binary
    // variant splits the assignment-matching rows; recover their positions.
    let eval_rows: Vec<usize> = match meta {
        ReductionMeta::Pathwidth { .. } => (0..m).map(|r0| eval_row(r0, c)).collect(),
        ReductionMeta::Binary { bits, .. } => {
            let grow = if *bits >= 2 { *bits as usize } else { 1 };
            (0..m)
                .map(|r0| {
                    // Rows preceding the eval row of clause r0: per earlier
                    // clause one eval row, c (possibly split) assignment
                    // rows and c selection rows.
                    r0 * (1 + c * grow + c)
                })
                .collect()
        }
        ReductionMeta::Eth => return Err(ReductionError::WrongConstruction),
    };

    let indices = scheme.block_indices(assignment);
    let mut x = alloc::vec![0u64; inst.cols()];
    for r0 in 0..m {
        // Least block whose partial assignment satisfies the clause, read
        // off the instance's own evaluation row.
        let chosen = (0..c).find(|&i| {
            let second = r0 * block_cols + i * pair_cols + 2 * indices[i] as usize + 1;
            inst.entry(eval_rows[r0], second) == 1
        });
        let Some(alpha) = chosen else {
            return Err(ReductionError::UnsatisfyingAssignment { clause: r0 });
        };
        for i in 0..c {
            let first = r0 * block_cols + i * pair_cols + 2 * indices[i] as usize;
            x[if i == alpha { first + 1 } else { first }] = 1;
        }
    }

    assert!(inst.is_solution(&x), "constructed witness must satisfy A x = b");
    Ok(IpWitness { x })
}

/// Compiles a 3-CNF formula into the compact instance with two columns per
/// variable (`x_i` and its negation) and two per clause (a clause-hit column
/// and a slack column). Every clause must consist of exactly three distinct
/// literals.
pub fn reduce_eth(phi: &CnfFormula) -> Result<IpInstance, ReductionError> {
    let n = phi.num_vars();
    let m = phi.num_clauses();
    for (idx, clause) in phi.clauses().iter().enumerate() {
        let mut lits = clause.clone();
        lits.sort_unstable();
        lits.dedup();
        if lits.len() != 3 || clause.len() != 3 {
            return Err(ReductionError::NotThreeCnf { clause: idx });
        }
    }

    let nrows = 2 * m + n;
    let ncols = 2 * (m + n);
    let mut a = alloc::vec![0i64; nrows * ncols];
    let mut set = |row: usize, col: usize, value: i64| {
        a[row * ncols + col] = value;
    };

    for i in 0..n {
        set(m + i, 2 * i, 1);
        set(m + i, 2 * i + 1, 1);
    }
    for (j, clause) in phi.clauses().iter().enumerate() {
        for &lit in clause {
            let i = lit.unsigned_abs() as usize - 1;
            let col = if lit > 0 { 2 * i } else { 2 * i + 1 };
            set(j, col, 1);
        }
        set(j, 2 * n + 2 * j, 1);
        set(m + n + j, 2 * n + 2 * j, 1);
        set(m + n + j, 2 * n + 2 * j + 1, 1);
    }

    let mut b = alloc::vec![0i64; nrows];
    b[..m].fill(3);
    b[m..m + n].fill(1);
    b[m + n..].fill(2);

    Ok(IpInstance::new(nrows, ncols, a, b)?
        .with_ordering(PathOrdering::natural(ncols))?
        .with_meta(ReductionMeta::Eth))
}

/// Witness for the 3-CNF instance: variable columns copy the assignment and
/// the two clause columns take the slack pair `(3 - t, t - 1)` where `t` is
/// the number of true literals in the clause.
pub fn witness_eth(inst: &IpInstance, assignment: &[bool]) -> Result<IpWitness, ReductionError> {
    if inst.meta() != Some(&ReductionMeta::Eth) {
        return Err(ReductionError::WrongConstruction);
    }
    let rows = inst.rows();
    let cols = inst.cols();
    if cols < rows || cols % 2 != 0 {
        return Err(ReductionError::WrongConstruction);
    }
    let n = cols - rows;
    let m = rows - cols / 2;
    if assignment.len() < n {
        return Err(ReductionError::ShapeMismatch);
    }

    let mut x = alloc::vec![0u64; cols];
    for (i, &value) in assignment.iter().take(n).enumerate() {
        x[2 * i + usize::from(!value)] = 1;
    }
    for j in 0..m {
        // The first 2n entries of clause row j mark the literals of the
        // clause; count how many the assignment makes true.
        let t: u64 = (0..n)
            .map(|i| {
                let col = 2 * i + usize::from(!assignment[i]);
                (inst.entry(j, col) == 1) as u64
            })
            .sum();
        if t == 0 {
            return Err(ReductionError::UnsatisfyingAssignment { clause: j });
        }
        x[2 * n + 2 * j] = 3 - t;
        x[2 * n + 2 * j + 1] = t - 1;
    }

    assert!(inst.is_solution(&x), "constructed witness must satisfy A x = b");
    Ok(IpWitness { x })
}
