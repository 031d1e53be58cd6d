//! CNF formulas, DIMACS parsing, a brute-force satisfiability oracle, and
//! the variable-block indexing shared by the instance compilers.
//!
//! A formula over variables `x_1..x_n` is split into `c` blocks of
//! `ceil(n/c)` variables each, padding with dummy variables (appended after
//! `x_n`, occurring in no clause) when `c` does not divide `n`. The `2^ell`
//! truth assignments of a block are numbered `0..L-1`; the first variable of
//! a block carries the most significant bit of that number, so index 0 is
//! the all-false assignment and index `L-1` the all-true one.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors from formula construction and the satisfiability oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CnfError {
    EmptyClause,
    LiteralOutOfRange { literal: i64, num_vars: usize },
    TooManyVariables { num_vars: usize, limit: usize },
    TooFewBlocks { blocks: usize },
    BlockTooWide { bits: u32, limit: u32 },
}

impl fmt::Display for CnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnfError::EmptyClause => write!(f, "clauses must be non-empty"),
            CnfError::LiteralOutOfRange { literal, num_vars } => {
                write!(f, "literal {literal} references no variable in 1..={num_vars}")
            }
            CnfError::TooManyVariables { num_vars, limit } => {
                write!(f, "brute-force search limited to {limit} variables, got {num_vars}")
            }
            CnfError::TooFewBlocks { blocks } => {
                write!(f, "block schemes need at least one block, got {blocks}")
            }
            CnfError::BlockTooWide { bits, limit } => {
                write!(f, "block width must be between 1 and {limit} bits, got {bits}")
            }
        }
    }
}

impl core::error::Error for CnfError {}

/// A CNF formula: clauses of signed 1-indexed variable literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Validates that clauses are non-empty and reference `1..=num_vars`.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, CnfError> {
        for clause in &clauses {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause);
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(CnfError::LiteralOutOfRange { literal: lit as i64, num_vars });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// True iff every clause has a literal made true by `assignment`
    /// (`assignment[i]` is the value of `x_{i+1}`).
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assert!(assignment.len() >= self.num_vars, "assignment too short");
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let var = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    assignment[var]
                } else {
                    !assignment[var]
                }
            })
        })
    }
}

/// Errors raised by [`parse_dimacs`], each carrying the offending line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsError {
    MissingHeader,
    MalformedHeader { line: usize },
    InvalidToken { line: usize, token: String },
    LiteralOutOfRange { line: usize, literal: i64 },
    EmptyClause { line: usize },
    UnterminatedClause { line: usize },
    ClauseCountMismatch { declared: usize, found: usize },
}

impl fmt::Display for DimacsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsError::MissingHeader => write!(f, "no `p cnf <vars> <clauses>` header found"),
            DimacsError::MalformedHeader { line } => write!(f, "line {line}: malformed header"),
            DimacsError::InvalidToken { line, token } => {
                write!(f, "line {line}: expected a literal, found {token:?}")
            }
            DimacsError::LiteralOutOfRange { line, literal } => {
                write!(f, "line {line}: literal {literal} out of range")
            }
            DimacsError::EmptyClause { line } => write!(f, "line {line}: empty clause"),
            DimacsError::UnterminatedClause { line } => {
                write!(f, "line {line}: clause not terminated by 0")
            }
            DimacsError::ClauseCountMismatch { declared, found } => {
                write!(f, "header declared {declared} clauses, found {found}")
            }
        }
    }
}

impl core::error::Error for DimacsError {}

/// Parses DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header,
/// then 0-terminated clauses. Clauses may span lines, several clauses may
/// share a line, trailing whitespace is ignored, and a `%` line terminates
/// the input (legacy SATLIB convention).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_content_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if header.is_none() {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("p") || parts.next() != Some("cnf") {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            let vars: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(DimacsError::MalformedHeader { line: line_no })?;
            let count: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(DimacsError::MalformedHeader { line: line_no })?;
            if parts.next().is_some() || vars > i32::MAX as usize {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.unwrap();
        last_content_line = line_no;
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| DimacsError::InvalidToken { line: line_no, token: token.into() })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line: line_no });
                }
                clauses.push(core::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > vars {
                return Err(DimacsError::LiteralOutOfRange { line: line_no, literal: lit });
            }
            // The cast is exact: |lit| <= vars <= i32::MAX.
            current.push(lit as i32);
        }
    }

    let Some((vars, declared)) = header else {
        return Err(DimacsError::MissingHeader);
    };
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause { line: last_content_line });
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch { declared, found: clauses.len() });
    }
    Ok(CnfFormula::new(vars, clauses).expect("clauses validated during parsing"))
}

/// Exhaustive satisfiability check for formulas with at most 24 variables.
/// Returns the first satisfying assignment in counting order (all-false
/// first), or `None` when unsatisfiable.
pub fn brute_force_sat(phi: &CnfFormula) -> Result<Option<Vec<bool>>, CnfError> {
    const LIMIT: usize = 24;
    let n = phi.num_vars();
    if n > LIMIT {
        return Err(CnfError::TooManyVariables { num_vars: n, limit: LIMIT });
    }
    for mask in 0u64..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        if phi.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Partition of a (padded) variable set into `c` blocks of `ell` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockScheme {
    blocks: usize,
    bits: u32,
}

impl BlockScheme {
    /// Scheme for `num_vars` variables in `blocks` blocks of
    /// `ceil(num_vars / blocks)` bits each.
    pub fn new(num_vars: usize, blocks: usize) -> Result<Self, CnfError> {
        if blocks == 0 {
            return Err(CnfError::TooFewBlocks { blocks });
        }
        let bits = num_vars.div_ceil(blocks) as u32;
        Self::from_parts(blocks, bits)
    }

    /// Scheme with explicit block count and bits per block.
    pub fn from_parts(blocks: usize, bits: u32) -> Result<Self, CnfError> {
        if blocks == 0 {
            return Err(CnfError::TooFewBlocks { blocks });
        }
        if bits == 0 || bits > 32 {
            return Err(CnfError::BlockTooWide { bits, limit: 32 });
        }
        Ok(BlockScheme { blocks, bits })
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Total variables after padding: `blocks * bits`.
    pub fn padded_vars(&self) -> usize {
        self.blocks * self.bits as usize
    }

    /// Number of assignments per block, `L = 2^bits`.
    pub fn levels(&self) -> u64 {
        1u64 << self.bits
    }

    /// The 1-indexed variables of block `block`.
    pub fn block_vars(&self, block: usize) -> impl Iterator<Item = usize> {
        assert!(block < self.blocks, "block index out of range");
        let ell = self.bits as usize;
        (block * ell + 1)..=((block + 1) * ell)
    }

    /// The assignment of block `block` encoded by `index`, as 1-indexed
    /// `(variable, value)` pairs. The first variable of the block takes the
    /// most significant bit of `index`.
    pub fn block_assignment(&self, block: usize, index: u64) -> Vec<(usize, bool)> {
        assert!(index < self.levels(), "assignment index out of range");
        let ell = self.bits;
        self.block_vars(block)
            .enumerate()
            .map(|(t, var)| (var, index & (1 << (ell - 1 - t as u32)) != 0))
            .collect()
    }

    /// Decomposes a total assignment into one index per block. Variables
    /// past the end of `assignment` (padding dummies) count as false.
    pub fn block_indices(&self, assignment: &[bool]) -> Vec<u64> {
        (0..self.blocks)
            .map(|i| {
                let ell = self.bits;
                self.block_vars(i)
                    .enumerate()
                    .map(|(t, var)| {
                        let value = assignment.get(var - 1).copied().unwrap_or(false);
                        (value as u64) << (ell - 1 - t as u32)
                    })
                    .sum()
            })
            .collect()
    }
}

/// True iff clause `clause` of `phi` has a literal on a variable of block
/// `block` that the block assignment `index` makes true. A clause with no
/// variables in the block is never satisfied by it.
pub fn block_satisfies(
    scheme: &BlockScheme,
    phi: &CnfFormula,
    clause: usize,
    block: usize,
    index: u64,
) -> bool {
    let partial = scheme.block_assignment(block, index);
    phi.clauses()[clause].iter().any(|&lit| {
        let var = lit.unsigned_abs() as usize;
        partial
            .iter()
            .any(|&(v, value)| v == var && value == (lit > 0))
    })
}
