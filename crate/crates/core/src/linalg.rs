//! Exact rational linear algebra over arbitrary-precision integers.
//!
//! Everything downstream (connectivity functions, cut dimensions, the
//! subspace filter of the solver) reduces to ranks, spans, intersections and
//! membership tests computed here. No floating point is used anywhere:
//! widths derived from these dimensions are only meaningful if they are
//! exact. Bases are kept in reduced row-echelon form, which makes them
//! canonical and lets subspaces be compared with `==`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = Ratio<BigInt>;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(value: i64) -> Rat {
    Ratio::from_integer(BigInt::from(value))
}

/// Errors raised on contract violations of the linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// The entry grid does not match the declared dimensions.
    ShapeMismatch { rows: usize, cols: usize, entries: usize },
    /// A vector has a different length than the ambient dimension it is used in.
    AmbientMismatch { expected: usize, found: usize },
    /// A column index is outside `0..cols`.
    ColumnOutOfRange { index: usize, cols: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::ShapeMismatch { rows, cols, entries } => write!(
                f,
                "entry grid of length {entries} does not match {rows}x{cols} matrix"
            ),
            LinalgError::AmbientMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            LinalgError::ColumnOutOfRange { index, cols } => {
                write!(f, "column index {index} out of range for {cols} columns")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    /// Builds a matrix from a row-major entry grid.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch { rows, cols, entries: entries.len() });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(LinalgError::ShapeMismatch {
                    rows: nrows,
                    cols: ncols,
                    entries: row.len(),
                });
            }
            entries.extend(row.iter().map(|&v| rat(v)));
        }
        RationalMatrix::from_entries(nrows, ncols, entries)
    }

    /// The `n`-by-`n` identity.
    pub fn identity(n: usize) -> Self {
        let mut entries = alloc::vec![Rat::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rat::one();
        }
        RationalMatrix { rows: n, cols: n, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: alloc::vec![Rat::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.entries[row * self.cols + col] = value;
    }

    /// Extracts column `col` as an owned vector.
    pub fn column(&self, col: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        rref_in_place(&mut rows)
    }

    /// Span of the selected columns (0-indexed); an empty selection yields
    /// the zero subspace of `Q^rows`.
    pub fn span_of_columns(&self, cols: &[usize]) -> Result<Subspace, LinalgError> {
        let mut vectors = Vec::with_capacity(cols.len());
        for &c in cols {
            if c >= self.cols {
                return Err(LinalgError::ColumnOutOfRange { index: c, cols: self.cols });
            }
            vectors.push(self.column(c));
        }
        Subspace::from_spanning(self.rows, vectors)
    }
}

/// A subspace of `Q^m`, stored as an RREF basis.
///
/// The zero subspace is an empty basis with an explicit ambient dimension,
/// so a 0-dimensional subspace of `Q^3` and one of `Q^4` compare unequal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    /// The zero subspace of `Q^ambient_dim`.
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    /// Builds the span of the given vectors.
    pub fn from_spanning(ambient_dim: usize, mut vectors: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::AmbientMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        rref_in_place(&mut vectors);
        Ok(Subspace { ambient_dim, basis: vectors })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical RREF basis rows.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Membership test; the zero vector is in every subspace.
    pub fn contains(&self, v: &[Rat]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::AmbientMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let mut residual = v.to_vec();
        reduce_against_basis(&mut residual, &self.basis);
        Ok(residual.iter().all(Rat::is_zero))
    }

    /// Sum `U + W` of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient_dim, vectors)
    }

    /// Intersection `U ∩ W`, computed through the joint kernel: coefficient
    /// vectors `(a, c)` with `U^T a = W^T c` describe exactly the common
    /// elements. The resulting basis is RREF-normalised.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let p = self.dim();
        let q = other.dim();
        if p == 0 || q == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Rows of `joint` are the ambient coordinates; columns are the p + q
        // coefficients. Kernel vectors give Σ a_i u_i - Σ c_j w_j = 0.
        let mut joint = alloc::vec![alloc::vec![Rat::zero(); p + q]; self.ambient_dim];
        for (i, u) in self.basis.iter().enumerate() {
            for (row, coord) in joint.iter_mut().zip(u.iter()) {
                row[i] = coord.clone();
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for (row, coord) in joint.iter_mut().zip(w.iter()) {
                row[p + j] = -coord.clone();
            }
        }
        let kernel = column_kernel(&joint, p + q);
        let mut vectors = Vec::with_capacity(kernel.len());
        for coeffs in &kernel {
            let mut v = alloc::vec![Rat::zero(); self.ambient_dim];
            for (i, u) in self.basis.iter().enumerate() {
                if !coeffs[i].is_zero() {
                    for (dst, coord) in v.iter_mut().zip(u.iter()) {
                        *dst += &coeffs[i] * coord;
                    }
                }
            }
            vectors.push(v);
        }
        let result = Subspace::from_spanning(self.ambient_dim, vectors)?;
        debug_assert_eq!(
            result.dim() + self.sum(other)?.dim(),
            self.dim() + other.dim(),
            "intersection dimension formula violated"
        );
        Ok(result)
    }
}

/// Reduces `rows` to RREF in place, dropping zero rows; returns the rank.
///
/// After the call the surviving rows have strictly increasing pivot columns,
/// pivot entries equal to one, and zeroes above and below each pivot.
pub(crate) fn rref_in_place(rows: &mut Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].clone();
        for entry in rows[pivot_row].iter_mut() {
            if !entry.is_zero() {
                *entry /= &inv;
            }
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (dst, src) in row.iter_mut().zip(pivot.iter()) {
                    if !src.is_zero() {
                        *dst -= &factor * src;
                    }
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    pivot_row
}

/// Eliminates `v` against RREF basis rows in place.
fn reduce_against_basis(v: &mut [Rat], basis: &[Vec<Rat>]) {
    for row in basis {
        let pivot = row.iter().position(|e| !e.is_zero()).expect("basis rows are nonzero");
        if v[pivot].is_zero() {
            continue;
        }
        let factor = v[pivot].clone();
        for (dst, src) in v.iter_mut().zip(row.iter()) {
            if !src.is_zero() {
                *dst -= &factor * src;
            }
        }
    }
}

/// Basis of `{x : M x = 0}` for `M` given as `rows` of length `ncols`.
fn column_kernel(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = rows.to_vec();
    rref_in_place(&mut work);
    let mut pivot_cols = Vec::with_capacity(work.len());
    for row in &work {
        pivot_cols.push(row.iter().position(|e| !e.is_zero()).expect("nonzero RREF row"));
    }
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = alloc::vec![Rat::zero(); ncols];
        x[free] = Rat::one();
        for (row, &pc) in work.iter().zip(pivot_cols.iter()) {
            x[pc] = -row[free].clone();
        }
        kernel.push(x);
    }
    kernel
}

/// Integer content helper: divides a slice of `BigInt`s by their gcd and
/// normalises the sign of the leading nonzero entry to be positive.
pub(crate) fn normalize_int_row(values: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in values.iter() {
        if !v.is_zero() {
            g = num_integer::Integer::gcd(&g, v);
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = values.iter().find(|v| !v.is_zero()).map(Signed::is_negative);
    if lead_negative == Some(true) {
        g = -g;
    }
    if !g.is_one() {
        for v in values.iter_mut() {
            *v /= &g;
        }
    }
}
