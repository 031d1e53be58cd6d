//! Incremental rank and annihilator tracking over growing column sets.
//!
//! Ordering widths need the rank of every prefix and every suffix of a
//! column sequence, and the solver needs to test membership in the span of
//! every suffix. Recomputing those from scratch per cut is quadratic waste;
//! both are maintained here incrementally, one column insertion at a time,
//! over sparse exact-arithmetic rows.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{normalize_int_row, Rat};

/// Sparse vector over the rationals, sorted by coordinate.
pub type SparseVec = Vec<(u32, Rat)>;

/// Turns a dense rational vector into its sparse form.
pub fn sparse_from_dense(dense: &[Rat]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| (i as u32, e.clone()))
        .collect()
}

/// Row-echelon basis of a growing vector set; answers rank queries.
///
/// Rows are kept sparse and keyed by leading coordinate. This is plain (not
/// reduced) echelon form, which is all a rank needs and causes far less
/// fill-in on the banded matrices produced by the reductions.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<u32, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a vector; returns true iff it enlarged the span.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        loop {
            let Some(&(lead, _)) = v.first() else {
                return false;
            };
            let Some(row) = self.rows.get(&lead) else {
                self.rows.insert(lead, v);
                return true;
            };
            let factor = &v[0].1 / &row[0].1;
            v = sparse_sub_scaled(&v, row, &factor);
        }
    }

    /// True iff `v` lies in the current span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        loop {
            let Some(&(lead, _)) = v.first() else {
                return true;
            };
            let Some(row) = self.rows.get(&lead) else {
                return false;
            };
            let factor = &v[0].1 / &row[0].1;
            v = sparse_sub_scaled(&v, row, &factor);
        }
    }
}

/// `a - factor * b` on sparse vectors; drops exact zeroes.
fn sparse_sub_scaled(a: &SparseVec, b: &SparseVec, factor: &Rat) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ia, ref va)), Some(&(ib, ref vb))) if ia == ib => {
                let v = va - factor * vb;
                if !v.is_zero() {
                    out.push((ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ia, ref va)), Some(&(ib, _))) if ia < ib => {
                out.push((ia, va.clone()));
                i += 1;
            }
            (Some(_), Some(&(ib, ref vb))) => {
                out.push((ib, -(factor * vb)));
                j += 1;
            }
            (Some(&(ia, ref va)), None) => {
                out.push((ia, va.clone()));
                i += 1;
            }
            (None, Some(&(ib, ref vb))) => {
                out.push((ib, -(factor * vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// One functional of an annihilator basis: an integer row `y` used through
/// the test `y . v == 0`. Coefficients are gcd-reduced with positive lead;
/// an `i64` mirror is kept when it exists so that hot dots can run in `i128`.
#[derive(Debug)]
pub struct AnnRow {
    idx: Box<[u32]>,
    coeffs: Box<[BigInt]>,
    small: Option<Box<[i64]>>,
    /// Sum of absolute coefficient values when `small` is set.
    abs_sum: u128,
}

impl AnnRow {
    fn from_coords(coords: Vec<(u32, BigInt)>) -> Self {
        let idx: Box<[u32]> = coords.iter().map(|&(i, _)| i).collect();
        let coeffs: Box<[BigInt]> = coords.into_iter().map(|(_, c)| c).collect();
        let small: Option<Box<[i64]>> = coeffs.iter().map(i64::try_from).collect::<Result<_, _>>().ok();
        let abs_sum = small
            .as_deref()
            .map(|s| s.iter().map(|&c| c.unsigned_abs() as u128).sum())
            .unwrap_or(u128::MAX);
        AnnRow { idx, coeffs, small, abs_sum }
    }

    pub fn coords(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.idx.iter().copied().zip(self.coeffs.iter())
    }

    /// `y . v == 0` for a dense non-negative integer vector `v` whose entries
    /// are bounded by `entry_bound`.
    pub fn dot_is_zero(&self, v: &[u64], entry_bound: u64) -> bool {
        if let Some(small) = &self.small {
            // Safe in i128: |dot| <= abs_sum * entry_bound.
            if self.abs_sum.saturating_mul(entry_bound.max(1) as u128) <= (i128::MAX / 2) as u128 {
                let mut acc: i128 = 0;
                for (&i, &c) in self.idx.iter().zip(small.iter()) {
                    acc += c as i128 * v[i as usize] as i128;
                }
                return acc == 0;
            }
        }
        let mut acc = BigInt::zero();
        for (&i, c) in self.idx.iter().zip(self.coeffs.iter()) {
            if v[i as usize] != 0 {
                acc += c * BigInt::from(v[i as usize]);
            }
        }
        acc.is_zero()
    }

    fn dot_column(&self, col: &[u64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (&i, c) in self.idx.iter().zip(self.coeffs.iter()) {
            if col[i as usize] != 0 {
                acc += c * BigInt::from(col[i as usize]);
            }
        }
        acc
    }
}

/// Basis of the left annihilator `{y : y . v = 0 for every added column v}`.
///
/// Snapshots share unchanged rows via `Rc`, so keeping one snapshot per
/// suffix of a long column sequence stays cheap.
#[derive(Debug, Clone)]
pub struct Annihilator {
    ambient: usize,
    rows: Vec<Rc<AnnRow>>,
}

impl Annihilator {
    /// Annihilator of the empty set: all coordinate functionals.
    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|q| Rc::new(AnnRow::from_coords(alloc::vec![(q as u32, BigInt::from(1))])))
            .collect();
        Annihilator { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the annihilator; `ambient - len()` is the span's rank.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Restricts the annihilator to functionals vanishing on `col`.
    pub fn add_column(&mut self, col: &[u64]) {
        assert_eq!(col.len(), self.ambient);
        let dots: Vec<BigInt> = self.rows.iter().map(|r| r.dot_column(col)).collect();
        let pivot = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| !dots[i].is_zero())
            .min_by_key(|&(i, r)| (r.idx.len(), i))
            .map(|(i, _)| i);
        let Some(p) = pivot else {
            return;
        };
        let pivot_row = self.rows[p].clone();
        let pivot_dot = dots[p].clone();
        let mut next = Vec::with_capacity(self.rows.len() - 1);
        for (i, row) in self.rows.iter().enumerate() {
            if i == p {
                continue;
            }
            if dots[i].is_zero() {
                next.push(row.clone());
            } else {
                next.push(Rc::new(combine_rows(row, &pivot_row, &pivot_dot, &dots[i])));
            }
        }
        self.rows = next;
    }

    /// True iff `v` lies in the span of the added columns, i.e. every
    /// functional of the basis vanishes on it. Rows keep their long-lived
    /// positions, so the stable functionals — the ones that reject most
    /// candidates — are tested first, and the scan exits on the first
    /// nonzero dot.
    pub fn in_span(&self, v: &[u64], entry_bound: u64) -> bool {
        self.rows.iter().all(|r| r.dot_is_zero(v, entry_bound))
    }

    pub fn rows(&self) -> &[Rc<AnnRow>] {
        &self.rows
    }
}

/// `pivot_dot * row - row_dot * pivot`, gcd-normalised.
fn combine_rows(row: &AnnRow, pivot: &AnnRow, pivot_dot: &BigInt, row_dot: &BigInt) -> AnnRow {
    let mut merged: Vec<(u32, BigInt)> = Vec::with_capacity(row.idx.len() + pivot.idx.len());
    let (mut i, mut j) = (0, 0);
    while i < row.idx.len() || j < pivot.idx.len() {
        let ia = row.idx.get(i).copied();
        let ib = pivot.idx.get(j).copied();
        match (ia, ib) {
            (Some(a), Some(b)) if a == b => {
                let v = pivot_dot * &row.coeffs[i] - row_dot * &pivot.coeffs[j];
                if !v.is_zero() {
                    merged.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                merged.push((a, pivot_dot * &row.coeffs[i]));
                i += 1;
            }
            (Some(_), Some(b)) => {
                merged.push((b, -(row_dot * &pivot.coeffs[j])));
                j += 1;
            }
            (Some(a), None) => {
                merged.push((a, pivot_dot * &row.coeffs[i]));
                i += 1;
            }
            (None, Some(b)) => {
                merged.push((b, -(row_dot * &pivot.coeffs[j])));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let mut values: Vec<BigInt> = merged.iter().map(|(_, v)| v.clone()).collect();
    normalize_int_row(&mut values);
    let coords = merged
        .into_iter()
        .zip(values)
        .map(|((idx, _), v)| (idx, v))
        .collect();
    AnnRow::from_coords(coords)
}
