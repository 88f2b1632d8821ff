//! Dense exact-rational matrices and permutation matrices.
//!
//! [`RatMatrix`] is a row-major dense matrix over [`Rat`].  Sizes here are
//! desk-scale (dimensions in the tens), so simplicity and exactness win over
//! sparsity.  [`PermMatrix`] stores a permutation as its row image and
//! materializes to a `RatMatrix` on demand.
//!
//! The JSON form of a matrix is `{"rows": r, "cols": c, "entries": [..]}` with
//! entries row-major, each either a plain integer or a `"p/q"` string.

use crate::rat::{fmt_rat, int, parse_rat, Rat};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Errors from matrix construction and shape-checked operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is {rows}x{cols} but a square matrix is required")]
    NonSquare { rows: usize, cols: usize },
    #[error("inner dimensions {0} and {1} do not agree")]
    InnerDim(usize, usize),
    #[error("ragged row {row}: has {got} entries, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("index ({0}, {1}) out of bounds for {2}x{3}")]
    OutOfBounds(usize, usize, usize, usize),
    #[error("not a permutation image: {0}")]
    NotPermutation(String),
    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),
    #[error("empty matrix family")]
    EmptyFamily,
}

/// Dense row-major matrix over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// All-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::one(); rows * cols] }
    }

    /// Constant matrix filled with `value`.
    pub fn constant(rows: usize, cols: usize, value: Rat) -> Self {
        RatMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, MatError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(MatError::RaggedRow { row: i, got: r.len(), expected: ncols });
            }
        }
        Ok(RatMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    /// Integer literal constructor, convenient in tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let m = Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
        );
        m.expect("integer literal rows must be rectangular")
    }

    /// Truncation matrix `(U_m 0)` of shape `m x n`: identity in the first
    /// `m` columns, zero elsewhere.  Requires `m <= n`.
    pub fn truncation(m: usize, n: usize) -> Self {
        assert!(m <= n, "truncation requires m <= n");
        Self::from_fn(m, n, |r, c| if r == c { Rat::one() } else { Rat::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The block with rows `r0..r1` and columns `c0..c1` (half-open).
    ///
    /// Panics if the range exceeds the matrix, like slice indexing would.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RatMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.at(r0 + r, c0 + c).clone())
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c] = v;
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::InnerDim(self.cols, rhs.rows));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if !b.is_zero() {
                        let cur = out.at(r, c).clone();
                        out.set(r, c, cur + a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Self, MatError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatError::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: rhs.rows,
                cols: rhs.cols,
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, k: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    /// Entrywise `self >= rhs`.
    pub fn ge(&self, rhs: &Self) -> Result<bool, MatError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatError::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: rhs.rows,
                cols: rhs.cols,
            });
        }
        Ok(self.data.iter().zip(&rhs.data).all(|(a, b)| a >= b))
    }

    /// Entrywise `self <= rhs`.
    pub fn le(&self, rhs: &Self) -> Result<bool, MatError> {
        rhs.ge(self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    /// All entries nonnegative integers (adjacency-style matrix).
    pub fn is_nonneg_integer(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative() && v.is_integer())
    }

    /// All entries 0 or 1.
    pub fn is_01(&self) -> bool {
        self.data.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        (0..self.rows)
            .map(|r| self.row(r).iter().fold(Rat::zero(), |acc, v| acc + v))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<Rat> {
        let mut sums = vec![Rat::zero(); self.cols];
        for r in 0..self.rows {
            for (c, v) in self.row(r).iter().enumerate() {
                sums[c] += v;
            }
        }
        sums
    }

    pub fn total(&self) -> Rat {
        self.data.iter().fold(Rat::zero(), |acc, v| acc + v)
    }

    /// Sum of squared entries (squared Euclidean/Frobenius norm).
    pub fn euclidean_norm_sq(&self) -> Rat {
        self.data.iter().fold(Rat::zero(), |acc, v| acc + v * v)
    }

    /// First `l` columns, as a new matrix.  Requires `l <= cols`; equivalent
    /// to right-multiplying by the transpose of [`RatMatrix::truncation`].
    pub fn first_cols(&self, l: usize) -> Self {
        assert!(l <= self.cols, "first_cols: l exceeds column count");
        Self::from_fn(self.rows, l, |r, c| self.at(r, c).clone())
    }

    /// First `m` rows, as a new matrix; equivalent to left-multiplying by the
    /// truncation matrix.
    pub fn first_rows(&self, m: usize) -> Self {
        assert!(m <= self.rows, "first_rows: m exceeds row count");
        Self::from_fn(m, self.cols, |r, c| self.at(r, c).clone())
    }

    /// Embeds `self` into the top-left corner of a `rows x cols` zero matrix.
    pub fn pad_to(&self, rows: usize, cols: usize) -> Result<Self, MatError> {
        if rows < self.rows || cols < self.cols {
            return Err(MatError::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows,
                cols,
            });
        }
        let mut out = Self::zeros(rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other` (column counts must agree).
    pub fn vstack(&self, other: &Self) -> Result<Self, MatError> {
        if self.cols != other.cols {
            return Err(MatError::InnerDim(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RatMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(fmt_rat).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

// JSON form: {"rows": r, "cols": c, "entries": [1, "1/2", ...]} row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<serde_json::Value>,
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .data
            .iter()
            .map(|v| {
                if v.is_integer() {
                    let as_i64: Result<i64, _> = v.numer().try_into();
                    if let Ok(i) = as_i64 {
                        return serde_json::Value::Number(serde_json::Number::from(i));
                    }
                }
                serde_json::Value::String(fmt_rat(v))
            })
            .collect();
        MatrixJson { rows: self.rows, cols: self.cols, entries }.serialize(ser)
    }
}

// Integer JSON entries may exceed i64 only via strings; plain numbers must be
// integral i64.
impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(de)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom(format!(
                "entry count {} does not match {}x{}",
                raw.entries.len(),
                raw.rows,
                raw.cols
            )));
        }
        let mut data = Vec::with_capacity(raw.entries.len());
        for e in &raw.entries {
            let v = match e {
                serde_json::Value::Number(n) => {
                    let i = n
                        .as_i64()
                        .ok_or_else(|| D::Error::custom(format!("non-integer entry {n}")))?;
                    int(i)
                }
                serde_json::Value::String(s) => {
                    parse_rat(s).map_err(|e| D::Error::custom(e.to_string()))?
                }
                other => return Err(D::Error::custom(format!("bad matrix entry {other}"))),
            };
            data.push(v);
        }
        Ok(RatMatrix { rows: raw.rows, cols: raw.cols, data })
    }
}

/// Row/column slack report for the doubly substochastic check.
///
/// `row_slack[i]` is `1 - (sum of row i)`; negative slack means the row sum
/// exceeds 1.  `ok` requires nonnegative entries and nonnegative slacks.
#[derive(Debug, Clone)]
pub struct SubstochasticReport {
    pub ok: bool,
    pub nonneg: bool,
    pub row_slack: Vec<Rat>,
    pub col_slack: Vec<Rat>,
}

impl SubstochasticReport {
    /// True when every slack is exactly zero (and entries nonnegative):
    /// the matrix is doubly stochastic.
    pub fn is_doubly_stochastic(&self) -> bool {
        self.nonneg
            && self.row_slack.iter().all(|s| s.is_zero())
            && self.col_slack.iter().all(|s| s.is_zero())
    }
}

/// Checks `m` for double substochasticity (square matrices only): entries
/// nonnegative, every row and column sum at most 1.
pub fn is_doubly_substochastic(m: &RatMatrix) -> Result<SubstochasticReport, MatError> {
    if !m.is_square() {
        return Err(MatError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let nonneg = m.is_nonneg();
    let row_slack: Vec<Rat> = m.row_sums().into_iter().map(|s| Rat::one() - s).collect();
    let col_slack: Vec<Rat> = m.col_sums().into_iter().map(|s| Rat::one() - s).collect();
    let ok = nonneg
        && row_slack.iter().all(|s| !s.is_negative())
        && col_slack.iter().all(|s| !s.is_negative());
    Ok(SubstochasticReport { ok, nonneg, row_slack, col_slack })
}

/// Convenience: exact doubly stochastic test.
pub fn is_doubly_stochastic(m: &RatMatrix) -> Result<bool, MatError> {
    Ok(is_doubly_substochastic(m)?.is_doubly_stochastic())
}

/// A permutation matrix, stored as its row image: row `r` has its 1 in
/// column `image[r]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermMatrix {
    image: Vec<usize>,
}

impl PermMatrix {
    pub fn identity(n: usize) -> Self {
        PermMatrix { image: (0..n).collect() }
    }

    /// Validates that `image` is a bijection on `0..n`.
    pub fn from_image(image: Vec<usize>) -> Result<Self, MatError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &c in &image {
            if c >= n {
                return Err(MatError::NotPermutation(format!("column {c} out of range 0..{n}")));
            }
            if seen[c] {
                return Err(MatError::NotPermutation(format!("column {c} repeated")));
            }
            seen[c] = true;
        }
        Ok(PermMatrix { image })
    }

    /// Transposition swapping `a` and `b` (identity if `a == b`).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a < n && b < n);
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        PermMatrix { image }
    }

    /// Three-cycle sending `a -> b -> c -> a`.
    pub fn cycle3(n: usize, a: usize, b: usize, c: usize) -> Self {
        assert!(a < n && b < n && c < n && a != b && b != c && a != c);
        let mut image: Vec<usize> = (0..n).collect();
        image[a] = b;
        image[b] = c;
        image[c] = a;
        PermMatrix { image }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Column of the 1 in row `r`.
    pub fn col_of_row(&self, r: usize) -> usize {
        self.image[r]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (r, &c) in self.image.iter().enumerate() {
            inv[c] = r;
        }
        PermMatrix { image: inv }
    }

    /// Matrix product `self * rhs` as a permutation.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.n(), rhs.n());
        PermMatrix { image: self.image.iter().map(|&c| rhs.image[c]).collect() }
    }

    pub fn to_matrix(&self) -> RatMatrix {
        let n = self.n();
        let mut m = RatMatrix::zeros(n, n);
        for (r, &c) in self.image.iter().enumerate() {
            m.set(r, c, Rat::one());
        }
        m
    }

    /// `self * m` without materializing the permutation matrix: row `r` of
    /// the product is row `image[r]` of `m`.
    pub fn apply_rows(&self, m: &RatMatrix) -> Result<RatMatrix, MatError> {
        if m.rows() != self.n() {
            return Err(MatError::InnerDim(self.n(), m.rows()));
        }
        Ok(RatMatrix::from_fn(m.rows(), m.cols(), |r, c| m.at(self.image[r], c).clone()))
    }

    /// `m * self`: column `c` of the product is column `inverse(c)` of `m`.
    pub fn apply_cols(&self, m: &RatMatrix) -> Result<RatMatrix, MatError> {
        if m.cols() != self.n() {
            return Err(MatError::InnerDim(m.cols(), self.n()));
        }
        let inv = self.inverse();
        Ok(RatMatrix::from_fn(m.rows(), m.cols(), |r, c| m.at(r, inv.image[c]).clone()))
    }

    /// Conjugation `self * s * self^T`, i.e. the pattern `s` relabeled:
    /// entry `(a, b)` of the result is `s[image[a]][image[b]]`.
    pub fn conjugate(&self, s: &RatMatrix) -> Result<RatMatrix, MatError> {
        if !s.is_square() || s.rows() != self.n() {
            return Err(MatError::InnerDim(self.n(), s.rows()));
        }
        Ok(RatMatrix::from_fn(s.rows(), s.cols(), |a, b| {
            s.at(self.image[a], self.image[b]).clone()
        }))
    }

    /// All permutations of size `n`, image vectors in lexicographic order.
    pub fn all(n: usize) -> Vec<PermMatrix> {
        let mut out = Vec::new();
        let mut image: Vec<usize> = (0..n).collect();
        loop {
            out.push(PermMatrix { image: image.clone() });
            // Standard next-permutation; stops after the last (descending) image.
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| image[i] < image[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| image[j] > image[i]).unwrap();
            image.swap(i, j);
            image[i + 1..].reverse();
        }
        if n == 0 {
            // The empty permutation: `all(0)` holds exactly the empty image.
            debug_assert_eq!(out.len(), 1);
        }
        out
    }
}

impl fmt::Debug for PermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermMatrix{:?}", self.image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn matmul_and_transpose() {
        let a = RatMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, RatMatrix::from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), RatMatrix::from_ints(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&RatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn norm_and_sums() {
        let half = RatMatrix::constant(2, 2, frac(1, 2));
        assert_eq!(half.euclidean_norm_sq(), int(1));
        assert_eq!(half.row_sums(), vec![int(1), int(1)]);
        assert_eq!(half.col_sums(), vec![int(1), int(1)]);
        assert_eq!(half.total(), int(2));
    }

    #[test]
    fn substochastic_report_slacks() {
        let m = RatMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 4)],
            vec![frac(1, 4), frac(1, 4)],
        ])
        .unwrap();
        let rep = is_doubly_substochastic(&m).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.row_slack, vec![frac(1, 4), frac(1, 2)]);
        assert_eq!(rep.col_slack, vec![frac(1, 4), frac(1, 2)]);
        assert!(!rep.is_doubly_stochastic());

        let over = RatMatrix::from_ints(&[&[1, 1], &[0, 0]]);
        let rep = is_doubly_substochastic(&over).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.row_slack[0], int(-1));

        let neg = RatMatrix::from_ints(&[&[-1, 0], &[0, 0]]);
        assert!(!is_doubly_substochastic(&neg).unwrap().nonneg);

        assert!(is_doubly_substochastic(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn doubly_stochastic_examples() {
        assert!(is_doubly_stochastic(&RatMatrix::identity(3)).unwrap());
        assert!(is_doubly_stochastic(&RatMatrix::constant(2, 2, frac(1, 2))).unwrap());
        assert!(!is_doubly_stochastic(&RatMatrix::zeros(2, 2)).unwrap());
    }

    #[test]
    fn permutation_roundtrip_and_compose() {
        let p = PermMatrix::from_image(vec![1, 2, 0]).unwrap();
        let q = PermMatrix::from_image(vec![2, 0, 1]).unwrap();
        // q is p's inverse.
        assert_eq!(p.inverse(), q);
        assert_eq!(p.compose(&q), PermMatrix::identity(3));
        // Composition matches matrix product.
        let pm = p.to_matrix().mul(&q.to_matrix()).unwrap();
        assert_eq!(pm, p.compose(&q).to_matrix());
        assert!(PermMatrix::from_image(vec![0, 0, 1]).is_err());
        assert!(PermMatrix::from_image(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn apply_rows_cols_agree_with_products() {
        let p = PermMatrix::from_image(vec![2, 0, 1]).unwrap();
        let m = RatMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(p.apply_rows(&m).unwrap(), p.to_matrix().mul(&m).unwrap());
        assert_eq!(p.apply_cols(&m).unwrap(), m.mul(&p.to_matrix()).unwrap());
        let conj = p.to_matrix().mul(&m).unwrap().mul(&p.to_matrix().transpose()).unwrap();
        assert_eq!(p.conjugate(&m).unwrap(), conj);
    }

    #[test]
    fn all_permutations_lexicographic() {
        let perms = PermMatrix::all(3);
        assert_eq!(perms.len(), 6);
        let images: Vec<Vec<usize>> = perms.iter().map(|p| p.image().to_vec()).collect();
        assert_eq!(
            images,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
        assert_eq!(PermMatrix::all(1).len(), 1);
        assert_eq!(PermMatrix::all(4).len(), 24);
    }

    #[test]
    fn truncation_shape() {
        let p = RatMatrix::truncation(2, 4);
        assert_eq!(p, RatMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        let m = RatMatrix::from_ints(&[&[1, 2], &[3, 4], &[5, 6], &[7, 8]]);
        // Left-multiplying by the truncation keeps the first rows.
        assert_eq!(p.mul(&m).unwrap(), m.first_rows(2));
        // Right-multiplying by its transpose keeps the first columns.
        let mt = m.transpose();
        assert_eq!(mt.mul(&p.transpose()).unwrap(), mt.first_cols(2));
    }

    #[test]
    fn json_round_trip_mixed_entries() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), frac(1, 2)],
            vec![int(-3), frac(-2, 7)],
        ])
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[0,"1/2",-3,"-2/7"]}"#);
        let back: RatMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        // Entry count mismatch is rejected.
        assert!(serde_json::from_str::<RatMatrix>(r#"{"rows":2,"cols":2,"entries":[1]}"#)
            .is_err());
    }
}
