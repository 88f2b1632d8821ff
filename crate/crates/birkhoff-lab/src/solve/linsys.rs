//! Exact linear-system solving and incremental span tracking.
//!
//! [`linsys_solve`] runs Gauss–Jordan elimination over the rationals and, on
//! inconsistent systems, returns a certificate vector `y` with `y^T A = 0`
//! and `y^T b != 0` — a checkable proof of infeasibility.  [`Echelon`] is the
//! incremental counterpart used wherever the crate needs exact ranks, span
//! membership, or affine-independence tests.

use crate::mat::RatMatrix;
use crate::rat::Rat;
use num_traits::Zero;

/// Incremental row-echelon accumulator over exact rationals.
///
/// Rows are kept normalized (leading entry 1) and sorted by pivot column, so
/// reduction is a single deterministic sweep.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, returning the residual.
    pub fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        *vi -= &f * ri;
                    }
                }
            }
        }
        v
    }

    /// True when `v` lies in the current span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Inserts `v` if it enlarges the span.  Returns `true` on rank growth.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let red = self.reduce(v);
        let Some(p) = red.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = red[p].clone();
        let normalized: Vec<Rat> = red.into_iter().map(|x| x / &lead).collect();
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, normalized);
        self.pivots.insert(at, p);
        true
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug)]
pub enum LinsysOutcome {
    /// A particular solution, free variables set to zero.
    Solved { x: Vec<Rat> },
    /// Proof of inconsistency: `certificate^T A = 0` but `certificate^T b != 0`.
    Inconsistent { certificate: Vec<Rat> },
}

/// Solves `A x = b` exactly.  Panics only on shape mismatch between `a` and
/// `b`, which is a caller bug; every numeric outcome is an honest enum case.
pub fn linsys_solve(a: &RatMatrix, b: &[Rat]) -> LinsysOutcome {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "rhs length must equal row count");

    // Augmented rows [A | y | b] where the y block starts as the identity and
    // records the row operations, yielding certificates for free.
    let width = n + m + 1;
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|r| {
            let mut row: Vec<Rat> = Vec::with_capacity(width);
            row.extend(a.row(r).iter().cloned());
            row.extend((0..m).map(|j| {
                if j == r {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                }
            }));
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let lead = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &lead;
            }
        }
        for r in 0..m {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let (head, tail) = if r < rank {
                    let (a, b) = rows.split_at_mut(rank);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut b[0], &a[rank])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }

    // Any all-zero A-part row with nonzero rhs certifies inconsistency.
    for row in rows.iter().skip(rank) {
        if !row[width - 1].is_zero() {
            let certificate = row[n..n + m].to_vec();
            return LinsysOutcome::Inconsistent { certificate };
        }
    }

    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[r][width - 1].clone();
    }
    LinsysOutcome::Solved { x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn check_solution(a: &RatMatrix, b: &[Rat], x: &[Rat]) {
        for r in 0..a.rows() {
            let mut acc = Rat::zero();
            for c in 0..a.cols() {
                acc += a.at(r, c) * &x[c];
            }
            assert_eq!(acc, b[r], "row {r} mismatch");
        }
    }

    #[test]
    fn solves_unique_system() {
        let a = RatMatrix::from_ints(&[&[2, 1], &[1, -1]]);
        let b = vec![int(4), int(-1)];
        match linsys_solve(&a, &b) {
            LinsysOutcome::Solved { x } => {
                assert_eq!(x, vec![int(1), int(2)]);
                check_solution(&a, &b, &x);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn underdetermined_sets_free_vars_to_zero() {
        let a = RatMatrix::from_ints(&[&[1, 1, 1]]);
        let b = vec![frac(3, 2)];
        match linsys_solve(&a, &b) {
            LinsysOutcome::Solved { x } => {
                assert_eq!(x, vec![frac(3, 2), int(0), int(0)]);
                check_solution(&a, &b, &x);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_system_yields_checkable_certificate() {
        // x + y = 1 and 2x + 2y = 3 cannot both hold.
        let a = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        let b = vec![int(1), int(3)];
        match linsys_solve(&a, &b) {
            LinsysOutcome::Inconsistent { certificate } => {
                // y^T A = 0 and y^T b != 0, verified by substitution.
                for c in 0..a.cols() {
                    let mut acc = Rat::zero();
                    for r in 0..a.rows() {
                        acc += &certificate[r] * a.at(r, c);
                    }
                    assert!(acc.is_zero());
                }
                let dot: Rat =
                    certificate.iter().zip(&b).map(|(y, bi)| y * bi).fold(Rat::zero(), |s, v| s + v);
                assert!(!dot.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![int(1), int(1), int(0)]));
        assert!(e.insert(vec![int(0), int(1), int(1)]));
        // Dependent vector: (1,2,1) = (1,1,0) + (0,1,1).
        assert!(!e.insert(vec![int(1), int(2), int(1)]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[int(2), int(3), int(1)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
        assert!(e.insert(vec![int(0), int(0), int(1)]));
        assert_eq!(e.rank(), 3);
    }
}
