//! A small container for exact linear constraint systems.
//!
//! Variables are organized in named matrix blocks (e.g. an `n x n` block `x`
//! for a relaxation unknown) but flattened to a single index space for the
//! solvers.  Rows are sparse; bounds are per-variable.  The container can
//! substitute a candidate point exactly, which is how every solver witness in
//! this crate is re-verified before being reported.

use crate::mat::RatMatrix;
use crate::rat::{fmt_rat, Rat};
use num_traits::Zero;
use serde_json::json;

/// Identifier of a variable block within one [`ConstraintSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockId(usize);

/// A named `rows x cols` block of variables.
#[derive(Clone, Debug)]
pub struct VarBlock {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    offset: usize,
}

/// One sparse linear row: `sum coeffs . x (=|<=) rhs`.
#[derive(Clone, Debug)]
pub struct LinRow {
    /// `(variable index, coefficient)`, sorted by index, no duplicates,
    /// no zero coefficients.
    pub coeffs: Vec<(usize, Rat)>,
    pub rhs: Rat,
}

impl LinRow {
    fn normalize(mut coeffs: Vec<(usize, Rat)>, rhs: Rat) -> Self {
        coeffs.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        LinRow { coeffs: merged, rhs }
    }

    /// Evaluates the left side at `x`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |acc, (i, c)| acc + c * &x[*i])
    }
}

/// Objective sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Exact linear constraint system with optional objective.
#[derive(Clone, Debug, Default)]
pub struct ConstraintSystem {
    blocks: Vec<VarBlock>,
    nvars: usize,
    pub eq: Vec<LinRow>,
    pub le: Vec<LinRow>,
    lower: Vec<Rat>,
    upper: Vec<Option<Rat>>,
    pub objective: Option<(Sense, Vec<Rat>)>,
}

/// Exact violation report from substituting a point into a system.
#[derive(Clone, Debug, Default)]
pub struct PointReport {
    /// Indices of violated equality rows.
    pub eq_violations: Vec<usize>,
    /// Indices of violated `<=` rows.
    pub le_violations: Vec<usize>,
    /// Variables outside their bounds.
    pub bound_violations: Vec<usize>,
}

impl PointReport {
    pub fn ok(&self) -> bool {
        self.eq_violations.is_empty()
            && self.le_violations.is_empty()
            && self.bound_violations.is_empty()
    }
}

impl ConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a `rows x cols` variable block, variables row-major, lower bound
    /// 0, no upper bound.
    pub fn add_block(&mut self, name: &str, rows: usize, cols: usize) -> BlockId {
        let id = BlockId(self.blocks.len());
        self.blocks.push(VarBlock {
            name: name.to_string(),
            rows,
            cols,
            offset: self.nvars,
        });
        self.nvars += rows * cols;
        self.lower.resize(self.nvars, Rat::zero());
        self.upper.resize(self.nvars, None);
        id
    }

    /// Flat index of block variable `(r, c)`.
    pub fn var(&self, block: BlockId, r: usize, c: usize) -> usize {
        let b = &self.blocks[block.0];
        assert!(r < b.rows && c < b.cols, "block index out of range");
        b.offset + r * b.cols + c
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[VarBlock] {
        &self.blocks
    }

    pub fn block_id(&self, name: &str) -> Option<BlockId> {
        self.blocks.iter().position(|b| b.name == name).map(BlockId)
    }

    pub fn add_eq(&mut self, coeffs: Vec<(usize, Rat)>, rhs: Rat) {
        self.eq.push(LinRow::normalize(coeffs, rhs));
    }

    pub fn add_le(&mut self, coeffs: Vec<(usize, Rat)>, rhs: Rat) {
        self.le.push(LinRow::normalize(coeffs, rhs));
    }

    pub fn lower(&self, var: usize) -> &Rat {
        &self.lower[var]
    }

    pub fn upper(&self, var: usize) -> Option<&Rat> {
        self.upper[var].as_ref()
    }

    pub fn set_lower(&mut self, var: usize, bound: Rat) {
        self.lower[var] = bound;
    }

    pub fn set_upper(&mut self, var: usize, bound: Rat) {
        self.upper[var] = Some(bound);
    }

    /// Sets a dense objective; `coeffs.len()` must equal the variable count.
    pub fn set_objective(&mut self, sense: Sense, coeffs: Vec<Rat>) {
        assert_eq!(coeffs.len(), self.nvars, "objective length mismatch");
        self.objective = Some((sense, coeffs));
    }

    /// The all-ones maximization objective (total mass of all variables),
    /// the default functional used by the norm heuristics and the cut loop.
    pub fn set_total_mass_objective(&mut self) {
        self.objective = Some((Sense::Maximize, vec![Rat::from_integer(1.into()); self.nvars]));
    }

    /// Extracts the values of `block` from a flat point as a matrix.
    pub fn block_matrix(&self, block: BlockId, x: &[Rat]) -> RatMatrix {
        let b = &self.blocks[block.0];
        RatMatrix::from_fn(b.rows, b.cols, |r, c| x[b.offset + r * b.cols + c].clone())
    }

    /// Substitutes `x` exactly into all rows and bounds.
    pub fn check_point(&self, x: &[Rat]) -> PointReport {
        assert_eq!(x.len(), self.nvars, "point length mismatch");
        let mut rep = PointReport::default();
        for (i, row) in self.eq.iter().enumerate() {
            if row.eval(x) != row.rhs {
                rep.eq_violations.push(i);
            }
        }
        for (i, row) in self.le.iter().enumerate() {
            if row.eval(x) > row.rhs {
                rep.le_violations.push(i);
            }
        }
        for v in 0..self.nvars {
            let below = x[v] < self.lower[v];
            let above = self.upper[v].as_ref().is_some_and(|u| &x[v] > u);
            if below || above {
                rep.bound_violations.push(v);
            }
        }
        rep
    }

    /// Objective value at `x`, if an objective is set.
    pub fn objective_value(&self, x: &[Rat]) -> Option<Rat> {
        self.objective.as_ref().map(|(_, c)| {
            c.iter().zip(x).fold(Rat::zero(), |acc, (ci, xi)| acc + ci * xi)
        })
    }

    /// JSON snapshot of the whole system for external inspection.
    pub fn to_json(&self) -> serde_json::Value {
        let row_json = |row: &LinRow| {
            json!({
                "coeffs": row.coeffs.iter()
                    .map(|(i, c)| json!([i, fmt_rat(c)]))
                    .collect::<Vec<_>>(),
                "rhs": fmt_rat(&row.rhs),
            })
        };
        json!({
            "vars": self.blocks.iter().map(|b| json!({
                "name": b.name, "rows": b.rows, "cols": b.cols,
            })).collect::<Vec<_>>(),
            "eq": self.eq.iter().map(row_json).collect::<Vec<_>>(),
            "le": self.le.iter().map(row_json).collect::<Vec<_>>(),
            "bounds": {
                "lower": self.lower.iter().map(fmt_rat).collect::<Vec<_>>(),
                "upper": self.upper.iter()
                    .map(|u| u.as_ref().map(fmt_rat))
                    .collect::<Vec<_>>(),
            },
            "objective": self.objective.as_ref().map(|(sense, c)| json!({
                "sense": match sense { Sense::Maximize => "max", Sense::Minimize => "min" },
                "coeffs": c.iter().map(fmt_rat).collect::<Vec<_>>(),
            })),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn rows_normalize_and_merge() {
        let mut sys = ConstraintSystem::new();
        let b = sys.add_block("x", 1, 3);
        let v0 = sys.var(b, 0, 0);
        let v2 = sys.var(b, 0, 2);
        sys.add_eq(vec![(v2, int(1)), (v0, int(2)), (v2, int(-1)), (v0, int(1))], int(5));
        assert_eq!(sys.eq[0].coeffs, vec![(v0, int(3))]);
        assert_eq!(sys.eq[0].rhs, int(5));
    }

    #[test]
    fn check_point_reports_exact_violations() {
        let mut sys = ConstraintSystem::new();
        let b = sys.add_block("x", 2, 1);
        let (v0, v1) = (sys.var(b, 0, 0), sys.var(b, 1, 0));
        sys.add_eq(vec![(v0, int(1)), (v1, int(1))], int(1));
        sys.add_le(vec![(v0, int(1))], frac(1, 2));
        sys.set_upper(v1, int(1));

        let good = vec![frac(1, 2), frac(1, 2)];
        assert!(sys.check_point(&good).ok());

        let bad = vec![int(1), int(1)];
        let rep = sys.check_point(&bad);
        assert_eq!(rep.eq_violations, vec![0]);
        assert_eq!(rep.le_violations, vec![0]);
        assert!(rep.bound_violations.is_empty());

        let neg = vec![frac(1, 2), frac(-1, 2)];
        let rep = sys.check_point(&neg);
        assert_eq!(rep.bound_violations, vec![v1]);
    }

    #[test]
    fn block_matrix_extraction() {
        let mut sys = ConstraintSystem::new();
        let a = sys.add_block("a", 1, 2);
        let b = sys.add_block("b", 2, 2);
        let x: Vec<Rat> = (0..6).map(int).collect();
        assert_eq!(sys.block_matrix(a, &x), RatMatrix::from_ints(&[&[0, 1]]));
        assert_eq!(sys.block_matrix(b, &x), RatMatrix::from_ints(&[&[2, 3], &[4, 5]]));
    }

    #[test]
    fn json_export_shape() {
        let mut sys = ConstraintSystem::new();
        let b = sys.add_block("x", 1, 2);
        sys.add_le(vec![(sys.var(b, 0, 0), frac(1, 2))], int(1));
        sys.set_total_mass_objective();
        let v = sys.to_json();
        assert_eq!(v["vars"][0]["name"], "x");
        assert_eq!(v["le"][0]["coeffs"][0][1], "1/2");
        assert_eq!(v["objective"]["sense"], "max");
    }
}
