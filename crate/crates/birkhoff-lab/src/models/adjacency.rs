//! The relabeling relaxation over substochastic matrices and its variants.
//!
//! For a padded pair with host matrix `G` and pattern matrix `S` (both
//! `n x n`), a permutation `X` with `X[v][i] = 1` exactly when role `i` is
//! played by vertex `v` witnesses containment precisely when `GX >= XS`
//! (covering) or `GX = XS` (equality).  Relaxing `X` to the substochastic
//! polytope gives a polynomial-size linear system; this module builds that
//! system, the transposed variant `X^T G >= S X^T`, the norm-target decision
//! check, the anchored system that pins `X` to a candidate permutation, and
//! the factored sufficient test.

use num_traits::{Signed, Zero};

use super::{is_zero_one, ModelError};
use crate::mat::{PermMatrix, RatMatrix};
use crate::rat::{int, Rat};
use crate::reductions::{InstancePair, Relation};
use crate::solve::norm::{norm_max_decide, ExactSearch, NormDecision};
use crate::solve::lp_solve;
use crate::system::{ConstraintSystem, Sense};

/// Which side of the relabeling identity the unknown multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `G X {>=,=} X S`.
    Left,
    /// `X^T G {>=,=} S X^T`.
    Right,
}

fn require_padded(pair: &InstancePair) -> Result<(), ModelError> {
    if !pair.is_padded() {
        return Err(ModelError::Unpadded {
            m: pair.m,
            n: pair.n(),
        });
    }
    Ok(())
}

/// Builds the substochastic relaxation of the relabeling system.
///
/// Variables: one `n x n` block named `x`, each entry in `[0, 1]` via the
/// row/column sum constraints and the default nonnegative lower bound.  The
/// relation rows compare `(GX)` with `(XS)` entrywise (or the transposed
/// pair), as inequalities for covering pairs and equalities for
/// isomorphism-style pairs.
pub fn build_relaxation(pair: &InstancePair, side: Side) -> Result<ConstraintSystem, ModelError> {
    require_padded(pair)?;
    let n = pair.n();
    let g = &pair.g;
    let s = &pair.s;
    let mut sys = ConstraintSystem::new();
    let x = sys.add_block("x", n, n);
    for v in 0..n {
        let row: Vec<(usize, Rat)> = (0..n).map(|c| (sys.var(x, v, c), int(1))).collect();
        sys.add_le(row, int(1));
    }
    for c in 0..n {
        let col: Vec<(usize, Rat)> = (0..n).map(|v| (sys.var(x, v, c), int(1))).collect();
        sys.add_le(col, int(1));
    }
    for a in 0..n {
        for b in 0..n {
            // Left: (GX)[a][b] - (XS)[a][b]; Right: (X^T G)[a][b] - (S X^T)[a][b].
            let mut coeffs: Vec<(usize, Rat)> = Vec::with_capacity(2 * n);
            match side {
                Side::Left => {
                    for w in 0..n {
                        coeffs.push((sys.var(x, w, b), g.at(a, w).clone()));
                        coeffs.push((sys.var(x, a, w), -s.at(w, b).clone()));
                    }
                }
                Side::Right => {
                    for w in 0..n {
                        coeffs.push((sys.var(x, w, a), g.at(w, b).clone()));
                        coeffs.push((sys.var(x, b, w), -s.at(a, w).clone()));
                    }
                }
            }
            match pair.relation {
                // difference >= 0, expressed as (negated) <= 0.
                Relation::Cover => {
                    let neg: Vec<(usize, Rat)> = coeffs.into_iter().map(|(v, c)| (v, -c)).collect();
                    sys.add_le(neg, int(0));
                }
                Relation::Equal => sys.add_eq(coeffs, int(0)),
            }
        }
    }
    Ok(sys)
}

/// Installs the linear objective `sum l_ij x_ij -> max` on a relaxation
/// (any linear functional makes the system a linear program; the default
/// elsewhere is total mass).
pub fn set_functional(sys: &mut ConstraintSystem, l: &RatMatrix) -> Result<(), ModelError> {
    let x = sys
        .block_id("x")
        .ok_or_else(|| ModelError::Shape("system has no x block".into()))?;
    let mut coeffs = vec![Rat::zero(); sys.num_vars()];
    let (rows, cols) = {
        let b = sys
            .blocks()
            .iter()
            .find(|b| b.name == "x")
            .expect("block_id succeeded");
        (b.rows, b.cols)
    };
    if l.rows() != rows || l.cols() != cols {
        return Err(ModelError::Shape(format!(
            "functional is {}x{}, x block is {}x{}",
            l.rows(),
            l.cols(),
            rows,
            cols
        )));
    }
    for r in 0..rows {
        for c in 0..cols {
            coeffs[sys.var(x, r, c)] = l.at(r, c).clone();
        }
    }
    sys.set_objective(Sense::Maximize, coeffs);
    Ok(())
}

/// The matrix form of a vertex witness: `X[v][i] = 1` iff `psi(i) = v`.
pub fn cover_witness_matrix(psi: &PermMatrix) -> RatMatrix {
    psi.inverse().to_matrix()
}

/// Builds the relaxation together with its norm decision target `n`.
///
/// The maximum of `||X||^2` over the relaxation is `n` exactly when a
/// permutation matrix satisfies the system, i.e. when the instance answer
/// is yes.
pub fn build_convex_check(pair: &InstancePair) -> Result<(ConstraintSystem, Rat), ModelError> {
    let sys = build_relaxation(pair, Side::Left)?;
    Ok((sys, int(pair.n() as i64)))
}

/// Decides the instance through the norm-target check, with exact
/// backtracking confirmation of both verdicts.
pub fn convex_cover_decision(
    pair: &InstancePair,
    max_lp_rounds: u32,
) -> Result<NormDecision, ModelError> {
    let (sys, target) = build_convex_check(pair)?;
    Ok(norm_max_decide(
        &sys,
        &target,
        ExactSearch::Cover { pair },
        max_lp_rounds,
    )?)
}

/// Builds the relaxation plus the entrywise anchor `X >= R`.
///
/// Together with the substochastic rows this forces `X = R`, so feasibility
/// of the anchored system is equivalent to `R` itself satisfying the
/// relaxation — a per-permutation membership test.
pub fn build_anchored_system(
    pair: &InstancePair,
    r: &PermMatrix,
) -> Result<ConstraintSystem, ModelError> {
    if r.n() != pair.n() {
        return Err(ModelError::Shape(format!(
            "anchor is {}x{0}, system is {1}x{1}",
            r.n(),
            pair.n()
        )));
    }
    let mut sys = build_relaxation(pair, Side::Left)?;
    let x = sys.block_id("x").expect("relaxation has x block");
    for v in 0..r.n() {
        let var = sys.var(x, v, r.col_of_row(v));
        sys.set_lower(var, int(1));
    }
    Ok(sys)
}

/// Whether the anchored system for candidate `R` is feasible, i.e. whether
/// `X = R` (as the unknown of `G X >= X S`) certifies the instance.
pub fn anchored_accepts(pair: &InstancePair, r: &PermMatrix) -> Result<bool, ModelError> {
    let sys = build_anchored_system(pair, r)?;
    Ok(lp_solve(&sys, None)?.point().is_some())
}

/// The factored sufficient model.
#[derive(Debug)]
pub struct FactoredModel {
    pub system: ConstraintSystem,
    /// True when the factor hypothesis runs in the direction that makes
    /// feasibility imply a yes answer: `S1 S2 >= S` entrywise with a 0/1
    /// pattern.  When false, feasibility proves nothing and callers must not
    /// report it as a verdict.
    pub sound: bool,
}

/// Builds the rectangular factored system `G1 >= X S1`, `G2 >= S2 X^T` over
/// substochastic `X`.
///
/// Checked preconditions: all four factors nonnegative, `G >= G1*G2` and
/// `S >= S1*S2` entrywise.  The yes-implication of a feasible point
/// additionally needs `S1*S2 >= S` (so that a dominated permutation summand
/// of `X` dominates the pattern itself); the builder records that direction
/// in [`FactoredModel::sound`] instead of assuming it.
pub fn build_factored_system(
    pair: &InstancePair,
    g1: &RatMatrix,
    g2: &RatMatrix,
    s1: &RatMatrix,
    s2: &RatMatrix,
) -> Result<FactoredModel, ModelError> {
    require_padded(pair)?;
    let n = pair.n();
    let c = g1.cols();
    if g1.rows() != n || s1.rows() != n || s1.cols() != c || g2.rows() != c || g2.cols() != n
        || s2.rows() != c || s2.cols() != n
    {
        return Err(ModelError::Shape(format!(
            "factors must be n x c and c x n; got G1 {}x{}, G2 {}x{}, S1 {}x{}, S2 {}x{}",
            g1.rows(),
            g1.cols(),
            g2.rows(),
            g2.cols(),
            s1.rows(),
            s1.cols(),
            s2.rows(),
            s2.cols()
        )));
    }
    for (name, f) in [("G1", g1), ("G2", g2), ("S1", s1), ("S2", s2)] {
        if (0..f.rows()).any(|r| (0..f.cols()).any(|cc| f.at(r, cc).is_negative())) {
            return Err(ModelError::Hypothesis(format!("{name} has a negative entry")));
        }
    }
    let gg = g1.mul(g2)?;
    let ss = s1.mul(s2)?;
    let dominates = |big: &RatMatrix, small: &RatMatrix| {
        (0..big.rows()).all(|r| (0..big.cols()).all(|cc| big.at(r, cc) >= small.at(r, cc)))
    };
    if !dominates(&pair.g, &gg) {
        return Err(ModelError::Hypothesis("G >= G1*G2 fails".into()));
    }
    if !dominates(&pair.s, &ss) {
        return Err(ModelError::Hypothesis("S >= S1*S2 fails".into()));
    }
    let sound = dominates(&ss, &pair.s) && is_zero_one(&pair.s);

    let mut sys = ConstraintSystem::new();
    let x = sys.add_block("x", n, n);
    for v in 0..n {
        let row: Vec<(usize, Rat)> = (0..n).map(|cc| (sys.var(x, v, cc), int(1))).collect();
        sys.add_le(row, int(1));
    }
    for cc in 0..n {
        let col: Vec<(usize, Rat)> = (0..n).map(|v| (sys.var(x, v, cc), int(1))).collect();
        sys.add_le(col, int(1));
    }
    // (X S1)[v][j] <= G1[v][j]
    for v in 0..n {
        for j in 0..c {
            let coeffs: Vec<(usize, Rat)> =
                (0..n).map(|w| (sys.var(x, v, w), s1.at(w, j).clone())).collect();
            sys.add_le(coeffs, g1.at(v, j).clone());
        }
    }
    // (S2 X^T)[j][v] <= G2[j][v]
    for j in 0..c {
        for v in 0..n {
            let coeffs: Vec<(usize, Rat)> =
                (0..n).map(|w| (sys.var(x, v, w), s2.at(j, w).clone())).collect();
            sys.add_le(coeffs, g2.at(j, v).clone());
        }
    }
    Ok(FactoredModel { system: sys, sound })
}

/// Canonical sound factors built from a known witness: with `X0` the witness
/// matrix and `S = O I^T` the incidence split of the pattern,
/// `G1 = X0 O`, `S1 = O`, `G2 = I^T X0^T`, `S2 = I^T`.  Then `G1 G2 =
/// X0 S X0^T <= G` and `S1 S2 = S`, and `X = X0` satisfies the factored
/// system with equality.
pub fn yes_factors(
    pair: &InstancePair,
    psi: &PermMatrix,
) -> Result<(RatMatrix, RatMatrix, RatMatrix, RatMatrix), ModelError> {
    require_padded(pair)?;
    let inc = crate::incidence::incidence_decompose(&pair.s)?;
    let x0 = cover_witness_matrix(psi);
    let g1 = x0.mul(&inc.o)?;
    let g2 = inc.i.transpose().mul(&x0.transpose())?;
    Ok((g1, g2, inc.o, inc.i.transpose()))
}

/// Convenience feasibility check with outcome classification.
pub fn relaxation_feasible(sys: &ConstraintSystem) -> Result<bool, ModelError> {
    Ok(lp_solve(sys, None)?.point().is_some())
}
