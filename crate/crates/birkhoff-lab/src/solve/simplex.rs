//! Exact two-phase simplex over the rationals.
//!
//! A dense-tableau implementation with Bland's least-index pivoting rule.
//! Bland's rule never cycles, so together with exact arithmetic the solver
//! terminates with a provably correct verdict on every input.  Dense tableaus
//! are quadratic in memory, which is a deliberate trade: systems in this
//! crate are desk-scale and auditability beats speed.
//!
//! Before returning, every witness is substituted back into the original
//! system; a witness that fails substitution is reported as an internal
//! error rather than silently trusted.

use crate::rat::Rat;
use crate::system::{ConstraintSystem, Sense};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Solver failure that is a bug or a misuse, not a verdict.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("objective has {got} coefficients for {expected} variables")]
    ObjectiveLength { expected: usize, got: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Deterministic work counters for a solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub phase1_pivots: u64,
    pub phase2_pivots: u64,
    pub rows: usize,
    pub cols: usize,
}

impl SolveStats {
    pub fn pivots(&self) -> u64 {
        self.phase1_pivots + self.phase2_pivots
    }
}

/// Outcome of an exact LP solve.
#[derive(Clone, Debug)]
pub enum LpOutcome {
    /// Optimal point for the requested objective.
    Optimal { x: Vec<Rat>, objective: Rat, stats: SolveStats },
    /// Feasible point (no objective was set).
    Feasible { x: Vec<Rat>, stats: SolveStats },
    Infeasible { stats: SolveStats },
    Unbounded { stats: SolveStats },
    /// Safety cap on pivots reached; with Bland's rule this indicates the cap
    /// was set too low, never a cycle.
    IterationLimit { stats: SolveStats },
}

impl LpOutcome {
    /// The witness point, when one exists.
    pub fn point(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Optimal { x, .. } | LpOutcome::Feasible { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.point().is_some()
    }

    pub fn stats(&self) -> SolveStats {
        match self {
            LpOutcome::Optimal { stats, .. }
            | LpOutcome::Feasible { stats, .. }
            | LpOutcome::Infeasible { stats }
            | LpOutcome::Unbounded { stats }
            | LpOutcome::IterationLimit { stats } => *stats,
        }
    }
}

/// Default pivot safety cap.  Bland's rule terminates without cycling, so
/// this is a guard against runaway problem sizes, not against loops.
pub const DEFAULT_PIVOT_CAP: u64 = 4_000_000;

/// Solves `system` exactly.  `objective_override` replaces the system's own
/// objective when given.  With no objective anywhere, decides feasibility.
pub fn lp_solve(
    system: &ConstraintSystem,
    objective_override: Option<(Sense, Vec<Rat>)>,
) -> Result<LpOutcome, SolveError> {
    let n = system.num_vars();
    let objective = match objective_override {
        Some((s, c)) => {
            if c.len() != n {
                return Err(SolveError::ObjectiveLength { expected: n, got: c.len() });
            }
            Some((s, c))
        }
        None => system.objective.clone(),
    };

    // Shift each variable by its lower bound so the working variables are
    // nonnegative; upper bounds become plain <= rows on the shifted space.
    let lb: Vec<Rat> = (0..n).map(|v| system.lower(v).clone()).collect();
    let mut rows_le: Vec<(Vec<(usize, Rat)>, Rat)> = Vec::new();
    let mut rows_eq: Vec<(Vec<(usize, Rat)>, Rat)> = Vec::new();
    for row in &system.eq {
        let shift: Rat =
            row.coeffs.iter().map(|(i, c)| c * &lb[*i]).fold(Rat::zero(), |a, v| a + v);
        rows_eq.push((row.coeffs.clone(), &row.rhs - shift));
    }
    for row in &system.le {
        let shift: Rat =
            row.coeffs.iter().map(|(i, c)| c * &lb[*i]).fold(Rat::zero(), |a, v| a + v);
        rows_le.push((row.coeffs.clone(), &row.rhs - shift));
    }
    for v in 0..n {
        if let Some(ub) = system.upper(v) {
            rows_le.push((vec![(v, Rat::one())], ub - &lb[v]));
        }
    }

    let m = rows_eq.len() + rows_le.len();
    let nslack = rows_le.len();

    // Tableau layout: columns [x' (n) | slacks (nslack) | artificials | rhs].
    // Build rows with b >= 0 by negating as needed; a row keeps its slack as
    // the initial basis variable only when the slack coefficient stays +1.
    let mut tableau: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut needs_artificial: Vec<usize> = Vec::new();

    let assemble = |coeffs: &[(usize, Rat)], rhs: &Rat, slack: Option<usize>| {
        let mut row = vec![Rat::zero(); n + nslack];
        for (i, c) in coeffs {
            row[*i] = c.clone();
        }
        if let Some(s) = slack {
            row[n + s] = Rat::one();
        }
        let mut rhs = rhs.clone();
        if rhs.is_negative() {
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -v.clone();
                }
            }
            rhs = -rhs;
            (row, rhs, false)
        } else {
            (row, rhs, slack.is_some())
        }
    };

    let mut staged: Vec<(Vec<Rat>, Rat, bool)> = Vec::with_capacity(m);
    for (coeffs, rhs) in &rows_eq {
        staged.push(assemble(coeffs, rhs, None));
    }
    for (s, (coeffs, rhs)) in rows_le.iter().enumerate() {
        staged.push(assemble(coeffs, rhs, Some(s)));
    }

    let mut nart = 0;
    for (r, (_, _, slack_basic)) in staged.iter().enumerate() {
        if !slack_basic {
            needs_artificial.push(r);
            nart += 1;
        }
    }
    let width = n + nslack + nart + 1;
    for (r, (mut row, rhs, slack_basic)) in staged.into_iter().enumerate() {
        row.resize(width - 1, Rat::zero());
        row.push(rhs);
        if slack_basic {
            // The slack index: this row is a <= row; recover its slack column.
            let s = row[n..n + nslack].iter().position(|v| v.is_one()).unwrap();
            basis.push(n + s);
        } else {
            let a = needs_artificial.iter().position(|&rr| rr == r).unwrap();
            row[n + nslack + a] = Rat::one();
            basis.push(n + nslack + a);
        }
        tableau.push(row);
    }

    let mut stats = SolveStats { rows: m, cols: width - 1, ..Default::default() };
    let art_range = (n + nslack)..(n + nslack + nart);

    // ---- Phase 1: minimize the sum of artificials. ----
    if nart > 0 {
        let mut cost = vec![Rat::zero(); width];
        for r in 0..m {
            if art_range.contains(&basis[r]) {
                for (j, v) in cost.iter_mut().enumerate() {
                    *v -= &tableau[r][j];
                }
            }
        }
        for a in art_range.clone() {
            cost[a] = Rat::zero();
        }
        let status = run_simplex(
            &mut tableau,
            &mut basis,
            &mut cost,
            width,
            n + nslack,
            &mut stats.phase1_pivots,
            DEFAULT_PIVOT_CAP,
        );
        match status {
            SimplexStatus::IterationLimit => {
                return Ok(LpOutcome::IterationLimit { stats });
            }
            SimplexStatus::Unbounded => {
                return Err(SolveError::Internal("phase 1 cannot be unbounded".into()));
            }
            SimplexStatus::Optimal => {}
        }
        // cost[width-1] holds -(phase-1 objective); nonzero means infeasible.
        if !cost[width - 1].is_zero() {
            return Ok(LpOutcome::Infeasible { stats });
        }
        // Pivot leftover degenerate artificials out of the basis.
        for r in 0..m {
            if art_range.contains(&basis[r]) {
                if let Some(j) = (0..n + nslack).find(|&j| !tableau[r][j].is_zero()) {
                    pivot(&mut tableau, &mut basis, None, r, j, width);
                } else {
                    // Redundant all-zero row; harmless to leave in place.
                }
            }
        }
    }

    // ---- Phase 2 (or plain feasibility). ----
    let recover_point = |tableau: &Vec<Vec<Rat>>, basis: &Vec<usize>| -> Vec<Rat> {
        let mut x = lb.clone();
        for (r, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] += &tableau[r][width - 1];
            }
        }
        x
    };

    let outcome = match &objective {
        None => {
            let x = recover_point(&tableau, &basis);
            LpOutcome::Feasible { x, stats }
        }
        Some((sense, c)) => {
            // Internal convention: minimize.  Maximize becomes minimize(-c).
            let c_min: Vec<Rat> = match sense {
                Sense::Minimize => c.clone(),
                Sense::Maximize => c.iter().map(|v| -v.clone()).collect(),
            };
            // Reduced costs r_j = c_j - c_B^T T_j over the current basis;
            // artificial columns are barred from re-entering.
            let mut cost = vec![Rat::zero(); width];
            for j in 0..n {
                cost[j] = c_min[j].clone();
            }
            for r in 0..m {
                let b = basis[r];
                if b < n && !c_min[b].is_zero() {
                    let f = c_min[b].clone();
                    for (j, v) in cost.iter_mut().enumerate() {
                        *v -= &f * &tableau[r][j];
                    }
                }
            }
            let status = run_simplex(
                &mut tableau,
                &mut basis,
                &mut cost,
                width,
                n + nslack,
                &mut stats.phase2_pivots,
                DEFAULT_PIVOT_CAP,
            );
            match status {
                SimplexStatus::IterationLimit => LpOutcome::IterationLimit { stats },
                SimplexStatus::Unbounded => LpOutcome::Unbounded { stats },
                SimplexStatus::Optimal => {
                    let x = recover_point(&tableau, &basis);
                    let objective = system
                        .objective_value(&x)
                        .unwrap_or_else(|| c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum());
                    LpOutcome::Optimal { x, objective, stats }
                }
            }
        }
    };

    // Witness substitution: never return an unverified point.
    if let Some(x) = outcome.point() {
        let report = system.check_point(x);
        if !report.ok() {
            return Err(SolveError::Internal(format!(
                "witness failed substitution: {report:?}"
            )));
        }
    }
    Ok(outcome)
}

enum SimplexStatus {
    Optimal,
    Unbounded,
    IterationLimit,
}

/// Bland's rule iteration on an explicit tableau + cost row.  Entering
/// columns are restricted to `0..max_enter`: artificial columns sit past
/// that bound and must never re-enter the basis (their reduced costs drift
/// under pivoting, and a re-entered artificial at a positive value would
/// silently violate the equality row it stood for).  Barring them is sound:
/// a feasible system reaches phase-1 objective zero with every artificial
/// at zero, and phase 2 never owns them at all.
fn run_simplex(
    tableau: &mut Vec<Vec<Rat>>,
    basis: &mut Vec<usize>,
    cost: &mut Vec<Rat>,
    width: usize,
    max_enter: usize,
    pivots: &mut u64,
    cap: u64,
) -> SimplexStatus {
    let m = tableau.len();
    loop {
        // Entering: least index with negative reduced cost.
        let Some(enter) = (0..max_enter).find(|&j| cost[j].is_negative()) else {
            return SimplexStatus::Optimal;
        };
        // Leaving: least ratio rhs/t over positive t; ties by least basis var.
        let mut best: Option<(Rat, usize)> = None;
        for r in 0..m {
            let t = &tableau[r][enter];
            if t.is_positive() {
                let ratio = &tableau[r][width - 1] / t;
                let better = match &best {
                    None => true,
                    Some((cur, row)) => {
                        ratio < *cur || (ratio == *cur && basis[r] < basis[*row])
                    }
                };
                if better {
                    best = Some((ratio, r));
                }
            }
        }
        let Some((_, leave)) = best else {
            return SimplexStatus::Unbounded;
        };
        if *pivots >= cap {
            return SimplexStatus::IterationLimit;
        }
        *pivots += 1;
        pivot(tableau, basis, Some(cost), leave, enter, width);
    }
}

/// Gauss-Jordan pivot at `(row, col)`, updating the cost row when present.
fn pivot(
    tableau: &mut [Vec<Rat>],
    basis: &mut [usize],
    cost: Option<&mut Vec<Rat>>,
    row: usize,
    col: usize,
    width: usize,
) {
    let lead = tableau[row][col].clone();
    debug_assert!(!lead.is_zero());
    for v in tableau[row].iter_mut() {
        if !v.is_zero() {
            *v = &*v / &lead;
        }
    }
    for r in 0..tableau.len() {
        if r != row && !tableau[r][col].is_zero() {
            let f = tableau[r][col].clone();
            let (src, dst) = if r < row {
                let (a, b) = tableau.split_at_mut(row);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = tableau.split_at_mut(r);
                (&a[row], &mut b[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= &f * s;
                }
            }
        }
    }
    if let Some(cost) = cost {
        if !cost[col].is_zero() {
            let f = cost[col].clone();
            for (d, s) in cost.iter_mut().zip(tableau[row].iter()) {
                if !s.is_zero() {
                    *d -= &f * s;
                }
            }
        }
    }
    let _ = width;
    basis[row] = col;
}
