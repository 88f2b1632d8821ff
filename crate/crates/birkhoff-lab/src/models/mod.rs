//! Constraint-system models of pattern containment.
//!
//! Every decision procedure in this crate reduces the question "does the
//! pattern embed into the host?" to some explicit system over the Birkhoff
//! polytope or its faces.  This module builds those systems:
//!
//! - [`adjacency`]: the relabeling relaxation `GX >= XS` over substochastic
//!   matrices, its transposed twin, the norm-target convex check, anchored
//!   and factored variants;
//! - [`cuts`]: the cutting-plane loop that alternates mass-maximizing LP
//!   solves with Birkhoff-von-Neumann extraction;
//! - [`symmetric`]: the factorial-size LP over all permutations at once,
//!   including the tour-cost objective;
//! - [`incidence`]: the arc-relabeling systems over incidence factors, their
//!   factorial-size symmetric LP, the two-sided necessary system, and the
//!   coupled vertex/arc convex check;
//! - [`asymmetric`]: the centered linear-span model whose compatibility is
//!   decided by exact rank arithmetic;
//! - [`depletion`]: the power-matrix arc-removal procedure for clique
//!   instances.
//!
//! Builders are pure: they construct systems and never solve them unless the
//! function name says so.  All arithmetic is exact.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::incidence::IncidenceError;
use crate::mat::MatError;
use crate::rat::Rat;
use crate::solve::SolveError;
use crate::system::ConstraintSystem;

pub mod adjacency;
pub mod asymmetric;
pub mod cuts;
pub mod depletion;
pub mod incidence;
pub mod symmetric;

pub use adjacency::{
    anchored_accepts, build_anchored_system, build_convex_check, build_factored_system,
    build_relaxation, convex_cover_decision, cover_witness_matrix, relaxation_feasible,
    set_functional, yes_factors, FactoredModel, Side,
};
pub use asymmetric::{build_asymmetric_model, AsymmetricDecision, AsymmetricModel, BasisGenerator};
pub use cuts::{cut_loop, CutIteration, CutLoopReport, CutVerdict};
pub use depletion::{
    clique_depletion, max_clique_via_depletion, DepletionReport, MaxCliqueReport,
};
pub use incidence::{
    build_incidence_convex, build_incidence_exact, build_incidence_symmetric,
    build_necessary_system, incidence_convex_decision, IncidenceConvexOutcome,
    IncidenceConvexSystem, IncidenceExactModel, IncidenceSymmetricLp, NecessarySystem,
};
pub use symmetric::{build_symmetric_lp, symmetric_01_compatible, SymObjective, SymmetricLp};

/// Errors from model construction.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("pair must be padded (m = n) for this model; got m = {m}, n = {n}")]
    Unpadded { m: usize, n: usize },
    #[error("instance exceeds model cap: {what} = {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Size caps on the factorial-size models.
#[derive(Debug, Clone, Copy)]
pub struct ModelCaps {
    /// Largest `n` for which the all-permutations LP is materialized.
    pub max_symmetric_n: usize,
    /// Cap on `n! * k!` for models over vertex-arc permutation pairs.
    pub max_pair_product: usize,
    /// Cap on `n! + k!` for the two-sided necessary system.
    pub max_pair_sum: usize,
}

impl Default for ModelCaps {
    fn default() -> Self {
        ModelCaps {
            max_symmetric_n: 6,
            max_pair_product: 20_000,
            max_pair_sum: 20_000,
        }
    }
}

fn factorial_capped(n: usize, cap: usize) -> usize {
    let mut f: usize = 1;
    for i in 2..=n {
        f = f.saturating_mul(i);
        if f > cap {
            return f;
        }
    }
    f
}

/// Result of the zero-right-side presolve.
#[derive(Debug, Clone)]
pub struct PresolveReport {
    /// The reduced system: fixed variables carry the bound pair `0 <= x <= 0`.
    pub system: ConstraintSystem,
    /// Variables proven zero.
    pub fixed: Vec<usize>,
    /// True when some equality row became unsatisfiable (nonzero right side
    /// with every supporting variable fixed to zero): the system is decided
    /// infeasible without any solve.
    pub decided_infeasible: bool,
}

/// Repeatedly fixes variables to zero using equality rows with zero right
/// side and nonnegative coefficients.
///
/// Sound only when every variable is bounded below by 0, which all systems
/// in this crate are; a system with a negative lower bound is returned
/// untouched.  Fixing is expressed through bounds, so feasibility is
/// preserved exactly: every fixed variable is zero in every solution of the
/// input system.
pub fn presolve_zero_rhs(sys: &ConstraintSystem) -> PresolveReport {
    let nvars = sys.num_vars();
    if (0..nvars).any(|v| sys.lower(v).is_negative()) {
        return PresolveReport {
            system: sys.clone(),
            fixed: Vec::new(),
            decided_infeasible: false,
        };
    }
    let mut fixed = vec![false; nvars];
    let mut decided_infeasible = false;
    loop {
        let mut progress = false;
        for row in &sys.eq {
            let live: Vec<&(usize, Rat)> =
                row.coeffs.iter().filter(|(v, _)| !fixed[*v]).collect();
            if row.rhs.is_zero() {
                if live.iter().all(|(_, c)| c.is_positive()) {
                    for (v, _) in live {
                        if !fixed[*v] {
                            fixed[*v] = true;
                            progress = true;
                        }
                    }
                }
            } else if live.is_empty() {
                decided_infeasible = true;
            }
        }
        if !progress {
            break;
        }
    }
    let mut reduced = sys.clone();
    let fixed_list: Vec<usize> = (0..nvars).filter(|&v| fixed[v]).collect();
    for &v in &fixed_list {
        reduced.set_upper(v, Rat::zero());
    }
    PresolveReport {
        system: reduced,
        fixed: fixed_list,
        decided_infeasible,
    }
}

/// True when every entry of `m` is 0 or 1.
pub(crate) fn is_zero_one(m: &crate::mat::RatMatrix) -> bool {
    use num_traits::{One, Zero};
    (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| {
            let e = m.at(r, c);
            e.is_zero() || e.is_one()
        })
    })
}
