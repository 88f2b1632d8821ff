//! Exact solvers: simplex over the rationals, linear systems with
//! inconsistency certificates, and norm maximization over relaxation sets.
//!
//! Everything here is deterministic.  The simplex uses Bland's least-index
//! rule, the eliminations pick the first usable pivot, and no randomness or
//! floating point is involved, so a given system always yields the same
//! outcome bit for bit.

mod linsys;
pub mod norm;
mod simplex;

pub use linsys::{linsys_solve, Echelon, LinsysOutcome};
pub use norm::{norm_max_decide, ExactSearch, NormDecision, NormVerdict, NormWitness};
pub use simplex::{lp_solve, LpOutcome, SolveError, SolveStats};
