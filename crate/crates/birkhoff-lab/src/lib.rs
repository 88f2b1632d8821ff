//! Matrix models of NP search problems over the Birkhoff polytope.
//!
//! The crate compiles classical search problems (subgraph isomorphism and its
//! relatives, Hamiltonian cycles and paths, cliques, matchings, satisfiability)
//! into a single matrix inequality between an instance adjacency matrix and a
//! pattern matrix, where the unknown is a permutation matrix.  Linear and
//! convex relaxations of that inequality are then built and solved in exact
//! rational arithmetic, and every verdict is audited against brute-force
//! oracles.  The point of the exercise is empirical: measure precisely where
//! the relaxations are sound and where they break.
//!
//! Module map:
//!
//! * [`rat`], [`mat`] — exact rational scalars, dense matrices, permutations.
//! * [`bvn`] — Birkhoff–von Neumann extraction and decomposition.
//! * [`problems`] — problem instances, parsers, seeded generators.
//! * [`reductions`] — the reduction catalog producing instance/pattern pairs.
//! * [`incidence`] — arc-incidence factorizations of adjacency matrices.
//! * [`system`] — a small exact linear-constraint container.
//! * [`models`] — the relaxations and auxiliary systems built from pairs.
//! * [`solve`] — exact simplex, exact linear systems, norm maximization.
//! * [`oracle`] — brute-force deciders used as ground truth.
//! * [`harness`] — experiment runner, counterexample hunter, reporting.

pub mod bvn;
pub mod harness;
pub mod incidence;
pub mod mat;
pub mod models;
pub mod oracle;
pub mod problems;
pub mod rat;
pub mod reductions;
pub mod solve;
pub mod system;

pub use mat::{PermMatrix, RatMatrix};
pub use rat::Rat;
