//! The smallest instance where the linear relaxation overshoots.
//!
//! Host: two vertices that point at each other (a swap).  Pattern: two
//! roles that each need a self-loop.  No embedding exists — the host has
//! no loops — yet the linear relaxation stays feasible, because the
//! half-mass point spreads each role across both vertices.  The convex
//! norm-maximization decision then closes the gap exactly.
//!
//! Run with: `cargo run --example swap_host_walkthrough`

use birkhoff_lab::models::{
    anchored_accepts, build_relaxation, convex_cover_decision, Side,
};
use birkhoff_lab::oracle::{subgi_oracle, OracleCaps};
use birkhoff_lab::problems::DigraphInstance;
use birkhoff_lab::rat::{fmt_rat, frac, int};
use birkhoff_lab::reductions::build_subgi_pair;
use birkhoff_lab::solve::norm::NormVerdict;
use birkhoff_lab::solve::lp_solve;
use birkhoff_lab::PermMatrix;

fn main() {
    // Host 1 <-> 2, no loops.
    let host = DigraphInstance::from_arcs(2, &[(1, 2), (2, 1)]).unwrap();
    // Pattern: both roles carry a self-loop.
    let mut pattern = DigraphInstance::new(2);
    pattern.add_arc(1, 1, 1).unwrap();
    pattern.add_arc(2, 2, 1).unwrap();
    let pair = build_subgi_pair(&host, &pattern).unwrap();

    println!("host adjacency G:\n{}", pair.g);
    println!("pattern matrix S:\n{}", pair.s);

    // Ground truth first: brute force over all role assignments.
    let oracle = subgi_oracle(&pair, &OracleCaps::default()).unwrap();
    println!("oracle: yes = {} ({} nodes searched)", oracle.yes, oracle.nodes);
    assert!(!oracle.yes, "the host has no loops, so no role can be placed");

    // The linear relaxation misses this: it is feasible.  A bare
    // feasibility solve settles for the empty assignment X = 0 (cover rows
    // compare against zero mass), but the relaxation also contains a point
    // with full mass: splitting every role half-and-half across the two
    // vertices satisfies G X >= X S even though no 0/1 point does.
    let sys = build_relaxation(&pair, Side::Left).unwrap();
    let out = lp_solve(&sys, None).unwrap();
    assert!(out.point().is_some(), "relaxation is feasible despite the no answer");
    let x = sys.block_id("x").unwrap();
    let mut half = vec![int(0); sys.num_vars()];
    for v in 0..2 {
        for i in 0..2 {
            half[sys.var(x, v, i)] = frac(1, 2);
        }
    }
    assert!(sys.check_point(&half).ok(), "the half-mass point satisfies every row");
    let xm = sys.block_matrix(x, &half);
    println!("\nfractional point satisfying the relaxation (no integral point exists):\n{xm}");

    // No single permutation survives being anchored into the system.
    for r in PermMatrix::all(2) {
        assert!(!anchored_accepts(&pair, &r).unwrap());
    }
    println!("anchoring either permutation makes the system infeasible");

    // The convex decision closes the gap: a permutation has squared norm 2,
    // and maximizing the squared norm over the feasible region stays below.
    let decision = convex_cover_decision(&pair, 12).unwrap();
    println!(
        "\nnorm maximization: best squared norm found = {}, target = 2",
        fmt_rat(&decision.heuristic_lower_sq)
    );
    println!(
        "exact search verdict: {:?} after {} lp rounds, {} nodes",
        decision.verdict, decision.lp_rounds, decision.nodes
    );
    assert_eq!(decision.verdict, NormVerdict::BelowTarget);
    // The half-mass point attains the true optimum: 4 entries of (1/2)^2.
    assert_eq!(decision.heuristic_lower_sq, int(1));

    println!("\nconclusion: relaxation feasible, instance false — the gap is real,");
    println!("and the norm-target decision detects it exactly.");
}
