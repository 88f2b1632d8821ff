//! Per-permutation anchoring and the factored sufficient test.
//!
//! Anchoring pins the relaxation unknown to one candidate permutation:
//! entrywise lower bounds `X >= R` inside the substochastic rows force
//! `X = R`, so feasibility of the anchored system is a membership test for
//! that single candidate.  The factored model replaces the quadratic
//! comparison by two rectangular linear ones through factor matrices; when
//! the factor product dominates the pattern the test is a sufficient
//! certificate, and a witness always induces factors that pass it.
//!
//! Run with: `cargo run --example anchored_and_factored`

use birkhoff_lab::models::{
    anchored_accepts, build_anchored_system, build_factored_system, cover_witness_matrix,
    relaxation_feasible, yes_factors,
};
use birkhoff_lab::oracle::{subgi_oracle, OracleCaps};
use birkhoff_lab::problems::DigraphInstance;
use birkhoff_lab::reductions::{build_hc_pair, InstancePair, Provenance, Relation};
use birkhoff_lab::solve::lp_solve;
use birkhoff_lab::{PermMatrix, RatMatrix};

fn main() {
    let caps = OracleCaps::default();

    // A 4-vertex digraph with a Hamiltonian cycle plus one chord.
    let g = DigraphInstance::from_arcs(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
    let pair = build_hc_pair(&g).unwrap();
    let truth = subgi_oracle(&pair, &caps).unwrap();
    assert!(truth.yes);

    // Scan all candidates: anchoring accepts exactly the relabelings whose
    // inverse is a valid role assignment.
    let mut accepted = Vec::new();
    for r in PermMatrix::all(4) {
        if anchored_accepts(&pair, &r).unwrap() {
            assert!(
                pair.check_assignment(&r.inverse()),
                "an accepted anchor must decode to a real witness"
            );
            accepted.push(r);
        }
    }
    println!("anchoring scan over 4! = 24 candidates: {} accepted", accepted.len());
    assert!(!accepted.is_empty(), "a yes instance accepts at least one anchor");

    // The anchored solve returns the anchor itself — the lower bounds plus
    // substochastic rows leave no slack.
    let r = &accepted[0];
    let sys = build_anchored_system(&pair, r).unwrap();
    let out = lp_solve(&sys, None).unwrap();
    let x = sys.block_id("x").unwrap();
    let xm = sys.block_matrix(x, out.point().unwrap());
    assert_eq!(xm, r.to_matrix(), "anchored feasible point equals the anchor");
    println!("anchored solve reproduces the anchor exactly:\n{xm}");

    // On a no instance every anchor is rejected.
    let swap_pair = InstancePair::new(
        RatMatrix::from_ints(&[&[0, 1], &[1, 0]]),
        RatMatrix::from_ints(&[&[1, 0], &[0, 0]]),
        Relation::Cover,
        Provenance::SubGi,
    )
    .unwrap();
    assert!(!subgi_oracle(&swap_pair, &caps).unwrap().yes);
    for r in PermMatrix::all(2) {
        assert!(!anchored_accepts(&swap_pair, &r).unwrap());
    }
    println!("\nno instance: all 2! anchors rejected");

    // Factored certificate: the witness of the yes instance induces factor
    // matrices whose product dominates the pattern, and the resulting
    // rectangular system is feasible — a sound sufficiency certificate.
    let witness = truth.witness.expect("yes verdict carries a witness");
    let psi = PermMatrix::from_image(witness).unwrap();
    let (g1, g2, s1, s2) = yes_factors(&pair, &psi).unwrap();
    let model = build_factored_system(&pair, &g1, &g2, &s1, &s2).unwrap();
    assert!(model.sound, "witness factors dominate the pattern");
    assert!(relaxation_feasible(&model.system).unwrap());
    println!("witness-induced factors: sound = true, system feasible (certifies yes)");
    // The witness matrix itself satisfies the factored system.
    let x0 = cover_witness_matrix(&psi);
    let fx = model.system.block_id("x").unwrap();
    let mut point = vec![birkhoff_lab::rat::int(0); model.system.num_vars()];
    for v in 0..4 {
        for i in 0..4 {
            point[model.system.var(fx, v, i)] = x0.at(v, i).clone();
        }
    }
    assert!(model.system.check_point(&point).ok());
    println!("the witness matrix satisfies the factored system by substitution");

    // Direction matters: zero factors satisfy every stated hypothesis yet
    // certify nothing.  The builder flags them unsound rather than letting
    // feasibility masquerade as a verdict.
    let z = RatMatrix::zeros(2, 2);
    let degenerate = build_factored_system(&swap_pair, &z, &z, &z, &z).unwrap();
    assert!(!degenerate.sound);
    assert!(relaxation_feasible(&degenerate.system).unwrap());
    println!("\nzero factors: feasible but flagged unsound — no verdict may be drawn");
}
