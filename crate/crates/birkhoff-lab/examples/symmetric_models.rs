//! Conjugate-simplex models: averaging pattern conjugates under the host.
//!
//! For a padded pair, ask for simplex weights `lambda_P` with
//! `sum_P lambda_P (P S P^T) <= G`.  For a 0/1 pattern this linear program
//! is feasible exactly when a single conjugate fits — the averaging cannot
//! cheat — so LP feasibility equals the brute-force answer.  A cost
//! functional on the same weights prices tours.
//!
//! Run with: `cargo run --example symmetric_models`

use birkhoff_lab::models::{
    build_symmetric_lp, symmetric_01_compatible, ModelCaps, SymObjective,
};
use birkhoff_lab::oracle::{subgi_oracle, OracleCaps};
use birkhoff_lab::problems::{gen_random_symmetric_digraph, seeded_rng, DigraphInstance};
use birkhoff_lab::rat::{fmt_rat, frac, int};
use birkhoff_lab::reductions::{build_clique_pair, build_hc_pair, InstancePair, Provenance, Relation};
use birkhoff_lab::solve::{lp_solve, LpOutcome};
use birkhoff_lab::RatMatrix;
use num_traits::Zero;

fn main() {
    let caps = ModelCaps::default();
    let ocaps = OracleCaps::default();

    // Fixed yes and no cases first.
    let fits = InstancePair::new(
        RatMatrix::from_ints(&[&[0, 1], &[1, 0]]),
        RatMatrix::from_ints(&[&[0, 1], &[1, 0]]),
        Relation::Cover,
        Provenance::SubGi,
    )
    .unwrap();
    let lp = build_symmetric_lp(&fits, SymObjective::Feasibility, &caps).unwrap();
    assert!(lp_solve(&lp.system, None).unwrap().point().is_some());
    assert!(symmetric_01_compatible(&fits, &caps).unwrap().is_some());
    println!("swap pattern under swap host: LP feasible, conjugate scan finds a fit");

    let no_fit = InstancePair::new(
        RatMatrix::from_ints(&[&[1, 0], &[0, 1]]),
        RatMatrix::from_ints(&[&[0, 1], &[1, 0]]),
        Relation::Cover,
        Provenance::SubGi,
    )
    .unwrap();
    let lp = build_symmetric_lp(&no_fit, SymObjective::Feasibility, &caps).unwrap();
    assert!(lp_solve(&lp.system, None).unwrap().point().is_none());
    assert!(symmetric_01_compatible(&no_fit, &caps).unwrap().is_none());
    println!("swap pattern under identity host: LP infeasible, no conjugate fits");

    // The headline equivalence on a random corpus: simplex LP feasibility
    // coincides with the 0/1 conjugate scan, which coincides with the
    // brute-force oracle.
    let mut rng = seeded_rng(2718);
    let mut yes = 0;
    let mut no = 0;
    for trial in 0..20 {
        let n = 4;
        let g = gen_random_symmetric_digraph(&mut rng, n, &frac(1, 2));
        let pair = build_clique_pair(&g, 3).unwrap().pad();
        let truth = subgi_oracle(&pair, &ocaps).unwrap().yes;
        let lp = build_symmetric_lp(&pair, SymObjective::Feasibility, &caps).unwrap();
        let feasible = lp_solve(&lp.system, None).unwrap().point().is_some();
        let scan = symmetric_01_compatible(&pair, &caps).unwrap();
        assert_eq!(feasible, truth, "trial {trial}: LP must match the oracle");
        assert_eq!(scan.is_some(), truth, "trial {trial}: scan must match the oracle");
        if let Some(psi) = scan {
            assert!(pair.check_assignment(&psi), "returned assignment must check out");
            yes += 1;
        } else {
            no += 1;
        }
    }
    println!(
        "\nrandom corpus (20 clique instances): {yes} yes / {no} no, \
         LP = scan = oracle on every one"
    );
    assert!(yes > 0 && no > 0, "the corpus should exercise both answers");

    // Pricing conjugates: on the complete 3-host with the cycle pattern the
    // weights range over directed triangles.  Uniform costs price every
    // tour at 3; skewed costs steer the optimum onto the cheap triangle.
    let complete =
        DigraphInstance::from_arcs(3, &[(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]).unwrap();
    let pair = build_hc_pair(&complete).unwrap();
    let mut w = RatMatrix::constant(3, 3, int(4));
    w.set(0, 1, int(1));
    w.set(1, 2, int(1));
    w.set(2, 0, int(1));
    let lp = build_symmetric_lp(&pair, SymObjective::Atsp(&w), &caps).unwrap();
    let obj = lp.system.objective.clone().unwrap();
    match lp_solve(&lp.system, Some(obj)).unwrap() {
        LpOutcome::Optimal { objective, x, .. } => {
            println!("\ntour pricing on the complete 3-host: optimal cost = {}", fmt_rat(&objective));
            assert_eq!(objective, int(3), "the cheap triangle costs 1+1+1");
            let lam = lp.system.block_matrix(lp.system.block_id("lambda").unwrap(), &x);
            for (i, c) in lp.conjugates.iter().enumerate() {
                if !lam.at(0, i).is_zero() {
                    println!(
                        "  weight {} on conjugate of perm {:?}",
                        fmt_rat(lam.at(0, i)),
                        lp.perms[i].image()
                    );
                    let cost: birkhoff_lab::Rat = (0..3)
                        .flat_map(|a| (0..3).map(move |b| (a, b)))
                        .map(|(a, b)| w.at(a, b) * c.at(a, b))
                        .sum();
                    assert_eq!(cost, int(3), "optimal weight must sit on cost-3 tours");
                }
            }
        }
        other => panic!("expected an optimum, got {other:?}"),
    }
}
