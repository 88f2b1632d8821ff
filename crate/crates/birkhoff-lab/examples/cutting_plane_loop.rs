//! The cutting-plane loop: mass maximization plus permutation extraction.
//!
//! Maximize total mass over the substochastic relaxation.  A witness
//! permutation carries mass `n`, so an optimum below `n` is a sound no.
//! At full mass the optimizer is doubly stochastic, and a decomposition
//! step pulls a permutation out of its support; either it witnesses the
//! instance or a cut removes its face and the loop re-solves.  Three runs
//! below hit all three exits: immediate yes, immediate no, and a no that
//! needs actual cuts.
//!
//! Run with: `cargo run --example cutting_plane_loop`

use birkhoff_lab::models::{cut_loop, CutVerdict};
use birkhoff_lab::oracle::{subgi_oracle, OracleCaps};
use birkhoff_lab::problems::DigraphInstance;
use birkhoff_lab::rat::{fmt_rat, int};
use birkhoff_lab::reductions::{build_clique_pair, InstancePair, Provenance, Relation};
use birkhoff_lab::RatMatrix;

fn trace(label: &str, pair: &InstancePair, max_iters: u32) -> CutVerdict {
    let report = cut_loop(pair, max_iters).unwrap();
    println!("{label}:");
    for (round, it) in report.iterations.iter().enumerate() {
        let mass = it.mass.as_ref().map_or("-".to_string(), fmt_rat);
        let extracted = it
            .extracted
            .as_ref()
            .map_or("-".to_string(), |p| format!("{:?}", p.image()));
        println!(
            "  round {round}: mass = {mass:<4} extracted = {extracted:<12} witnessed = {}",
            it.witnessed
        );
    }
    println!("  verdict: {:?} ({} pivots)\n", report.verdict, report.pivots);
    report.verdict
}

fn main() {
    let caps = OracleCaps::default();

    // A complete host: any injection of the triangle roles works, so the
    // first extracted permutation is already a witness.
    let arcs: Vec<(usize, usize)> = (1..=4)
        .flat_map(|u| (1..=4).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let complete = DigraphInstance::from_arcs(4, &arcs).unwrap();
    let pair = build_clique_pair(&complete, 3).unwrap().pad();
    assert!(subgi_oracle(&pair, &caps).unwrap().yes);
    match trace("complete host, triangle pattern", &pair, 8) {
        CutVerdict::Yes(psi) => assert!(pair.check_assignment(&psi)),
        other => panic!("expected yes, got {other:?}"),
    }

    // An arcless host: the optimum mass cannot reach n, so the loop stops
    // with a no before any cut is needed.
    let empty = DigraphInstance::from_arcs(4, &[]).unwrap();
    let pair = build_clique_pair(&empty, 3).unwrap().pad();
    assert!(!subgi_oracle(&pair, &caps).unwrap().yes);
    let verdict = trace("arcless host, triangle pattern", &pair, 8);
    assert_eq!(verdict, CutVerdict::No);

    // The fractional trap: swap host against a one-loop pattern.  The
    // relaxation reaches full mass on fractional points, so the loop must
    // actually cut its extractions away before the mass drops below n.
    let g = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let s = RatMatrix::from_ints(&[&[1, 0], &[0, 0]]);
    let pair = InstancePair::new(g, s, Relation::Cover, Provenance::SubGi).unwrap();
    assert!(!subgi_oracle(&pair, &caps).unwrap().yes);
    let report = cut_loop(&pair, 8).unwrap();
    trace("swap host, one-loop pattern", &pair, 8);
    assert_eq!(report.verdict, CutVerdict::No);
    assert_eq!(
        report.iterations[0].mass,
        Some(int(2)),
        "round zero reaches full mass on a fractional point"
    );
    assert!(
        report.iterations.len() > 1,
        "this no needs cuts: mass alone cannot refute it"
    );

    println!("all three exits observed: witness, mass shortfall, and cut-forced no");
}
