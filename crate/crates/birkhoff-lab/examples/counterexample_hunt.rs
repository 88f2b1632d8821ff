//! Hunting sufficiency breaches: when does a relaxation say yes to a no?
//!
//! Necessity of the relaxations is a theorem; sufficiency is a question to
//! attack experimentally.  The hunt sweeps seeded random instances, keeps
//! every case where the claim model said yes while the fast oracle said no,
//! and re-verifies each survivor twice — an independent unpruned oracle
//! run, and a re-solve whose feasible point is checked by substitution.
//! Whatever survives is a genuine, reproducible counterexample to
//! sufficiency.
//!
//! Run with: `cargo run --example counterexample_hunt`

use birkhoff_lab::harness::{
    hunt_with_records, render_hunt_summary, verify_breach, CapsConfig, Claim, ExperimentConfig,
    ModelKind,
};
use birkhoff_lab::reductions::{InstancePair, Provenance, Relation};
use birkhoff_lab::RatMatrix;

fn main() {
    // Sweep: subgraph-containment instances on 2..=3 vertices, a dozen
    // seeds per cell, hunting breaches of "relaxation feasibility implies
    // yes".
    let mut cfg = ExperimentConfig::new(
        vec![Provenance::SubGi],
        (2, 3),
        vec![ModelKind::Relaxation],
    );
    cfg.seeds = 12;
    cfg.base_seed = 7;

    let (records, report) = hunt_with_records(&cfg, Claim::ConvexSufficiency).unwrap();
    println!("{}", render_hunt_summary(&report));
    println!("sweep produced {} records in total", records.len());

    assert!(report.breaches > 0, "this sweep is known to contain breaches");
    for finding in &report.findings {
        assert!(finding.slow_oracle_no, "unpruned oracle must confirm the no");
        assert!(finding.substitution_ok, "the feasible point must re-check exactly");
        // Each finding regenerates from its record fields alone.
        assert_eq!(finding.record.model, ModelKind::Relaxation);
    }

    // Determinism: the same configuration reproduces the same findings.
    let (_, again) = hunt_with_records(&cfg, Claim::ConvexSufficiency).unwrap();
    assert_eq!(again.breaches, report.breaches);
    let ids: Vec<&str> = report.findings.iter().map(|f| f.record.id.as_str()).collect();
    let ids_again: Vec<&str> = again.findings.iter().map(|f| f.record.id.as_str()).collect();
    assert_eq!(ids, ids_again, "hunts must be byte-for-byte reproducible");
    println!("re-running the hunt reproduces the same {} finding(s)", report.breaches);

    // The hand-built champion breach: swap host, one-loop pattern.  The
    // relaxation is feasible (half-mass point) while the answer is no.
    let pair = InstancePair::new(
        RatMatrix::from_ints(&[&[0, 1], &[1, 0]]),
        RatMatrix::from_ints(&[&[1, 0], &[0, 0]]),
        Relation::Cover,
        Provenance::SubGi,
    )
    .unwrap();
    let caps = CapsConfig::default();
    assert!(
        verify_breach(&pair, Claim::ConvexSufficiency, &caps).unwrap(),
        "the documented pair must verify as a breach end to end"
    );
    println!("\nhand-built swap-host pair verifies as a relaxation-sufficiency breach");

    // The same pair does not breach the coupled vertex/arc claim wholesale:
    // whether the stronger system also overshoots is a separate question
    // the verifier answers independently.
    let coupled = verify_breach(&pair, Claim::IncidenceConvexSufficiency, &caps).unwrap();
    println!(
        "coupled-system claim on the same pair: breach = {coupled} \
         (the coupled system refutes this instance, so no breach)"
    );
    assert!(!coupled);
}
