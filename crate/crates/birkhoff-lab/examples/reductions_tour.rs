//! Every supported NP problem compiled into the same matrix question.
//!
//! One instance per family is reduced to an (instance matrix, pattern
//! matrix) pair, and the generic embedding oracle on the pair is checked
//! against the family's direct brute-force decider.  The pair is the whole
//! interface: everything downstream (relaxations, hunts, reports) only
//! ever sees matrices.
//!
//! Run with: `cargo run --example reductions_tour`

use birkhoff_lab::oracle::{
    clique_oracle, hc_oracle, hp_oracle, matching_oracle, perfect_matching_oracle, sat_oracle,
    subgi_oracle, OracleCaps,
};
use birkhoff_lab::problems::{CnfFormula, DigraphInstance};
use birkhoff_lab::reductions::{
    build_clique_pair, build_gi_pair, build_hc_pair, build_hp_pair, build_ksat_pair,
    build_matching_pair, build_perfect_matching_pair, build_sat_pair, build_subgi_pair,
    InstancePair,
};

fn describe(label: &str, pair: &InstancePair, direct_yes: bool, caps: &OracleCaps) {
    let verdict = subgi_oracle(pair, caps).unwrap();
    println!(
        "{label:<18} n={:<2} m={:<2} relation={:<5?} embedding-oracle={:<5} direct-oracle={}",
        pair.n(),
        pair.m,
        pair.relation,
        verdict.yes,
        direct_yes
    );
    assert_eq!(
        verdict.yes, direct_yes,
        "{label}: the reduction must preserve the answer"
    );
}

fn main() {
    let caps = OracleCaps { max_vertices: 48, ..OracleCaps::default() };

    // Subgraph embedding: a triangle inside a 4-cycle-with-chord host.
    let host =
        DigraphInstance::from_arcs(4, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 1), (2, 1)]).unwrap();
    let triangle = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
    let pair = build_subgi_pair(&host, &triangle).unwrap();
    describe("subgi", &pair, true, &caps);

    // Graph isomorphism: a 3-cycle against its relabeling, equality relation.
    let c3 = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
    let c3_relabeled = DigraphInstance::from_arcs(3, &[(2, 1), (1, 3), (3, 2)]).unwrap();
    let pair = build_gi_pair(&c3, &c3_relabeled).unwrap();
    describe("gi", &pair, true, &caps);

    // Clique: triangle plus a pendant vertex, asked for size 3.
    let g = DigraphInstance::from_arcs(
        4,
        &[(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1), (3, 4), (4, 3)],
    )
    .unwrap();
    let direct = clique_oracle(&g, 3, &caps).unwrap().is_some();
    let pair = build_clique_pair(&g, 3).unwrap();
    describe("clique", &pair, direct, &caps);

    // Hamiltonian cycle on a directed 4-cycle.
    let cycle = DigraphInstance::from_arcs(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
    let direct = hc_oracle(&cycle, &caps).unwrap().is_some();
    describe("hc", &build_hc_pair(&cycle).unwrap(), direct, &caps);

    // Hamiltonian path on a directed path (no cycle exists).
    let path = DigraphInstance::from_arcs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
    let direct = hp_oracle(&path, &caps).unwrap().is_some();
    describe("hp", &build_hp_pair(&path).unwrap(), direct, &caps);
    assert!(hc_oracle(&path, &caps).unwrap().is_none(), "the path has no tour");

    // Matchings on an undirected 4-path: two disjoint edges exist.
    let p4 = DigraphInstance::from_arcs(
        4,
        &[(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3)],
    )
    .unwrap();
    let direct = matching_oracle(&p4, 2, &caps).unwrap().is_some();
    describe("matching", &build_matching_pair(&p4, 2).unwrap(), direct, &caps);
    let direct = perfect_matching_oracle(&p4, &caps).unwrap().is_some();
    describe("perfect-matching", &build_perfect_matching_pair(&p4).unwrap(), direct, &caps);

    // Satisfiability: clause truth tables become blocks of the host matrix,
    // and a satisfying assignment becomes a compatible row selection.
    let sat2 = CnfFormula::from_codes(2, &[&[1, 2], &[-1, 2]]).unwrap();
    let direct = sat_oracle(&sat2, &caps).unwrap().is_some();
    describe("2sat", &build_ksat_pair(&sat2, 2).unwrap(), direct, &caps);

    let sat3 = CnfFormula::from_codes(3, &[&[1, 2, 3], &[-1, -2, 3]]).unwrap();
    let direct = sat_oracle(&sat3, &caps).unwrap().is_some();
    describe("3sat", &build_ksat_pair(&sat3, 3).unwrap(), direct, &caps);

    // Mixed clause widths, including a forced unit clause that kills x1.
    let mixed = CnfFormula::from_codes(2, &[&[-1], &[1, 2]]).unwrap();
    let direct = sat_oracle(&mixed, &caps).unwrap().is_some();
    describe("sat", &build_sat_pair(&mixed).unwrap(), direct, &caps);

    // An unsatisfiable formula must come out as a no pair.
    let unsat = CnfFormula::from_codes(1, &[&[1], &[-1]]).unwrap();
    assert!(sat_oracle(&unsat, &caps).unwrap().is_none());
    describe("sat (unsat)", &build_sat_pair(&unsat).unwrap(), false, &caps);

    // Padding embeds the pattern into a host-sized matrix; the answer and
    // the oracle verdict are unchanged.
    let padded = build_clique_pair(&g, 3).unwrap().pad();
    assert!(padded.is_padded());
    describe("clique (padded)", &padded, direct_clique(&g, &caps), &caps);

    println!("\nall reductions agree with their direct brute-force deciders");
}

fn direct_clique(g: &DigraphInstance, caps: &OracleCaps) -> bool {
    clique_oracle(g, 3, caps).unwrap().is_some()
}
