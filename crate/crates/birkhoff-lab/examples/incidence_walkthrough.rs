//! Arc-incidence factorizations and the equation systems built on them.
//!
//! Every adjacency matrix splits as `G = O I^T` with `O` the outgoing and
//! `I` the incoming vertex-arc incidence matrix.  An embedding then has to
//! relabel arcs consistently with how it relabels vertices, which yields a
//! coupled system over a vertex permutation and an arc permutation.  This
//! walkthrough runs the whole chain on the swap host against a one-loop
//! pattern, a no instance whose refutation needs the coupling.
//!
//! Run with: `cargo run --example incidence_walkthrough`

use birkhoff_lab::incidence::incidence_decompose;
use birkhoff_lab::models::{
    build_incidence_exact, build_incidence_symmetric, build_necessary_system, ModelCaps,
};
use birkhoff_lab::oracle::{subgi_oracle, OracleCaps};
use birkhoff_lab::problems::DigraphInstance;
use birkhoff_lab::reductions::build_subgi_pair;
use birkhoff_lab::solve::{lp_solve, LpOutcome};
use birkhoff_lab::{PermMatrix, RatMatrix};

fn main() {
    // Host 1 <-> 2 (two arcs); pattern: a single role with a self-loop.
    let host = DigraphInstance::from_arcs(2, &[(1, 2), (2, 1)]).unwrap();
    let mut pattern = DigraphInstance::new(1);
    pattern.add_arc(1, 1, 1).unwrap();
    let pair = build_subgi_pair(&host, &pattern).unwrap();

    let oracle = subgi_oracle(&pair, &OracleCaps::default()).unwrap();
    assert!(!oracle.yes, "a loop cannot embed into a loop-free host");

    // Factor the host adjacency into incidence matrices and verify G = O I^T.
    let g_inc = incidence_decompose(&pair.g).unwrap();
    println!("host out-incidence O:\n{}", g_inc.o);
    println!("host in-incidence I:\n{}", g_inc.i);
    assert_eq!(g_inc.reconstruct(), pair.g);
    assert_eq!(g_inc.o, RatMatrix::identity(2), "arc j leaves vertex j here");
    let swap = PermMatrix::from_image(vec![1, 0]).unwrap().to_matrix();
    assert_eq!(g_inc.i, swap, "arc j enters the other vertex");

    // The exact coupled equations over (vertex perm, arc perm).
    let model = build_incidence_exact(&pair).unwrap();
    println!(
        "coupled equations over {} vertices and {} host arcs vs {} pattern arc(s)",
        model.n,
        model.g_inc.arcs(),
        model.s_inc.arcs()
    );
    // Each candidate pair of permutations satisfies the outgoing equation,
    // the incoming equation, both, or neither; here none satisfies both.
    for psi in PermMatrix::all(2) {
        for zeta in PermMatrix::all(2) {
            let (out_ok, in_ok) = model.check_equations(&psi, &zeta);
            println!(
                "  psi image {:?}, zeta image {:?}: outgoing {}, incoming {}",
                psi.image(),
                zeta.image(),
                out_ok,
                in_ok
            );
            assert!(!(out_ok && in_ok));
        }
    }
    assert!(model.exhaustive_solutions().is_empty());

    // Averaging over permutation weights keeps the refutation: the
    // symmetrized system over the coupled equations is infeasible.
    let lp = build_incidence_symmetric(&model, &ModelCaps::default()).unwrap();
    let out = lp_solve(&lp.system, None).unwrap();
    assert!(matches!(out, LpOutcome::Infeasible { .. }));
    println!("\nsymmetrized coupled system: infeasible (refutes the instance)");

    // A weaker necessary system that decouples the two sides stays feasible:
    // it is a one-way filter and cannot refute this instance.
    let necessary = build_necessary_system(&model, &ModelCaps::default()).unwrap();
    let out = lp_solve(&necessary.system, None).unwrap();
    assert!(matches!(out, LpOutcome::Feasible { .. }));
    println!("decoupled necessary system: feasible (filter passes, proves nothing)");

    println!("\nconclusion: the coupling between vertex and arc relabelings is");
    println!("what refutes this instance; dropping it loses the refutation.");
}
