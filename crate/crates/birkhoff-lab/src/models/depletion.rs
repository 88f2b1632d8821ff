//! Arc depletion for clique instances.
//!
//! In any clique of size `m`, every arc `(i, j)` of the clique lies on at
//! least `m - 2` directed 2-paths `i -> w -> j` with `w` in the clique, and
//! symmetrically for `(j, i)`.  So if the squared adjacency matrix counts
//! fewer than `m - 2` two-step walks in either direction across an arc,
//! that arc is in no `m`-clique and can be deleted.  Deleting arcs only
//! lowers walk counts, so the rule iterates to a fixpoint.  An emptied
//! graph certifies absence of an `m`-clique; survival of arcs certifies
//! nothing (the rule is a necessary filter, not a decision procedure).

use num_traits::Zero;

use super::ModelError;
use crate::mat::RatMatrix;
use crate::rat::{int, Rat};

/// Outcome of [`clique_depletion`].
#[derive(Clone, Debug)]
pub struct DepletionReport {
    /// The surviving graph.
    pub result: RatMatrix,
    /// Arcs removed in each round (0-based endpoints), in scan order.
    pub rounds: Vec<Vec<(usize, usize)>>,
    /// True when no off-diagonal arc survives.
    pub emptied: bool,
}

/// Iterates the two-step-walk filter for cliques of size `m` until a
/// fixpoint or `max_rounds`, whichever first.
pub fn clique_depletion(
    g: &RatMatrix,
    m: usize,
    max_rounds: usize,
) -> Result<DepletionReport, ModelError> {
    if !g.is_square() {
        return Err(ModelError::Shape(format!(
            "adjacency matrix must be square, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    if !g.is_nonneg_integer() {
        return Err(ModelError::Hypothesis("adjacency entries must be nonnegative integers".into()));
    }
    if m < 2 {
        return Err(ModelError::Hypothesis(format!(
            "clique size must be at least 2, got {m}"
        )));
    }
    let n = g.rows();
    let threshold = int(m as i64 - 2);
    let mut current = g.clone();
    let mut rounds = Vec::new();
    for _ in 0..max_rounds {
        let walks = current.mul(&current)?;
        let mut removed = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || current.at(i, j).is_zero() {
                    continue;
                }
                if walks.at(i, j) < &threshold || walks.at(j, i) < &threshold {
                    removed.push((i, j));
                }
            }
        }
        if removed.is_empty() {
            break;
        }
        for &(i, j) in &removed {
            current.set(i, j, Rat::zero());
        }
        rounds.push(removed);
    }
    let emptied =
        (0..n).all(|i| (0..n).all(|j| i == j || current.at(i, j).is_zero()));
    Ok(DepletionReport { result: current, rounds, emptied })
}

/// One row of [`MaxCliqueReport`].
#[derive(Clone, Debug)]
pub struct MaxCliqueRecord {
    pub m: usize,
    /// Whether depletion emptied the graph at this size.
    pub emptied: bool,
    /// Off-diagonal arcs surviving at this size.
    pub arcs_left: usize,
}

/// Result of the decreasing-size scan.
#[derive(Clone, Debug)]
pub struct MaxCliqueReport {
    pub records: Vec<MaxCliqueRecord>,
    /// Largest `m` at which arcs survived (an upper-bound candidate only:
    /// survival does not certify a clique of that size).
    pub survivor_m: Option<usize>,
    /// True when the input had no off-diagonal arcs at all.
    pub vacuous: bool,
}

/// Runs depletion for `m = start_m, start_m - 1, ..., 2` and records where
/// the graph first survives.  Emptying at size `m` proves no `m`-clique
/// exists (so the largest clique has size below `m`); the first surviving
/// `m` is only a candidate upper bound, not a certificate.
pub fn max_clique_via_depletion(
    g: &RatMatrix,
    start_m: usize,
    rounds_per_m: usize,
) -> Result<MaxCliqueReport, ModelError> {
    let n = g.rows();
    let vacuous = (0..n).all(|i| (0..g.cols()).all(|j| i == j || g.at(i, j).is_zero()));
    let mut records = Vec::new();
    let mut survivor_m = None;
    let mut m = start_m.max(2);
    loop {
        let report = clique_depletion(g, m, rounds_per_m)?;
        let arcs_left = (0..n)
            .map(|i| (0..n).filter(|&j| i != j && !report.result.at(i, j).is_zero()).count())
            .sum();
        records.push(MaxCliqueRecord { m, emptied: report.emptied, arcs_left });
        if !report.emptied && survivor_m.is_none() {
            survivor_m = Some(m);
        }
        if m == 2 {
            break;
        }
        m -= 1;
    }
    Ok(MaxCliqueReport { records, survivor_m, vacuous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{clique_oracle, OracleCaps};
    use crate::problems::{gen_random_symmetric_digraph, seeded_rng};
    use crate::rat::frac;

    fn sym_path3() -> RatMatrix {
        // 1 - 2 - 3 as a symmetric digraph.
        RatMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])
    }

    fn k4() -> RatMatrix {
        RatMatrix::from_fn(4, 4, |i, j| if i == j { crate::rat::int(0) } else { crate::rat::int(1) })
    }

    #[test]
    fn path_empties_at_triangle_size() {
        // A path has no triangle: every arc dies in round one because some
        // direction carries no 2-walk.
        let report = clique_depletion(&sym_path3(), 3, 10).unwrap();
        assert!(report.emptied);
        assert_eq!(report.rounds.len(), 1);
    }

    #[test]
    fn complete_graph_survives_its_own_size() {
        for m in [3, 4] {
            let report = clique_depletion(&k4(), m, 10).unwrap();
            assert!(!report.emptied, "K4 must survive m = {m}");
            assert!(report.rounds.is_empty(), "no arc of K4 is removable at m = {m}");
        }
    }

    #[test]
    fn size_two_never_removes() {
        // Threshold m - 2 = 0: no count is below zero.
        let mut rng = seeded_rng(12);
        let g = gen_random_symmetric_digraph(&mut rng, 6, &frac(1, 2)).adjacency_matrix();
        let report = clique_depletion(&g, 2, 10).unwrap();
        assert!(report.rounds.is_empty());
    }

    #[test]
    fn no_in_clique_arc_is_ever_removed() {
        // Safety: on random symmetric graphs, arcs inside an actual
        // m-clique survive depletion at size m.
        let caps = OracleCaps::default();
        let mut rng = seeded_rng(2026);
        for trial in 0..10 {
            let inst = gen_random_symmetric_digraph(&mut rng, 7, &frac(3, 5));
            let g = inst.adjacency_matrix();
            for m in [3, 4] {
                let witness = clique_oracle(&inst, m, &caps).unwrap();
                let report = clique_depletion(&g, m, 20).unwrap();
                if let Some(clique) = witness {
                    for &a in &clique {
                        for &b in &clique {
                            if a != b {
                                assert!(
                                    !report.result.at(a, b).is_zero(),
                                    "trial {trial}, m = {m}: clique arc ({a}, {b}) removed"
                                );
                            }
                        }
                    }
                    assert!(!report.emptied, "trial {trial}, m = {m}: emptied a yes instance");
                }
            }
        }
    }

    #[test]
    fn scan_brackets_the_maximum_clique() {
        // Where depletion empties the graph, the oracle must agree there is
        // no clique of that size.
        let caps = OracleCaps::default();
        let mut rng = seeded_rng(31415);
        for _ in 0..6 {
            let inst = gen_random_symmetric_digraph(&mut rng, 7, &frac(1, 2));
            let g = inst.adjacency_matrix();
            let scan = max_clique_via_depletion(&g, 6, 20).unwrap();
            for rec in &scan.records {
                if rec.emptied {
                    let witness = clique_oracle(&inst, rec.m, &caps).unwrap();
                    assert!(witness.is_none(), "emptied at m = {} but clique exists", rec.m);
                }
            }
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let rect = RatMatrix::zeros(2, 3);
        assert!(matches!(clique_depletion(&rect, 3, 5), Err(ModelError::Shape(_))));
        let neg = RatMatrix::from_fn(2, 2, |_, _| crate::rat::int(-1));
        assert!(matches!(clique_depletion(&neg, 3, 5), Err(ModelError::Hypothesis(_))));
        let fine = RatMatrix::zeros(2, 2);
        assert!(matches!(clique_depletion(&fine, 1, 5), Err(ModelError::Hypothesis(_))));
    }
}
