//! Arc-relabeling models over incidence factors.
//!
//! Writing the host as `G = O_G I_G^T` (out/in incidence, `n` vertices and
//! `k` arcs) and the pattern as `S = O_S I_S^T` (`m` vertices, `l <= k`
//! arcs), a vertex relabeling `X` and an arc relabeling `Z` witness
//! containment through the coupled equations
//!
//! ```text
//!   X O_G Z T = O_S,    X I_G Z T = I_S,
//! ```
//!
//! with `T` the truncation to the first `l` slots.  On permutations the two
//! equations say: the arc assigned to each pattern slot runs between the
//! images of that slot's endpoints.  This module builds the exact model,
//! its factorial-size simplex relaxation, the two-sided necessary system on
//! padded factors, and the doubly-stochastic convex check coupling both
//! unknowns.

use num_traits::Zero;

use super::{factorial_capped, ModelCaps, ModelError};
use crate::incidence::{incidence_decompose, IncidencePair};
use crate::mat::{PermMatrix, RatMatrix};
use crate::rat::{int, Rat};
use crate::reductions::{InstancePair, Relation};
use crate::solve::norm::{norm_max_decide, ExactSearch, NormDecision};
use crate::system::ConstraintSystem;

/// Incidence factor pairs of host and pattern, with the exact coupled
/// equations as methods.
#[derive(Clone, Debug)]
pub struct IncidenceExactModel {
    /// Host factors: `n` vertices, `k` arcs.
    pub g_inc: IncidencePair,
    /// Pattern factors as given (unpadded: `m` vertices, `l` arcs).
    pub s_inc: IncidencePair,
    /// Pattern vertex count.
    pub m: usize,
    /// Host vertex count.
    pub n: usize,
}

fn equal_relation_guard(pair: &InstancePair, k: usize, l: usize) -> Result<(), ModelError> {
    if pair.relation == Relation::Equal && k != l {
        return Err(ModelError::Hypothesis(format!(
            "equality pair with differing arc counts ({k} vs {l}) has no witness; \
             incidence models cover that case only when the counts agree"
        )));
    }
    Ok(())
}

/// Decomposes both sides of a pair into incidence factors.
pub fn build_incidence_exact(pair: &InstancePair) -> Result<IncidenceExactModel, ModelError> {
    let g_inc = incidence_decompose(&pair.g)?;
    let s_inc = incidence_decompose(&pair.s)?;
    let (k, l) = (g_inc.arcs(), s_inc.arcs());
    if l > k {
        return Err(ModelError::Shape(format!(
            "pattern has more arcs than the host ({l} > {k}); no relabeling exists"
        )));
    }
    equal_relation_guard(pair, k, l)?;
    Ok(IncidenceExactModel { m: s_inc.vertices(), n: g_inc.vertices(), g_inc, s_inc })
}

impl IncidenceExactModel {
    /// Pattern factors padded with zero rows to `n` vertices.
    pub fn padded(&self) -> IncidencePair {
        self.s_inc.pad_vertices(self.n)
    }

    /// The pair `(X O_G Z T, X I_G Z T)` truncated to the pattern shape
    /// (`m` rows, `l` columns), for vertex relabeling `psi` (acting on host
    /// rows: row `r` of the product is the incidence row of host vertex
    /// `psi(r)`) and arc relabeling `zeta` (slot `b` takes host arc
    /// `zeta^{-1}(b)`).
    pub fn truncated_term(&self, psi: &PermMatrix, zeta: &PermMatrix) -> (RatMatrix, RatMatrix) {
        let l = self.s_inc.arcs();
        let term = |factor: &RatMatrix| {
            zeta.apply_cols(&psi.apply_rows(factor).expect("psi has n rows"))
                .expect("zeta has k columns")
                .submatrix(0, self.m, 0, l)
        };
        (term(&self.g_inc.o), term(&self.g_inc.i))
    }

    /// Same as [`Self::truncated_term`] but keeping all `n` rows, for
    /// comparison against padded pattern factors.
    pub fn padded_term(&self, psi: &PermMatrix, zeta: &PermMatrix) -> (RatMatrix, RatMatrix) {
        let l = self.s_inc.arcs();
        let term = |factor: &RatMatrix| {
            zeta.apply_cols(&psi.apply_rows(factor).expect("psi has n rows"))
                .expect("zeta has k columns")
                .first_cols(l)
        };
        (term(&self.g_inc.o), term(&self.g_inc.i))
    }

    /// Whether each coupled equation holds for `(psi, zeta)`.
    pub fn check_equations(&self, psi: &PermMatrix, zeta: &PermMatrix) -> (bool, bool) {
        let (o, i) = self.truncated_term(psi, zeta);
        (o == self.s_inc.o, i == self.s_inc.i)
    }

    /// Scans all `(psi, zeta)` pairs for an exact solution of both
    /// equations.  Factorial in both sizes; caller gates the size.
    pub fn exhaustive_solutions(&self) -> Vec<(PermMatrix, PermMatrix)> {
        let mut out = Vec::new();
        for psi in PermMatrix::all(self.n) {
            for zeta in PermMatrix::all(self.g_inc.arcs()) {
                if self.check_equations(&psi, &zeta) == (true, true) {
                    out.push((psi.clone(), zeta.clone()));
                }
            }
        }
        out
    }
}

/// The factorial-size simplex relaxation of the coupled equations.
pub struct IncidenceSymmetricLp {
    pub system: ConstraintSystem,
    /// Row order of the weight block.
    pub vertex_perms: Vec<PermMatrix>,
    /// Column order of the weight block.
    pub arc_perms: Vec<PermMatrix>,
}

fn pair_product_cap(n: usize, k: usize, caps: &ModelCaps) -> Result<usize, ModelError> {
    let product =
        factorial_capped(n, caps.max_pair_product).saturating_mul(factorial_capped(k, caps.max_pair_product));
    if product > caps.max_pair_product {
        return Err(ModelError::CapExceeded {
            what: "vertex/arc permutation pair count",
            size: product,
            cap: caps.max_pair_product,
        });
    }
    Ok(product)
}

/// Builds the simplex-weighted version of the truncated equations: weights
/// `lambda[i][j] >= 0` over all (vertex, arc) permutation pairs with
/// `sum lambda = 1` and the weighted truncated terms summing to the pattern
/// factors.
pub fn build_incidence_symmetric(
    model: &IncidenceExactModel,
    caps: &ModelCaps,
) -> Result<IncidenceSymmetricLp, ModelError> {
    let (n, k) = (model.n, model.g_inc.arcs());
    let l = model.s_inc.arcs();
    pair_product_cap(n, k, caps)?;
    let vertex_perms = PermMatrix::all(n);
    let arc_perms = PermMatrix::all(k);

    let mut sys = ConstraintSystem::new();
    let lambda = sys.add_block("lambda", vertex_perms.len(), arc_perms.len());
    // Row (r, b) of each equation collects the (i, j) coefficients.
    let mut rows_o = vec![vec![Vec::new(); l]; model.m];
    let mut rows_i = vec![vec![Vec::new(); l]; model.m];
    for (i, psi) in vertex_perms.iter().enumerate() {
        for (j, zeta) in arc_perms.iter().enumerate() {
            let (to, ti) = model.truncated_term(psi, zeta);
            let v = sys.var(lambda, i, j);
            for r in 0..model.m {
                for b in 0..l {
                    if !to.at(r, b).is_zero() {
                        rows_o[r][b].push((v, to.at(r, b).clone()));
                    }
                    if !ti.at(r, b).is_zero() {
                        rows_i[r][b].push((v, ti.at(r, b).clone()));
                    }
                }
            }
        }
    }
    for r in 0..model.m {
        for b in 0..l {
            sys.add_eq(rows_o[r][b].clone(), model.s_inc.o.at(r, b).clone());
            sys.add_eq(rows_i[r][b].clone(), model.s_inc.i.at(r, b).clone());
        }
    }
    let simplex: Vec<(usize, Rat)> = (0..vertex_perms.len())
        .flat_map(|i| (0..arc_perms.len()).map(move |j| (i, j)))
        .map(|(i, j)| (sys.var(lambda, i, j), int(1)))
        .collect();
    sys.add_eq(simplex, int(1));
    Ok(IncidenceSymmetricLp { system: sys, vertex_perms, arc_perms })
}

impl IncidenceSymmetricLp {
    /// Checks the two matrix equations alone (NOT the weight normalization)
    /// for an arbitrary nonnegative weight matrix — the form in which 0/1
    /// weight solutions of the unrelaxed equations are recorded.
    pub fn check_unnormalized(&self, model: &IncidenceExactModel, lam: &RatMatrix) -> (bool, bool) {
        let l = model.s_inc.arcs();
        let mut sum_o = RatMatrix::zeros(model.m, l);
        let mut sum_i = RatMatrix::zeros(model.m, l);
        for (i, psi) in self.vertex_perms.iter().enumerate() {
            for (j, zeta) in self.arc_perms.iter().enumerate() {
                if lam.at(i, j).is_zero() {
                    continue;
                }
                let (to, ti) = model.truncated_term(psi, zeta);
                sum_o = sum_o.add(&to.scale(lam.at(i, j))).expect("shapes agree");
                sum_i = sum_i.add(&ti.scale(lam.at(i, j))).expect("shapes agree");
            }
        }
        (sum_o == model.s_inc.o, sum_i == model.s_inc.i)
    }
}

/// The two-sided necessary system on padded factors.
pub struct NecessarySystem {
    pub system: ConstraintSystem,
    pub arc_perms: Vec<PermMatrix>,
    pub vertex_perms: Vec<PermMatrix>,
}

/// Builds the padded two-sided system: arc weights `lambda` over `k!`
/// permutations and vertex weights `mu` over `n!` permutations, each on its
/// simplex, with
///
/// ```text
///   sum_j lambda_j (O_G Z_j T) = sum_i mu_i (X_i O_S~),
/// ```
///
/// and the same for the in-factors, where `S~` is the pattern padded to `n`
/// vertices.  A witness `(psi, zeta)` yields the point-mass solution, so
/// infeasibility refutes the instance; feasibility proves nothing.
pub fn build_necessary_system(
    model: &IncidenceExactModel,
    caps: &ModelCaps,
) -> Result<NecessarySystem, ModelError> {
    let (n, k) = (model.n, model.g_inc.arcs());
    let l = model.s_inc.arcs();
    let sum = factorial_capped(n, caps.max_pair_sum)
        .saturating_add(factorial_capped(k, caps.max_pair_sum));
    if sum > caps.max_pair_sum {
        return Err(ModelError::CapExceeded {
            what: "vertex plus arc permutation count",
            size: sum,
            cap: caps.max_pair_sum,
        });
    }
    let padded = model.padded();
    let arc_perms = PermMatrix::all(k);
    let vertex_perms = PermMatrix::all(n);

    let mut sys = ConstraintSystem::new();
    let lambda = sys.add_block("lambda", 1, arc_perms.len());
    let mu = sys.add_block("mu", 1, vertex_perms.len());

    // Precompute the projected factor images.
    let arc_sides: Vec<(RatMatrix, RatMatrix)> = arc_perms
        .iter()
        .map(|z| {
            (
                z.apply_cols(&model.g_inc.o).expect("k columns").first_cols(l),
                z.apply_cols(&model.g_inc.i).expect("k columns").first_cols(l),
            )
        })
        .collect();
    let vertex_sides: Vec<(RatMatrix, RatMatrix)> = vertex_perms
        .iter()
        .map(|x| {
            (
                x.apply_rows(&padded.o).expect("n rows"),
                x.apply_rows(&padded.i).expect("n rows"),
            )
        })
        .collect();

    for part in 0..2 {
        for v in 0..n {
            for b in 0..l {
                let mut coeffs: Vec<(usize, Rat)> = Vec::new();
                for (j, sides) in arc_sides.iter().enumerate() {
                    let entry = if part == 0 { sides.0.at(v, b) } else { sides.1.at(v, b) };
                    if !entry.is_zero() {
                        coeffs.push((sys.var(lambda, 0, j), entry.clone()));
                    }
                }
                for (i, sides) in vertex_sides.iter().enumerate() {
                    let entry = if part == 0 { sides.0.at(v, b) } else { sides.1.at(v, b) };
                    if !entry.is_zero() {
                        coeffs.push((sys.var(mu, 0, i), -entry.clone()));
                    }
                }
                sys.add_eq(coeffs, int(0));
            }
        }
    }
    let lam_simplex: Vec<(usize, Rat)> =
        (0..arc_perms.len()).map(|j| (sys.var(lambda, 0, j), int(1))).collect();
    sys.add_eq(lam_simplex, int(1));
    let mu_simplex: Vec<(usize, Rat)> =
        (0..vertex_perms.len()).map(|i| (sys.var(mu, 0, i), int(1))).collect();
    sys.add_eq(mu_simplex, int(1));
    Ok(NecessarySystem { system: sys, arc_perms, vertex_perms })
}

/// The coupled doubly-stochastic system with its norm decision.
pub struct IncidenceConvexOutcome {
    pub system: ConstraintSystem,
    pub decision: NormDecision,
}

/// The coupled doubly-stochastic system before any solve: both unknowns
/// relaxed (`x` of size `n` over vertices, `z` of size `k` over arcs),
/// joined by the padded factor equations, together with the squared-norm
/// target `n + k` and the incidence factors the system was built from.
pub struct IncidenceConvexSystem {
    pub system: ConstraintSystem,
    pub target_sq: Rat,
    pub g_inc: IncidencePair,
    pub s_pad: IncidencePair,
}

/// Builds the coupled system for a padded pair without solving anything.
///
/// Feasibility of this system is implied by a yes answer (any permutation
/// solution is a feasible point); the reverse direction is exactly what the
/// norm decision in [`incidence_convex_decision`] settles.
pub fn build_incidence_convex(pair: &InstancePair) -> Result<IncidenceConvexSystem, ModelError> {
    if !pair.is_padded() {
        return Err(ModelError::Unpadded { m: pair.m, n: pair.n() });
    }
    let g_inc = incidence_decompose(&pair.g)?;
    let s_pad = incidence_decompose(&pair.s)?;
    let (n, k, l) = (g_inc.vertices(), g_inc.arcs(), s_pad.arcs());
    if l > k {
        return Err(ModelError::Shape(format!(
            "pattern has more arcs than the host ({l} > {k}); no relabeling exists"
        )));
    }
    equal_relation_guard(pair, k, l)?;

    let mut sys = ConstraintSystem::new();
    let x = sys.add_block("x", n, n);
    let z = sys.add_block("z", k, k);
    for (block, size) in [(x, n), (z, k)] {
        for r in 0..size {
            let row: Vec<(usize, Rat)> = (0..size).map(|c| (sys.var(block, r, c), int(1))).collect();
            sys.add_eq(row, int(1));
        }
        for c in 0..size {
            let col: Vec<(usize, Rat)> = (0..size).map(|r| (sys.var(block, r, c), int(1))).collect();
            sys.add_eq(col, int(1));
        }
    }
    // Couplings: (O_G z)[v][b] = (x O_S~)[v][b] for b < l, and the in-part.
    for (factor_g, factor_s) in [(&g_inc.o, &s_pad.o), (&g_inc.i, &s_pad.i)] {
        for v in 0..n {
            for b in 0..l {
                let mut coeffs: Vec<(usize, Rat)> = Vec::new();
                for a in 0..k {
                    if !factor_g.at(v, a).is_zero() {
                        coeffs.push((sys.var(z, a, b), factor_g.at(v, a).clone()));
                    }
                }
                for i in 0..n {
                    if !factor_s.at(i, b).is_zero() {
                        coeffs.push((sys.var(x, v, i), -factor_s.at(i, b).clone()));
                    }
                }
                sys.add_eq(coeffs, int(0));
            }
        }
    }
    Ok(IncidenceConvexSystem {
        system: sys,
        target_sq: int((n + k) as i64),
        g_inc,
        s_pad,
    })
}

/// Relaxes both unknowns to doubly stochastic matrices (`x` of size `n`,
/// `z` of size `k`) coupled by the padded equations, and decides whether
/// the squared norm maximum reaches `n + k` — attained exactly on
/// permutation solutions, i.e. exactly when the instance answer is yes.
/// The verdict is confirmed by exact search either way.
pub fn incidence_convex_decision(
    pair: &InstancePair,
    max_lp_rounds: u32,
) -> Result<IncidenceConvexOutcome, ModelError> {
    let built = build_incidence_convex(pair)?;
    let decision = norm_max_decide(
        &built.system,
        &built.target_sq,
        ExactSearch::Incidence {
            og: &built.g_inc.o,
            ig: &built.g_inc.i,
            os: &built.s_pad.o,
            is_: &built.s_pad.i,
        },
        max_lp_rounds,
    )?;
    Ok(IncidenceConvexOutcome { system: built.system, decision })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{incidence_witness_check, subgi_oracle, OracleCaps};
    use crate::problems::{gen_random_digraph, seeded_rng, DigraphInstance};
    use crate::rat::frac;
    use crate::reductions::{build_hc_pair, Provenance};
    use crate::solve::norm::{NormVerdict, NormWitness};
    use crate::solve::lp_solve;

    /// Host: the directed 2-cycle.  Pattern: a single vertex with a
    /// self-loop.  The host has no loop, so the answer is no.
    fn loop_in_cycle_pair() -> InstancePair {
        let g = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let s = RatMatrix::from_ints(&[&[1]]);
        InstancePair::new(g, s, Relation::Cover, Provenance::SubGi).unwrap()
    }

    #[test]
    fn documented_half_solution_of_the_coupled_equations() {
        // The loop-seeking pair: the vertex swap plus one arc relabeling
        // satisfies the out-equation but not the in-equation, and no pair
        // satisfies both.
        let model = build_incidence_exact(&loop_in_cycle_pair()).unwrap();
        assert_eq!(model.g_inc.o, RatMatrix::identity(2));
        assert_eq!(model.g_inc.i, RatMatrix::from_ints(&[&[0, 1], &[1, 0]]));
        let swap = PermMatrix::transposition(2, 0, 1);
        let (o_ok, i_ok) = model.check_equations(&swap, &swap);
        assert!(o_ok && !i_ok, "swap/swap satisfies exactly the out-equation");
        assert!(model.exhaustive_solutions().is_empty());
    }

    #[test]
    fn cycle_pattern_in_itself_solves_exactly() {
        // Host = pattern = directed 3-cycle: solutions exist and each one
        // passes the full padded witness check.
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let model = build_incidence_exact(&pair).unwrap();
        let sols = model.exhaustive_solutions();
        assert!(!sols.is_empty());
        let padded = model.padded();
        for (psi, zeta) in &sols {
            assert!(incidence_witness_check(&model.g_inc, &padded, psi, zeta));
        }
    }

    #[test]
    fn unnormalized_01_weights_solve_truncated_equations_but_simplex_fails() {
        // Recorded phenomenon on the loop-seeking pair: two 0/1 weights on
        // the vertex swap satisfy both truncated equations with total mass
        // 2, yet the normalized system (mass 1) is infeasible — truncation
        // discards the row mass that normalization needs.
        let caps = ModelCaps::default();
        let model = build_incidence_exact(&loop_in_cycle_pair()).unwrap();
        let lp = build_incidence_symmetric(&model, &caps).unwrap();

        let swap_idx = lp
            .vertex_perms
            .iter()
            .position(|p| p.image() == [1, 0])
            .unwrap();
        let mut lam = RatMatrix::zeros(lp.vertex_perms.len(), lp.arc_perms.len());
        lam.set(swap_idx, 0, int(1));
        lam.set(swap_idx, 1, int(1));
        assert_eq!(lp.check_unnormalized(&model, &lam), (true, true));

        // Halving to reach the simplex breaks both equations.
        let halved = lam.scale(&frac(1, 2));
        assert_eq!(lp.check_unnormalized(&model, &halved), (false, false));
        // And the full simplex system has no solution at all.
        assert!(lp_solve(&lp.system, None).unwrap().point().is_none());
    }

    #[test]
    fn simplex_system_is_feasible_on_yes_instances() {
        let caps = ModelCaps::default();
        let ocaps = OracleCaps::default();
        let mut rng = seeded_rng(555);
        let mut yes_seen = 0;
        for _ in 0..10 {
            let g = gen_random_digraph(&mut rng, 3, &frac(1, 2), true);
            let s = gen_random_digraph(&mut rng, 2, &frac(1, 2), true);
            let gm = g.adjacency_matrix();
            let sm = s.adjacency_matrix();
            if sm.is_zero() {
                continue;
            }
            let Ok(pair) = InstancePair::new(gm, sm, Relation::Cover, Provenance::SubGi) else {
                continue;
            };
            let model = match build_incidence_exact(&pair) {
                Ok(m) => m,
                Err(_) => continue, // more pattern arcs than host arcs
            };
            if build_incidence_symmetric(&model, &caps).is_err() {
                continue;
            }
            let truth = subgi_oracle(&pair, &ocaps).unwrap().yes;
            if truth {
                let lp = build_incidence_symmetric(&model, &caps).unwrap();
                assert!(
                    lp_solve(&lp.system, None).unwrap().point().is_some(),
                    "yes instance must make the simplex system feasible"
                );
                yes_seen += 1;
            }
        }
        assert!(yes_seen > 0, "corpus must include yes instances");
    }

    #[test]
    fn padded_01_solutions_are_point_masses() {
        // On padded factors every truncated term carries full column mass,
        // so a 0/1 weight family solving the padded equations has exactly
        // one member.  Checked exhaustively on the 2-cycle-in-itself pair:
        // all singleton solutions are witnesses, and no larger 0/1 family
        // works.
        let g = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let pair = InstancePair::new(g.clone(), g, Relation::Cover, Provenance::SubGi).unwrap();
        let model = build_incidence_exact(&pair).unwrap();
        let padded = model.padded();
        let vperms = PermMatrix::all(2);
        let aperms = PermMatrix::all(2);
        let pairs: Vec<(usize, usize)> =
            (0..4).map(|t| (t / 2, t % 2)).collect();
        let mut singleton_solutions = 0;
        for mask in 1u32..16 {
            let chosen: Vec<&(usize, usize)> =
                pairs.iter().enumerate().filter(|(t, _)| mask & (1 << t) != 0).map(|(_, p)| p).collect();
            let mut sum_o = RatMatrix::zeros(2, model.s_inc.arcs());
            let mut sum_i = RatMatrix::zeros(2, model.s_inc.arcs());
            for &&(i, j) in &chosen {
                let (to, ti) = model.padded_term(&vperms[i], &aperms[j]);
                sum_o = sum_o.add(&to).unwrap();
                sum_i = sum_i.add(&ti).unwrap();
            }
            let solves = sum_o == padded.o && sum_i == padded.i;
            if solves {
                assert_eq!(chosen.len(), 1, "padded 0/1 solutions must be singletons");
                let &&(i, j) = &chosen[0];
                assert!(incidence_witness_check(&model.g_inc, &padded, &vperms[i], &aperms[j]));
                singleton_solutions += 1;
            }
        }
        assert!(singleton_solutions > 0, "the cycle embeds in itself");
    }

    #[test]
    fn necessary_system_is_feasible_on_yes_and_sometimes_on_no() {
        let caps = ModelCaps::default();
        // Yes case: 3-cycle in itself.
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let model = build_incidence_exact(&pair).unwrap();
        let necessary = build_necessary_system(&model, &caps).unwrap();
        assert!(lp_solve(&necessary.system, None).unwrap().point().is_some());

        // No case where the necessary system is still feasible: the
        // loop-seeking pair padded to the host size.  The mixture
        // lambda = mu = (1/2, 1/2) satisfies both sides, demonstrating that
        // the system is a one-way filter only.
        let padded_pair = loop_in_cycle_pair().pad();
        let model = build_incidence_exact(&padded_pair).unwrap();
        let necessary = build_necessary_system(&model, &caps).unwrap();
        assert!(
            lp_solve(&necessary.system, None).unwrap().point().is_some(),
            "documented: feasibility does not certify yes"
        );
        let ocaps = OracleCaps::default();
        assert!(!subgi_oracle(&padded_pair, &ocaps).unwrap().yes);
    }

    #[test]
    fn convex_decision_matches_oracle() {
        let ocaps = OracleCaps::default();
        let mut rng = seeded_rng(8080);
        let mut agree = 0;
        for trial in 0..10 {
            let g = gen_random_digraph(&mut rng, 3, &frac(1, 2), true);
            let s = gen_random_digraph(&mut rng, 3, &frac(1, 4), true);
            let gm = g.adjacency_matrix();
            let sm = s.adjacency_matrix();
            let Ok(pair) = InstancePair::new(gm, sm, Relation::Cover, Provenance::SubGi) else {
                continue;
            };
            let outcome = match incidence_convex_decision(&pair, 6) {
                Ok(o) => o,
                Err(ModelError::Shape(_)) => continue, // l > k
                Err(e) => panic!("unexpected error: {e}"),
            };
            let truth = subgi_oracle(&pair, &ocaps).unwrap().yes;
            match outcome.decision.verdict {
                NormVerdict::ReachesTarget => {
                    assert!(truth, "trial {trial}: false yes");
                    let Some(NormWitness::VertexArc { assignment, arc }) =
                        outcome.decision.witness
                    else {
                        panic!("witness missing");
                    };
                    let model = build_incidence_exact(&pair).unwrap();
                    assert!(incidence_witness_check(
                        &model.g_inc,
                        &model.padded(),
                        &assignment,
                        &arc
                    ));
                }
                NormVerdict::BelowTarget => assert!(!truth, "trial {trial}: false no"),
                NormVerdict::HeuristicOnly => panic!("exact search requested"),
            }
            agree += 1;
        }
        assert!(agree >= 5, "corpus must exercise the decision");
    }

    #[test]
    fn convex_decision_rejects_loop_pair_after_padding() {
        let pair = loop_in_cycle_pair().pad();
        let outcome = incidence_convex_decision(&pair, 6).unwrap();
        assert_eq!(outcome.decision.verdict, NormVerdict::BelowTarget);
    }

    #[test]
    fn pinned_coupled_system_keeps_equality_rows_intact() {
        // Regression pin: this pair once drove the exact solver into letting
        // an eliminated auxiliary column back into the basis, which corrupted
        // four equality rows of the coupled system and surfaced as an internal
        // solver error.  The decision must come back clean and positive (the
        // pattern is a single self-loop and the host has one).
        let g = RatMatrix::from_ints(&[&[0, 0, 0], &[1, 1, 1], &[1, 1, 0]]);
        let s = RatMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let pair = InstancePair::new(g, s, Relation::Cover, Provenance::SubGi).unwrap();
        assert!(subgi_oracle(&pair, &OracleCaps::default()).unwrap().yes);
        let outcome = incidence_convex_decision(&pair, 6).unwrap();
        assert_eq!(outcome.decision.verdict, NormVerdict::ReachesTarget);
    }

    #[test]
    fn caps_gate_the_factorial_models() {
        let tight = ModelCaps { max_pair_product: 5, max_pair_sum: 3, ..ModelCaps::default() };
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let model = build_incidence_exact(&pair).unwrap();
        assert!(matches!(
            build_incidence_symmetric(&model, &tight),
            Err(ModelError::CapExceeded { .. })
        ));
        assert!(matches!(
            build_necessary_system(&model, &tight),
            Err(ModelError::CapExceeded { .. })
        ));
    }
}
