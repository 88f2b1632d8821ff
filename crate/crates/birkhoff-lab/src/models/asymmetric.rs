//! The centered linear-span model.
//!
//! For padded incidence factors, every (vertex, arc) permutation pair
//! `(A, Z)` produces the stacked projection
//!
//! ```text
//!   sigma(A, Z) = [ A O_G Z T ; A I_G Z T ]    (2n x l),
//! ```
//!
//! whose mean over all pairs is the constant matrix `C = (1/n) J`.  A
//! witness pair produces exactly `F = [O_S~ ; I_S~]`, so `F - C` lies in
//! the linear span `L` of the centered family `tau(A, Z) = sigma(A, Z) - C`
//! whenever the instance answer is yes.  The model builds an explicit basis
//! of `L` and decides span membership by exact rank arithmetic; membership
//! is necessary for a yes, and testing how often it is sufficient is an
//! experiment, not a theorem.
//!
//! Basis generation is exact in both modes.  `Exhaustive` walks every pair
//! (factorially expensive, gated by a cap).  `GreedyPoly` exploits
//! bilinearity of `sigma` in `(A, Z)`: if side families affinely span the
//! two permutation polytopes, the centered products of the two families
//! span all of `L`.  Identity, transpositions, and 3-cycles through vertex
//! 0 affinely span the permutation polytope (transposition differences
//! span the symmetric zero-sum matrices; triangles through a fixed vertex
//! span the antisymmetric cycle space), so a greedy affine-rank filter
//! over that structured sequence yields polynomially many side members and
//! a complete product basis.

use super::{factorial_capped, ModelCaps, ModelError};
use crate::incidence::{incidence_decompose, IncidencePair};
use crate::mat::{PermMatrix, RatMatrix};
use crate::rat::{frac, int, Rat};
use crate::reductions::InstancePair;
use crate::solve::Echelon;

/// How the span basis is generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisGenerator {
    /// All permutation pairs (factorial; capped).
    Exhaustive,
    /// Structured affine side families and their products (polynomial).
    GreedyPoly,
}

/// The centered span model.
pub struct AsymmetricModel {
    /// The centering matrix `(1/n) J` of shape `2n x l`.
    pub c: RatMatrix,
    /// Basis members of the centered span, in discovery order.
    pub basis: Vec<RatMatrix>,
    /// `basis.len()`, bounded by `2 l (n - 1)`.
    pub beta: usize,
    /// The membership target `[O_S~ ; I_S~] - C`.
    pub rhs: RatMatrix,
    /// Which `(vertex_family, arc_family)` index pair produced each basis
    /// member.
    pub generating_pairs: Vec<(usize, usize)>,
    /// Vertex-side family used for products.
    pub vertex_family: Vec<PermMatrix>,
    /// Arc-side family used for products.
    pub arc_family: Vec<PermMatrix>,
    pub generator: BasisGenerator,
    /// Dimension bound `min(2 l (n - 1), 2 n l)` used for early exit.
    pub rank_cap: usize,
    /// Host incidence factors (kept for witness replay).
    pub g_inc: IncidencePair,
    /// Padded pattern incidence factors.
    pub s_pad: IncidencePair,
}

/// Verdict of the span-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetricDecision {
    /// Whether the target lies in the centered span.  `false` refutes the
    /// instance; `true` is the necessary-condition pass.
    pub compatible: bool,
    pub beta: usize,
}

fn vectorize(m: &RatMatrix) -> Vec<Rat> {
    m.entries().to_vec()
}

/// Identity, transpositions `(a b)`, and both orientations of triangles
/// through 0, greedily filtered to an affine basis of the permutation
/// polytope's hull: exactly `(size - 1)^2 + 1` members.
fn side_affine_family(size: usize) -> Vec<PermMatrix> {
    let target = (size - 1) * (size - 1) + 1;
    let mut kept = Vec::new();
    // Affine rank = linear rank of vectorized matrices with a 1 appended.
    let mut ech = Echelon::new(size * size + 1);
    let try_keep = |p: PermMatrix, kept: &mut Vec<PermMatrix>, ech: &mut Echelon| {
        let mut v = vectorize(&p.to_matrix());
        v.push(int(1));
        if ech.insert(v) {
            kept.push(p);
        }
    };
    try_keep(PermMatrix::identity(size), &mut kept, &mut ech);
    'outer: {
        for a in 0..size {
            for b in (a + 1)..size {
                if kept.len() == target {
                    break 'outer;
                }
                try_keep(PermMatrix::transposition(size, a, b), &mut kept, &mut ech);
            }
        }
        for a in 1..size {
            for b in 1..size {
                if a == b {
                    continue;
                }
                if kept.len() == target {
                    break 'outer;
                }
                try_keep(PermMatrix::cycle3(size, 0, a, b), &mut kept, &mut ech);
            }
        }
    }
    debug_assert_eq!(kept.len(), target, "structured family must affinely span");
    kept
}

/// Builds the model for a padded pair.
pub fn build_asymmetric_model(
    pair: &InstancePair,
    generator: BasisGenerator,
    caps: &ModelCaps,
) -> Result<AsymmetricModel, ModelError> {
    if !pair.is_padded() {
        return Err(ModelError::Unpadded { m: pair.m, n: pair.n() });
    }
    let g_inc = incidence_decompose(&pair.g)?;
    let s_pad = incidence_decompose(&pair.s)?;
    let (n, k, l) = (g_inc.vertices(), g_inc.arcs(), s_pad.arcs());
    if k == 0 {
        return Err(ModelError::Shape("host has no arcs; the projection family is empty".into()));
    }
    if l > k {
        return Err(ModelError::Shape(format!(
            "pattern has more arcs than the host ({l} > {k}); no relabeling exists"
        )));
    }

    let (vertex_family, arc_family) = match generator {
        BasisGenerator::Exhaustive => {
            let product = factorial_capped(n, caps.max_pair_product)
                .saturating_mul(factorial_capped(k, caps.max_pair_product));
            if product > caps.max_pair_product {
                return Err(ModelError::CapExceeded {
                    what: "vertex/arc permutation pair count",
                    size: product,
                    cap: caps.max_pair_product,
                });
            }
            (PermMatrix::all(n), PermMatrix::all(k))
        }
        BasisGenerator::GreedyPoly => (side_affine_family(n), side_affine_family(k)),
    };

    let c = RatMatrix::constant(2 * n, l, frac(1, n as i64));
    let f = s_pad.o.vstack(&s_pad.i)?;
    let rhs = f.sub(&c)?;
    let rank_cap = (2 * l * (n.saturating_sub(1))).min(2 * n * l);

    let sigma = |a: &PermMatrix, z: &PermMatrix| -> RatMatrix {
        let part = |factor: &RatMatrix| {
            z.apply_cols(&a.apply_rows(factor).expect("vertex side has n rows"))
                .expect("arc side has k columns")
                .first_cols(l)
        };
        part(&g_inc.o).vstack(&part(&g_inc.i)).expect("column counts agree")
    };

    let mut ech = Echelon::new(2 * n * l);
    let mut basis = Vec::new();
    let mut generating_pairs = Vec::new();
    'product: for (i, a) in vertex_family.iter().enumerate() {
        for (j, z) in arc_family.iter().enumerate() {
            let tau = sigma(a, z).sub(&c)?;
            if ech.insert(vectorize(&tau)) {
                basis.push(tau);
                generating_pairs.push((i, j));
                if ech.rank() == rank_cap {
                    break 'product;
                }
            }
        }
    }
    let beta = basis.len();
    debug_assert!(beta <= rank_cap);
    Ok(AsymmetricModel {
        c,
        basis,
        beta,
        rhs,
        generating_pairs,
        vertex_family,
        arc_family,
        generator,
        rank_cap,
        g_inc,
        s_pad,
    })
}

impl AsymmetricModel {
    /// Exact span-membership test of the target.
    pub fn decide(&self) -> AsymmetricDecision {
        let dim = self.c.rows() * self.c.cols();
        let mut ech = Echelon::new(dim);
        for b in &self.basis {
            ech.insert(vectorize(b));
        }
        let compatible = ech.contains(&vectorize(&self.rhs));
        AsymmetricDecision { compatible, beta: self.beta }
    }

    /// Rank of the generated span.
    pub fn span_rank(&self) -> usize {
        let mut ech = Echelon::new(self.c.rows() * self.c.cols());
        for b in &self.basis {
            ech.insert(vectorize(b));
        }
        ech.rank()
    }

    /// Whether `other`'s basis spans the same subspace.
    pub fn span_equals(&self, other: &AsymmetricModel) -> bool {
        let dim = self.c.rows() * self.c.cols();
        let mut mine = Echelon::new(dim);
        for b in &self.basis {
            mine.insert(vectorize(b));
        }
        other.basis.iter().all(|b| mine.contains(&vectorize(b)))
            && {
                let mut theirs = Echelon::new(dim);
                for b in &other.basis {
                    theirs.insert(vectorize(b));
                }
                self.basis.iter().all(|b| theirs.contains(&vectorize(b)))
            }
    }

    /// The centered projection of one explicit permutation pair.
    pub fn tau_of(&self, a: &PermMatrix, z: &PermMatrix) -> Result<RatMatrix, ModelError> {
        let l = self.s_pad.arcs();
        let part = |factor: &RatMatrix| -> Result<RatMatrix, ModelError> {
            Ok(z.apply_cols(&a.apply_rows(factor)?)?.first_cols(l))
        };
        Ok(part(&self.g_inc.o)?.vstack(&part(&self.g_inc.i)?)?.sub(&self.c)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{subgi_oracle, OracleCaps};
    use crate::problems::{gen_random_digraph, seeded_rng, DigraphInstance};
    use crate::reductions::{build_hc_pair, InstancePair, Provenance, Relation};

    fn pair_from(g: &[&[i64]], s: &[&[i64]]) -> InstancePair {
        InstancePair::new(
            RatMatrix::from_ints(g),
            RatMatrix::from_ints(s),
            Relation::Cover,
            Provenance::SubGi,
        )
        .unwrap()
    }

    #[test]
    fn structured_side_family_has_exact_affine_rank() {
        for size in 1..=5 {
            let family = side_affine_family(size);
            assert_eq!(family.len(), (size - 1) * (size - 1) + 1, "size {size}");
        }
    }

    #[test]
    fn centering_matrix_is_the_family_mean() {
        // Verified against the full enumeration on a small instance.
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let caps = ModelCaps::default();
        let model = build_asymmetric_model(&pair, BasisGenerator::Exhaustive, &caps).unwrap();
        let (n, k) = (3, 3);
        let vperms = PermMatrix::all(n);
        let aperms = PermMatrix::all(k);
        let mut total = RatMatrix::zeros(2 * n, model.s_pad.arcs());
        for a in &vperms {
            for z in &aperms {
                let sigma = model.tau_of(a, z).unwrap().add(&model.c).unwrap();
                total = total.add(&sigma).unwrap();
            }
        }
        let count = int((vperms.len() * aperms.len()) as i64);
        let mean = total.scale(&(int(1) / count));
        assert_eq!(mean, model.c, "closed-form centering must equal the mean");
    }

    #[test]
    fn greedy_span_equals_exhaustive_span_on_small_instances() {
        let caps = ModelCaps::default();
        let mut rng = seeded_rng(909);
        let mut checked = 0;
        for _ in 0..8 {
            let g = gen_random_digraph(&mut rng, 3, &crate::rat::frac(1, 2), true);
            let s = gen_random_digraph(&mut rng, 3, &crate::rat::frac(1, 3), true);
            let Ok(pair) =
                InstancePair::new(g.adjacency_matrix(), s.adjacency_matrix(), Relation::Cover, Provenance::SubGi)
            else {
                continue;
            };
            let greedy = match build_asymmetric_model(&pair, BasisGenerator::GreedyPoly, &caps) {
                Ok(m) => m,
                Err(_) => continue, // empty host or l > k
            };
            let full = build_asymmetric_model(&pair, BasisGenerator::Exhaustive, &caps).unwrap();
            assert!(greedy.span_equals(&full), "greedy basis must span the full family");
            checked += 1;
        }
        assert!(checked >= 3, "corpus must exercise the comparison");
    }

    #[test]
    fn beta_respects_the_dimension_bound() {
        let g = DigraphInstance::from_arcs(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let caps = ModelCaps::default();
        let model = build_asymmetric_model(&pair, BasisGenerator::GreedyPoly, &caps).unwrap();
        let l = model.s_pad.arcs();
        let n = 4;
        assert!(model.beta <= 2 * l * (n - 1));
        assert!(model.beta <= 2 * n * l);
    }

    #[test]
    fn yes_instances_are_always_compatible() {
        // Necessity: the witness projection equals the target, so a yes
        // answer forces span membership.
        let ocaps = OracleCaps::default();
        let caps = ModelCaps::default();
        let mut rng = seeded_rng(4096);
        let mut yes_seen = 0;
        for _ in 0..12 {
            let g = gen_random_digraph(&mut rng, 4, &crate::rat::frac(1, 2), true);
            let s = gen_random_digraph(&mut rng, 4, &crate::rat::frac(1, 4), true);
            let Ok(pair) =
                InstancePair::new(g.adjacency_matrix(), s.adjacency_matrix(), Relation::Cover, Provenance::SubGi)
            else {
                continue;
            };
            let model = match build_asymmetric_model(&pair, BasisGenerator::GreedyPoly, &caps) {
                Ok(m) => m,
                Err(_) => continue,
            };
            if subgi_oracle(&pair, &ocaps).unwrap().yes {
                yes_seen += 1;
                assert!(model.decide().compatible, "yes instance must be span-compatible");
            }
        }
        assert!(yes_seen > 0, "corpus must include yes instances");
    }

    #[test]
    fn witness_projection_hits_the_target_exactly() {
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let caps = ModelCaps::default();
        let model = build_asymmetric_model(&pair, BasisGenerator::Exhaustive, &caps).unwrap();
        // Find the witness pair by scanning.
        let mut hit = false;
        for a in PermMatrix::all(3) {
            for z in PermMatrix::all(3) {
                if model.tau_of(&a, &z).unwrap() == model.rhs {
                    hit = true;
                }
            }
        }
        assert!(hit, "some permutation pair must project onto the target");
    }

    #[test]
    fn empty_host_is_rejected() {
        let pair = pair_from(&[&[0, 0], &[0, 0]], &[&[0, 0], &[0, 0]]);
        assert!(matches!(
            build_asymmetric_model(&pair, BasisGenerator::GreedyPoly, &ModelCaps::default()),
            Err(ModelError::Shape(_))
        ));
    }

    #[test]
    fn exhaustive_cap_is_enforced() {
        let g = DigraphInstance::from_arcs(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let pair = build_hc_pair(&g).unwrap();
        let tight = ModelCaps { max_pair_product: 100, ..ModelCaps::default() };
        assert!(matches!(
            build_asymmetric_model(&pair, BasisGenerator::Exhaustive, &tight),
            Err(ModelError::CapExceeded { .. })
        ));
        // GreedyPoly ignores that cap by design.
        assert!(build_asymmetric_model(&pair, BasisGenerator::GreedyPoly, &tight).is_ok());
    }
}
