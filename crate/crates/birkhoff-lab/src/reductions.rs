//! Reductions of search problems to instance/pattern matrix pairs.
//!
//! Every problem here becomes the same question: does a vertex relabeling of
//! the instance digraph make its adjacency matrix cover (or equal) the
//! pattern's adjacency matrix on the pattern's index range?  The pattern
//! matrices are fixed per problem family; the instance matrix carries the
//! problem data.

use crate::mat::{MatError, PermMatrix, RatMatrix};
use crate::problems::{CnfFormula, DigraphInstance, Literal};
use crate::rat::Rat;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("pattern has {m} vertices but instance only {n}")]
    PatternTooLarge { m: usize, n: usize },
    #[error("matrix: {0}")]
    Mat(#[from] MatError),
    #[error("instance matrix must be nonnegative integer")]
    BadInstanceMatrix,
    #[error("pattern matrix must be nonnegative integer")]
    BadPatternMatrix,
    #[error("equality relation requires pattern and instance of equal size")]
    EqualSizeMismatch,
    #[error("perfect matching needs an even vertex count, got {0}")]
    OddPerfectMatching(usize),
    #[error("clause of width {got} exceeds target width {want}")]
    ClauseTooWide { got: usize, want: usize },
    #[error("unsupported fixed clause width {0}; supported: 2, 3")]
    UnsupportedWidth(usize),
    #[error("formula has no clauses")]
    EmptyFormula,
}

/// How the relabeled instance must relate to the pattern on the pattern
/// block: entrywise `>=` (cover) or `==` (exact).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Cover,
    Equal,
}

/// Which reduction produced a pair (drives oracle dispatch and reporting).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "subgi")]
    SubGi,
    #[serde(rename = "gi")]
    Gi,
    #[serde(rename = "clique")]
    Clique,
    #[serde(rename = "hc")]
    Hc,
    #[serde(rename = "hp")]
    Hp,
    #[serde(rename = "matching")]
    Matching,
    #[serde(rename = "perfect-matching")]
    PerfectMatching,
    #[serde(rename = "2sat")]
    TwoSat,
    #[serde(rename = "3sat")]
    ThreeSat,
    #[serde(rename = "sat")]
    Sat,
}

/// An instance/pattern pair `(G, S)` with its relation.  `g` is `n x n`
/// nonnegative integer, `s` is `m x m` nonnegative integer, `m <= n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstancePair {
    pub g: RatMatrix,
    pub s: RatMatrix,
    pub m: usize,
    pub relation: Relation,
    pub provenance: Provenance,
}

impl InstancePair {
    pub fn new(
        g: RatMatrix,
        s: RatMatrix,
        relation: Relation,
        provenance: Provenance,
    ) -> Result<Self, ReductionError> {
        if !g.is_square() || !g.is_nonneg_integer() {
            return Err(ReductionError::BadInstanceMatrix);
        }
        if !s.is_square() || !s.is_nonneg_integer() {
            return Err(ReductionError::BadPatternMatrix);
        }
        let (n, m) = (g.rows(), s.rows());
        if m > n {
            return Err(ReductionError::PatternTooLarge { m, n });
        }
        if relation == Relation::Equal && m != n {
            return Err(ReductionError::EqualSizeMismatch);
        }
        Ok(InstancePair { g, s, m, relation, provenance })
    }

    /// Instance size `n`.
    pub fn n(&self) -> usize {
        self.g.rows()
    }

    /// Pattern size `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Pattern padded with zeros to `n x n`.
    pub fn padded_s(&self) -> RatMatrix {
        self.s.pad_to(self.n(), self.n()).expect("m <= n")
    }

    /// The same instance with the pattern padded to full size (`m = n`).
    ///
    /// Adding isolated roles never changes the answer: they can absorb any
    /// leftover vertices.  Models that require a square same-size system
    /// start from here.
    pub fn pad(&self) -> InstancePair {
        InstancePair::new(self.g.clone(), self.padded_s(), self.relation, self.provenance)
            .expect("padding preserves validity")
    }

    /// True when `m = n` (the truncation in the defining inequality is the
    /// identity).
    pub fn is_padded(&self) -> bool {
        self.m == self.n()
    }

    /// Validates a stored pair (after deserialization).
    pub fn validate(&self) -> Result<(), ReductionError> {
        let fresh =
            InstancePair::new(self.g.clone(), self.s.clone(), self.relation, self.provenance)?;
        if fresh.m != self.m {
            return Err(ReductionError::BadPatternMatrix);
        }
        Ok(())
    }

    /// Whether `entry` of the relabeled instance satisfies the relation
    /// against pattern `target`.
    pub fn relation_holds(&self, entry: &Rat, target: &Rat) -> bool {
        match self.relation {
            Relation::Cover => entry >= target,
            Relation::Equal => entry == target,
        }
    }

    /// Tests a full role assignment `psi` (role `i` is played by vertex
    /// `psi.col_of_row(i)`): for all roles `i, j < m`,
    /// `G[psi(i)][psi(j)] relation S[i][j]`.
    pub fn check_assignment(&self, psi: &PermMatrix) -> bool {
        if psi.n() != self.n() {
            return false;
        }
        let conj = psi.conjugate(&self.g).expect("square");
        (0..self.m)
            .all(|i| (0..self.m).all(|j| self.relation_holds(conj.at(i, j), self.s.at(i, j))))
    }

    /// Tests an injective partial assignment of the `m` pattern roles.
    pub fn check_partial(&self, phi: &[usize]) -> bool {
        if phi.len() != self.m || phi.iter().any(|&v| v >= self.n()) {
            return false;
        }
        for (i, &v) in phi.iter().enumerate() {
            if phi[..i].contains(&v) {
                return false;
            }
        }
        (0..self.m).all(|i| {
            (0..self.m)
                .all(|j| self.relation_holds(self.g.at(phi[i], phi[j]), self.s.at(i, j)))
        })
    }

    /// Extends an injective partial assignment of the pattern roles to a
    /// full role permutation, filling the remaining roles with the unused
    /// vertices in increasing order.
    pub fn extend_partial(&self, phi: &[usize]) -> PermMatrix {
        let n = self.n();
        assert!(phi.len() <= n);
        let mut image = phi.to_vec();
        let mut used = vec![false; n];
        for &v in phi {
            assert!(!used[v], "partial assignment must be injective");
            used[v] = true;
        }
        image.extend((0..n).filter(|&v| !used[v]));
        PermMatrix::from_image(image).expect("extension is a bijection")
    }

    /// Roles that actually constrain the search: under cover, roles whose
    /// pattern row and column are entirely zero are free; under equality
    /// every role below `m` constrains (zero cells must match too).
    pub fn active_roles(&self) -> Vec<usize> {
        match self.relation {
            Relation::Equal => (0..self.m).collect(),
            Relation::Cover => (0..self.m)
                .filter(|&i| {
                    (0..self.m)
                        .any(|j| !self.s.at(i, j).is_zero() || !self.s.at(j, i).is_zero())
                })
                .collect(),
        }
    }
}

/// Pattern `J - I`: all ones off the diagonal (a clique on `m` vertices).
pub fn clique_pattern(m: usize) -> RatMatrix {
    RatMatrix::from_fn(m, m, |i, j| if i == j { Rat::zero() } else { Rat::one() })
}

/// Pattern of a directed cycle through all `n` vertices: a 1 in the top-right
/// corner and on the subdiagonal.
pub fn hc_pattern(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |i, j| {
        let hit = (i == 0 && j == n - 1) || (i > 0 && j == i - 1);
        if hit {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Pattern of a directed path through all `n` vertices: the cycle pattern
/// with the closing arc removed.
pub fn hp_pattern(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |i, j| {
        if i > 0 && j == i - 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Pattern of `pairs` disjoint arcs: ones at `(0,1), (2,3), ...`.
pub fn matching_pattern(pairs: usize) -> RatMatrix {
    let m = 2 * pairs;
    RatMatrix::from_fn(m, m, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Subgraph containment: does `g` contain a subgraph isomorphic to `s`?
pub fn build_subgi_pair(
    g: &DigraphInstance,
    s: &DigraphInstance,
) -> Result<InstancePair, ReductionError> {
    InstancePair::new(
        g.adjacency_matrix(),
        s.adjacency_matrix(),
        Relation::Cover,
        Provenance::SubGi,
    )
}

/// Graph isomorphism: equality of relabeled adjacency matrices.
pub fn build_gi_pair(
    g: &DigraphInstance,
    s: &DigraphInstance,
) -> Result<InstancePair, ReductionError> {
    if g.n != s.n {
        return Err(ReductionError::EqualSizeMismatch);
    }
    InstancePair::new(g.adjacency_matrix(), s.adjacency_matrix(), Relation::Equal, Provenance::Gi)
}

/// Clique of size `m` in `g` (arcs in both directions between chosen
/// vertices).
pub fn build_clique_pair(g: &DigraphInstance, m: usize) -> Result<InstancePair, ReductionError> {
    InstancePair::new(g.adjacency_matrix(), clique_pattern(m), Relation::Cover, Provenance::Clique)
}

/// Hamiltonian cycle in `g`.
pub fn build_hc_pair(g: &DigraphInstance) -> Result<InstancePair, ReductionError> {
    InstancePair::new(g.adjacency_matrix(), hc_pattern(g.n), Relation::Cover, Provenance::Hc)
}

/// Hamiltonian path in `g`.
pub fn build_hp_pair(g: &DigraphInstance) -> Result<InstancePair, ReductionError> {
    InstancePair::new(g.adjacency_matrix(), hp_pattern(g.n), Relation::Cover, Provenance::Hp)
}

/// Matching with `pairs` disjoint arcs in `g`.
pub fn build_matching_pair(
    g: &DigraphInstance,
    pairs: usize,
) -> Result<InstancePair, ReductionError> {
    InstancePair::new(
        g.adjacency_matrix(),
        matching_pattern(pairs),
        Relation::Cover,
        Provenance::Matching,
    )
}

/// Perfect matching: `n/2` disjoint arcs covering every vertex.
pub fn build_perfect_matching_pair(g: &DigraphInstance) -> Result<InstancePair, ReductionError> {
    if g.n % 2 != 0 {
        return Err(ReductionError::OddPerfectMatching(g.n));
    }
    InstancePair::new(
        g.adjacency_matrix(),
        matching_pattern(g.n / 2),
        Relation::Cover,
        Provenance::PerfectMatching,
    )
}

/// Truth table of one clause over its literal slots.
///
/// Row `alpha` (0-based) assigns slot `t` the variable value given by bit
/// `w - 1 - t` of `alpha`: row 0 is all-false and the last slot alternates
/// fastest.  A clause that repeats a variable has rows assigning it both
/// ways; such rows are internally inconsistent and are compatible with
/// nothing.
#[derive(Clone, Debug)]
pub struct ClauseTable {
    slots: Vec<Literal>,
}

impl ClauseTable {
    pub fn new(clause: &[Literal]) -> Self {
        ClauseTable { slots: clause.to_vec() }
    }

    pub fn width(&self) -> usize {
        self.slots.len()
    }

    /// Number of rows, `2^width`.
    pub fn rows(&self) -> usize {
        1usize << self.slots.len()
    }

    fn slot_value(&self, alpha: usize, t: usize) -> bool {
        let w = self.slots.len();
        (alpha >> (w - 1 - t)) & 1 == 1
    }

    /// The partial assignment of row `alpha`, or `None` if the row assigns
    /// some repeated variable inconsistently.
    pub fn row_assignment(&self, alpha: usize) -> Option<Vec<(usize, bool)>> {
        let mut pairs: Vec<(usize, bool)> = Vec::with_capacity(self.slots.len());
        for (t, lit) in self.slots.iter().enumerate() {
            let value = self.slot_value(alpha, t);
            match pairs.iter().find(|(v, _)| *v == lit.var) {
                Some(&(_, prev)) if prev != value => return None,
                Some(_) => {}
                None => pairs.push((lit.var, value)),
            }
        }
        Some(pairs)
    }

    /// Whether row `alpha` makes the clause true (false for inconsistent
    /// rows).
    pub fn row_satisfies(&self, alpha: usize) -> bool {
        if self.row_assignment(alpha).is_none() {
            return false;
        }
        self.slots
            .iter()
            .enumerate()
            .any(|(t, lit)| self.slot_value(alpha, t) ^ lit.negated)
    }
}

/// Compatibility of two truth-table rows: both rows internally consistent,
/// agreeing on shared variables, and both making their clauses true.
pub fn rows_compatible(a: &ClauseTable, alpha: usize, b: &ClauseTable, beta: usize) -> bool {
    let Some(pa) = a.row_assignment(alpha) else { return false };
    let Some(pb) = b.row_assignment(beta) else { return false };
    let consistent = pa
        .iter()
        .all(|&(v, val)| pb.iter().all(|&(w, wal)| v != w || val == wal));
    consistent && a.row_satisfies(alpha) && b.row_satisfies(beta)
}

/// Pads every clause to exactly `width` literals by repeating its last
/// literal.  Fails if some clause is wider.
pub fn pad_clauses_to_width(f: &CnfFormula, width: usize) -> Result<CnfFormula, ReductionError> {
    let mut clauses = Vec::with_capacity(f.clauses.len());
    for clause in &f.clauses {
        if clause.len() > width {
            return Err(ReductionError::ClauseTooWide { got: clause.len(), want: width });
        }
        let mut padded = clause.clone();
        let last = *padded.last().expect("clauses are nonempty");
        while padded.len() < width {
            padded.push(last);
        }
        clauses.push(padded);
    }
    Ok(CnfFormula { nvars: f.nvars, clauses })
}

/// Anchor positions of a box-structured pattern: the upper-left corner of
/// each diagonal block, given the block heights.
fn block_offsets(sizes: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        offsets.push(acc);
        acc += s;
    }
    offsets
}

/// Box-grid pattern: all zeros except a 1 at the upper-left corner of every
/// block (diagonal blocks included).
fn anchored_pattern(sizes: &[usize]) -> RatMatrix {
    let total: usize = sizes.iter().sum();
    let offsets = block_offsets(sizes);
    let mut s = RatMatrix::zeros(total, total);
    for &a in &offsets {
        for &b in &offsets {
            s.set(a, b, Rat::one());
        }
    }
    s
}

/// Fixed-width satisfiability (2-SAT for `width = 2`, 3-SAT for `width =
/// 3`): clauses are padded to the width, the instance is the row
/// compatibility matrix over the clause truth tables (diagonal boxes are
/// identities), and the pattern asks for one pairwise-compatible row per
/// clause.
pub fn build_ksat_pair(f: &CnfFormula, width: usize) -> Result<InstancePair, ReductionError> {
    let provenance = match width {
        2 => Provenance::TwoSat,
        3 => Provenance::ThreeSat,
        other => return Err(ReductionError::UnsupportedWidth(other)),
    };
    if f.clauses.is_empty() {
        return Err(ReductionError::EmptyFormula);
    }
    let padded = pad_clauses_to_width(f, width)?;
    let tables: Vec<ClauseTable> =
        padded.clauses.iter().map(|c| ClauseTable::new(c)).collect();
    let rows = 1usize << width;
    let sizes = vec![rows; tables.len()];
    let offsets = block_offsets(&sizes);
    let total = rows * tables.len();
    let mut g = RatMatrix::zeros(total, total);
    for (i, ti) in tables.iter().enumerate() {
        for (j, tj) in tables.iter().enumerate() {
            for alpha in 0..rows {
                for beta in 0..rows {
                    let on = if i == j {
                        alpha == beta
                    } else {
                        rows_compatible(ti, alpha, tj, beta)
                    };
                    if on {
                        g.set(offsets[i] + alpha, offsets[j] + beta, Rat::one());
                    }
                }
            }
        }
    }
    InstancePair::new(g, anchored_pattern(&sizes), Relation::Cover, provenance)
}

/// General satisfiability via literal compatibility: block `(i, j)` has a 0
/// exactly where literal `alpha` of clause `i` is the complement of literal
/// `beta` of clause `j`; diagonal boxes are identities.  The pattern asks
/// for one literal per clause, pairwise non-complementary.
pub fn build_sat_pair(f: &CnfFormula) -> Result<InstancePair, ReductionError> {
    if f.clauses.is_empty() {
        return Err(ReductionError::EmptyFormula);
    }
    let sizes: Vec<usize> = f.clauses.iter().map(Vec::len).collect();
    let offsets = block_offsets(&sizes);
    let total: usize = sizes.iter().sum();
    let mut g = RatMatrix::zeros(total, total);
    for (i, ci) in f.clauses.iter().enumerate() {
        for (j, cj) in f.clauses.iter().enumerate() {
            for (alpha, la) in ci.iter().enumerate() {
                for (beta, lb) in cj.iter().enumerate() {
                    let on = if i == j { alpha == beta } else { *la != lb.complement() };
                    if on {
                        g.set(offsets[i] + alpha, offsets[j] + beta, Rat::one());
                    }
                }
            }
        }
    }
    InstancePair::new(g, anchored_pattern(&sizes), Relation::Cover, Provenance::Sat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn patterns_have_expected_support() {
        let c = clique_pattern(3);
        assert_eq!(c.total(), int(6));
        assert!(c.at(0, 0).is_zero() && c.at(1, 2).is_one());

        let hc = hc_pattern(4);
        assert!(hc.at(0, 3).is_one());
        assert!(hc.at(1, 0).is_one() && hc.at(2, 1).is_one() && hc.at(3, 2).is_one());
        assert_eq!(hc.total(), int(4));
        // Row/column sums are all 1: a circular permutation matrix.
        assert!(hc.row_sums().iter().all(|v| v.is_one()));
        assert!(hc.col_sums().iter().all(|v| v.is_one()));

        let hp = hp_pattern(4);
        assert!(hp.at(0, 3).is_zero());
        assert_eq!(hp.total(), int(3));

        let m = matching_pattern(2);
        assert!(m.at(0, 1).is_one() && m.at(2, 3).is_one());
        assert_eq!(m.total(), int(2));
    }

    use num_traits::{One, Zero};

    #[test]
    fn pair_checks_assignments() {
        // Instance: 3-cycle 1 -> 2 -> 3 -> 1; pattern: 2-path.
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let s = DigraphInstance::from_arcs(2, &[(1, 2)]).unwrap();
        let pair = build_subgi_pair(&g, &s).unwrap();
        assert_eq!(pair.m(), 2);
        assert!(pair.check_partial(&[0, 1])); // g has arc 1 -> 2
        assert!(!pair.check_partial(&[1, 0])); // but not 2 -> 1
        let psi = pair.extend_partial(&[2, 0]); // 3 -> 1 is an arc
        assert_eq!(psi.image(), &[2, 0, 1]);
        assert!(pair.check_assignment(&psi));
    }

    #[test]
    fn pair_serde_round_trip() {
        let g = DigraphInstance::from_arcs(2, &[(1, 2)]).unwrap();
        let pair = build_hp_pair(&g).unwrap();
        let json = serde_json::to_value(&pair).unwrap();
        assert_eq!(json["relation"], "cover");
        assert_eq!(json["provenance"], "hp");
        assert_eq!(json["m"], 2);
        let back: InstancePair = serde_json::from_value(json).unwrap();
        back.validate().unwrap();
        assert_eq!(back.s.entries(), pair.s.entries());
    }

    #[test]
    fn provenance_strings() {
        for (p, s) in [
            (Provenance::SubGi, "\"subgi\""),
            (Provenance::PerfectMatching, "\"perfect-matching\""),
            (Provenance::TwoSat, "\"2sat\""),
            (Provenance::ThreeSat, "\"3sat\""),
        ] {
            assert_eq!(serde_json::to_string(&p).unwrap(), s);
        }
    }

    #[test]
    fn truth_table_row_conventions() {
        // Clause x1 | !x2: row 0 assigns both false.
        let t = ClauseTable::new(&[Literal::pos(1), Literal::neg(2)]);
        assert_eq!(t.rows(), 4);
        assert_eq!(t.row_assignment(0).unwrap(), vec![(1, false), (2, false)]);
        // Last slot alternates fastest: row 1 is (x1=false, x2=true).
        assert_eq!(t.row_assignment(1).unwrap(), vec![(1, false), (2, true)]);
        assert_eq!(t.row_assignment(2).unwrap(), vec![(1, true), (2, false)]);
        // Row 0: x1=false, x2=false -> !x2 true -> clause satisfied.
        assert!(t.row_satisfies(0));
        // Row 1: x1=false, x2=true -> both literals false.
        assert!(!t.row_satisfies(1));
    }

    #[test]
    fn repeated_variable_rows_are_inconsistent() {
        let t = ClauseTable::new(&[Literal::pos(1), Literal::pos(1)]);
        assert!(t.row_assignment(0).is_some());
        assert!(t.row_assignment(1).is_none());
        assert!(t.row_assignment(2).is_none());
        assert!(t.row_assignment(3).is_some());
        assert!(!t.row_satisfies(1));
        assert!(!rows_compatible(&t, 1, &t, 1));
    }

    #[test]
    fn ksat_pair_structure() {
        let f = CnfFormula::from_codes(2, &[&[1, 2], &[-1, 2]]).unwrap();
        let pair = build_ksat_pair(&f, 2).unwrap();
        assert_eq!(pair.n(), 8);
        assert_eq!(pair.m(), 8);
        // Diagonal boxes are identities.
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(pair.g.at(a, b).is_one(), a == b);
                assert_eq!(pair.g.at(4 + a, 4 + b).is_one(), a == b);
            }
        }
        // Both clauses true and consistent: e.g. row 3 of clause 1
        // (x1=t, x2=t) with row 1 of clause 2 (x1=f? no: slot order !x1, x2:
        // row 1 is x1=false, x2=true) conflicts on x1; row 3 of clause 2 is
        // (x1=true, x2=true): compatible.
        assert!(pair.g.at(3, 4 + 3).is_one());
        assert!(pair.g.at(3, 4 + 1).is_zero());
        // Pattern anchors at box corners.
        assert!(pair.s.at(0, 0).is_one() && pair.s.at(0, 4).is_one() && pair.s.at(4, 0).is_one());
        assert_eq!(pair.s.total(), int(4));
        // Active roles are exactly the anchors.
        assert_eq!(pair.active_roles(), vec![0, 4]);
    }

    #[test]
    fn sat_pair_blocks() {
        // (x1) & (!x1 | x2): literal 0 of clause 1 conflicts with literal 0
        // of clause 2.
        let f = CnfFormula::from_codes(2, &[&[1], &[-1, 2]]).unwrap();
        let pair = build_sat_pair(&f).unwrap();
        assert_eq!(pair.n(), 3);
        assert!(pair.g.at(0, 1).is_zero());
        assert!(pair.g.at(0, 2).is_one());
        assert!(pair.g.at(1, 0).is_zero());
        assert!(pair.g.at(0, 0).is_one() && pair.g.at(1, 1).is_one());
        assert_eq!(pair.active_roles(), vec![0, 1]);
    }

    #[test]
    fn padding_repeats_last_literal() {
        let f = CnfFormula::from_codes(3, &[&[1], &[2, -3]]).unwrap();
        let padded = pad_clauses_to_width(&f, 3).unwrap();
        assert_eq!(padded.clauses[0], vec![Literal::pos(1); 3]);
        assert_eq!(
            padded.clauses[1],
            vec![Literal::pos(2), Literal::neg(3), Literal::neg(3)]
        );
        assert!(pad_clauses_to_width(&padded, 2).is_err());
    }

    #[test]
    fn perfect_matching_requires_even() {
        let g = DigraphInstance::from_arcs(3, &[(1, 2), (2, 1)]).unwrap();
        assert!(matches!(
            build_perfect_matching_pair(&g),
            Err(ReductionError::OddPerfectMatching(3))
        ));
    }
}
