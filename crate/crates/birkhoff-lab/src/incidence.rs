//! Incidence factorizations of adjacency matrices.
//!
//! A nonnegative integer matrix `G` factors as `G = O * I^T` where `O` and
//! `I` are 0/1 matrices with exactly one 1 per column: column `j` stands for
//! the `j`-th arc (entries with value `a` contribute `a` parallel arcs), `O`
//! marks sources, `I` marks targets.  Arc labels are assigned row-major with
//! parallel copies consecutive, so the factorization is canonical.

use crate::mat::{PermMatrix, RatMatrix};
use crate::rat::Rat;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IncidenceError {
    #[error("matrix must be nonnegative integer")]
    NotNonnegInteger,
    #[error("incidence matrices must share shape {0}x{1}")]
    ShapeMismatch(usize, usize),
    #[error("column {0} must contain exactly one 1 and zeros elsewhere")]
    BadColumn(usize),
    #[error("arc labels disagree with incidence columns at arc {0}")]
    LabelMismatch(usize),
}

mod labels_one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(usize, usize)], s: S) -> Result<S::Ok, S::Error> {
        let shifted: Vec<[usize; 2]> = v.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
        shifted.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(usize, usize)>, D::Error> {
        let raw = Vec::<[usize; 2]>::deserialize(d)?;
        raw.iter()
            .map(|&[a, b]| {
                if a == 0 || b == 0 {
                    Err(serde::de::Error::custom("arc labels are 1-based"))
                } else {
                    Ok((a - 1, b - 1))
                }
            })
            .collect()
    }
}

/// An incidence factorization: out-matrix, in-matrix, and the arc list
/// (`labels[j] = (source, target)`, 0-based in code, 1-based in JSON).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IncidencePair {
    #[serde(rename = "O")]
    pub o: RatMatrix,
    #[serde(rename = "I")]
    pub i: RatMatrix,
    #[serde(rename = "arc_labels", with = "labels_one_based")]
    pub labels: Vec<(usize, usize)>,
}

impl IncidencePair {
    /// Number of vertices (rows).
    pub fn vertices(&self) -> usize {
        self.o.rows()
    }

    /// Number of arcs (columns).
    pub fn arcs(&self) -> usize {
        self.o.cols()
    }

    /// The adjacency matrix `O * I^T`.
    pub fn reconstruct(&self) -> RatMatrix {
        self.o.mul(&self.i.transpose()).expect("shapes agree")
    }

    /// Pads both factors with zero rows (added isolated vertices).
    pub fn pad_vertices(&self, n: usize) -> IncidencePair {
        IncidencePair {
            o: self.o.pad_to(n, self.o.cols()).expect("padding grows"),
            i: self.i.pad_to(n, self.i.cols()).expect("padding grows"),
            labels: self.labels.clone(),
        }
    }
}

/// Factors a nonnegative integer matrix, labeling arcs row-major with
/// parallel copies consecutive.
pub fn incidence_decompose(g: &RatMatrix) -> Result<IncidencePair, IncidenceError> {
    if !g.is_nonneg_integer() {
        return Err(IncidenceError::NotNonnegInteger);
    }
    let (rows, cols) = (g.rows(), g.cols());
    let mut labels = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let count: i64 = g.at(r, c).numer().try_into().expect("small multiplicity");
            for _ in 0..count {
                labels.push((r, c));
            }
        }
    }
    let k = labels.len();
    let mut o = RatMatrix::zeros(rows, k);
    let mut i = RatMatrix::zeros(cols, k);
    for (j, &(src, tgt)) in labels.iter().enumerate() {
        o.set(src, j, Rat::one());
        i.set(tgt, j, Rat::one());
    }
    Ok(IncidencePair { o, i, labels })
}

/// Structural facts read off an incidence pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceReport {
    /// Vertices with no outgoing arc (zero rows of the out-matrix).
    pub sinks: Vec<usize>,
    /// Vertices with no incoming arc (zero rows of the in-matrix).
    pub sources: Vec<usize>,
    /// Vertices that are both.
    pub isolated: Vec<usize>,
}

/// Validates the one-1-per-column shape of both factors, their agreement
/// with the arc labels, and reports sinks/sources/isolated vertices.
pub fn check_incidence_structure(pair: &IncidencePair) -> Result<IncidenceReport, IncidenceError> {
    let (n_out, k) = (pair.o.rows(), pair.o.cols());
    let (n_in, k_in) = (pair.i.rows(), pair.i.cols());
    if k != k_in || k != pair.labels.len() {
        return Err(IncidenceError::ShapeMismatch(n_out, k));
    }
    for (m, want_row) in [(&pair.o, 0usize), (&pair.i, 1usize)] {
        for j in 0..k {
            let mut hit = None;
            for r in 0..m.rows() {
                let v = m.at(r, j);
                if v.is_one() {
                    if hit.replace(r).is_some() {
                        return Err(IncidenceError::BadColumn(j));
                    }
                } else if !v.is_zero() {
                    return Err(IncidenceError::BadColumn(j));
                }
            }
            let Some(r) = hit else {
                return Err(IncidenceError::BadColumn(j));
            };
            let expect = if want_row == 0 { pair.labels[j].0 } else { pair.labels[j].1 };
            if r != expect {
                return Err(IncidenceError::LabelMismatch(j));
            }
        }
    }
    let zero_rows = |m: &RatMatrix| -> Vec<usize> {
        (0..m.rows()).filter(|&r| m.row(r).iter().all(Rat::is_zero)).collect()
    };
    let sinks = zero_rows(&pair.o);
    let sources = zero_rows(&pair.i);
    let isolated = sinks.iter().copied().filter(|v| sources.contains(v)).collect();
    let _ = n_in;
    Ok(IncidenceReport { sinks, sources, isolated })
}

/// Incidence factorization of the circular pattern with arcs labeled by
/// their end-vertex: arc `j` runs `(j+1 mod n) -> j`, so the out-matrix is
/// the pattern itself and the in-matrix is the identity.
pub fn hc_incidence_pattern(n: usize) -> IncidencePair {
    let o = crate::reductions::hc_pattern(n);
    let i = RatMatrix::identity(n);
    let labels = (0..n).map(|j| ((j + 1) % n, j)).collect();
    IncidencePair { o, i, labels }
}

/// The quadratic side condition on the arc unknown: `Z D Z^T <= U_k` with
/// `D = diag(1 x l, 0)`.  For a doubly stochastic `Z` this forces the first
/// `l` columns to be unit columns.
pub fn check_quadratic_condition(z: &RatMatrix, l: usize) -> bool {
    let k = z.rows();
    if !z.is_square() || l > k {
        return false;
    }
    for a in 0..k {
        for b in 0..k {
            let dot: Rat = (0..l).map(|c| z.at(a, c) * z.at(b, c)).sum();
            let limit = if a == b { Rat::one() } else { Rat::zero() };
            if dot > limit {
                return false;
            }
        }
    }
    true
}

/// Derives the arc relabeling induced by a vertex assignment: pattern arc
/// slot `b` (an arc `u -> v` of the pattern) takes the first unused arc
/// `psi(u) -> psi(v)` of the instance; leftover arcs fill the remaining
/// slots in label order.  Returns `None` if some slot cannot be served,
/// which cannot happen when `psi` is a cover assignment.
pub fn arc_relabel_for(
    og: &RatMatrix,
    ig: &RatMatrix,
    os: &RatMatrix,
    is_: &RatMatrix,
    psi: &PermMatrix,
) -> Option<PermMatrix> {
    let k = og.cols();
    let l = os.cols();
    assert!(l <= k, "pattern cannot have more arcs than the instance");
    let src_of = |m: &RatMatrix, col: usize| -> usize {
        (0..m.rows()).find(|&r| !m.at(r, col).is_zero()).expect("incidence column has a 1")
    };
    // slot_of_arc[a] = slot index for instance arc a.
    let mut slot_of_arc = vec![usize::MAX; k];
    let mut arc_used = vec![false; k];
    for b in 0..l {
        let want_src = psi.col_of_row(src_of(os, b));
        let want_tgt = psi.col_of_row(src_of(is_, b));
        let found = (0..k).find(|&a| {
            !arc_used[a] && src_of(og, a) == want_src && src_of(ig, a) == want_tgt
        })?;
        arc_used[found] = true;
        slot_of_arc[found] = b;
    }
    let mut next = l;
    for a in 0..k {
        if !arc_used[a] {
            slot_of_arc[a] = next;
            next += 1;
        }
    }
    Some(PermMatrix::from_image(slot_of_arc).expect("slots form a bijection"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn decomposes_two_cycle() {
        // Arcs row-major: (0,1) then (1,0): out-matrix is the identity,
        // in-matrix the swap.
        let g = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let pair = incidence_decompose(&g).unwrap();
        assert_eq!(pair.labels, vec![(0, 1), (1, 0)]);
        assert_eq!(pair.o.entries(), RatMatrix::identity(2).entries());
        assert_eq!(pair.i.entries(), RatMatrix::from_ints(&[&[0, 1], &[1, 0]]).entries());
        assert_eq!(pair.reconstruct().entries(), g.entries());
        check_incidence_structure(&pair).unwrap();
    }

    #[test]
    fn parallel_arcs_get_consecutive_labels() {
        let g = RatMatrix::from_ints(&[&[0, 2], &[0, 0]]);
        let pair = incidence_decompose(&g).unwrap();
        assert_eq!(pair.labels, vec![(0, 1), (0, 1)]);
        assert_eq!(pair.arcs(), 2);
        assert_eq!(pair.reconstruct().entries(), g.entries());
        let report = check_incidence_structure(&pair).unwrap();
        assert_eq!(report.sinks, vec![1]);
        assert_eq!(report.sources, vec![0]);
        assert!(report.isolated.is_empty());
    }

    #[test]
    fn isolated_vertices_are_sinks_and_sources() {
        let g = RatMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let pair = incidence_decompose(&g).unwrap();
        let report = check_incidence_structure(&pair).unwrap();
        assert_eq!(report.sinks, vec![1, 2]);
        assert_eq!(report.sources, vec![0, 2]);
        assert_eq!(report.isolated, vec![2]);
    }

    #[test]
    fn hc_pattern_factorization() {
        let pair = hc_incidence_pattern(3);
        assert_eq!(pair.labels, vec![(1, 0), (2, 1), (0, 2)]);
        assert_eq!(pair.reconstruct().entries(), crate::reductions::hc_pattern(3).entries());
        assert_eq!(pair.i.entries(), RatMatrix::identity(3).entries());
        check_incidence_structure(&pair).unwrap();
    }

    #[test]
    fn rejects_fractional_input() {
        let g = RatMatrix::from_fn(1, 1, |_, _| frac(1, 2));
        assert!(matches!(incidence_decompose(&g), Err(IncidenceError::NotNonnegInteger)));
    }

    #[test]
    fn quadratic_condition_separates_permutations() {
        // A permutation matrix passes for any l.
        let z = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert!(check_quadratic_condition(&z, 1));
        assert!(check_quadratic_condition(&z, 2));
        // The flat doubly stochastic matrix fails already at l = 1.
        let flat = RatMatrix::constant(2, 2, frac(1, 2));
        assert!(!check_quadratic_condition(&flat, 1));
        // Degenerate l = 0 is vacuously fine.
        assert!(check_quadratic_condition(&flat, 0));
    }

    #[test]
    fn serde_uses_one_based_labels() {
        let pair = incidence_decompose(&RatMatrix::from_ints(&[&[0, 1], &[0, 0]])).unwrap();
        let json = serde_json::to_value(&pair).unwrap();
        assert_eq!(json["arc_labels"], serde_json::json!([[1, 2]]));
        let back: IncidencePair = serde_json::from_value(json).unwrap();
        assert_eq!(back.labels, vec![(0, 1)]);
        check_incidence_structure(&back).unwrap();
    }

    #[test]
    fn padding_adds_isolated_vertices() {
        let pair = incidence_decompose(&RatMatrix::from_ints(&[&[0, 1], &[0, 0]])).unwrap();
        let padded = pair.pad_vertices(4);
        assert_eq!(padded.vertices(), 4);
        let report = check_incidence_structure(&padded).unwrap();
        assert_eq!(report.isolated, vec![2, 3]);
    }
}
