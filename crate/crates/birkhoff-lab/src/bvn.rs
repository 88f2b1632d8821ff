//! Birkhoff–von Neumann machinery: permutation extraction, decomposition of
//! doubly stochastic matrices, term-count reduction, and affine bases of
//! permutation families.

use crate::mat::{is_doubly_substochastic, MatError, PermMatrix, RatMatrix};
use crate::rat::Rat;
use crate::solve::Echelon;
use num_traits::{One, Zero};

/// One extraction step: the lexicographically least permutation inside the
/// support, with the largest coefficient removable along it.
#[derive(Clone, Debug)]
pub struct BvnExtraction {
    pub perm: PermMatrix,
    pub coefficient: Rat,
}

/// Kuhn's augmenting-path matching on an explicit bipartite support:
/// `support[r][c]` allows row `r` to take column `c`.  Returns a full
/// row-perfect matching as `col_of_row`, if one exists.
fn perfect_matching(support: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = support.len();
    let mut row_of_col = vec![usize::MAX; n];

    fn augment(
        r: usize,
        support: &[Vec<bool>],
        row_of_col: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for c in 0..support.len() {
            if support[r][c] && !visited[c] {
                visited[c] = true;
                if row_of_col[c] == usize::MAX
                    || augment(row_of_col[c], support, row_of_col, visited)
                {
                    row_of_col[c] = r;
                    return true;
                }
            }
        }
        false
    }

    for r in 0..n {
        let mut visited = vec![false; n];
        if !augment(r, support, &mut row_of_col, &mut visited) {
            return None;
        }
    }
    let mut col_of_row = vec![usize::MAX; n];
    for (c, &r) in row_of_col.iter().enumerate() {
        col_of_row[r] = c;
    }
    Some(col_of_row)
}

/// Extracts the lexicographically least admissible permutation from the
/// support of a doubly stochastic matrix.
///
/// A cell is admissible only when choosing it leaves the remaining rows a
/// perfect matching inside the support — greedily taking any nonzero cell
/// can dead-end even though the full support always has a matching.  Rows
/// are scanned in order, each taking its least admissible column, so the
/// result is the lex-least support permutation.  The coefficient is the
/// minimum entry along the chosen cells.
pub fn bvn_extract_permutation(x: &RatMatrix) -> Result<BvnExtraction, MatError> {
    let report = is_doubly_substochastic(x)?;
    if !report.is_doubly_stochastic() {
        return Err(MatError::NotDoublyStochastic("input must be doubly stochastic".into()));
    }
    let n = x.rows();
    if n == 0 {
        return Err(MatError::EmptyFamily);
    }
    let mut support: Vec<Vec<bool>> =
        (0..n).map(|r| (0..n).map(|c| !x.at(r, c).is_zero()).collect()).collect();
    debug_assert!(perfect_matching(&support).is_some(), "stochastic support has a matching");

    let mut image = Vec::with_capacity(n);
    let mut used_col = vec![false; n];
    for r in 0..n {
        let mut picked = None;
        for c in 0..n {
            if used_col[c] || !support[r][c] {
                continue;
            }
            // Tentatively fix (r, c) and test the rest for a matching:
            // rows <= r match their already-picked columns trivially.
            let saved_row = std::mem::replace(
                &mut support[r],
                (0..n).map(|cc| cc == c).collect(),
            );
            let saved_col: Vec<bool> = (0..n).map(|rr| support[rr][c]).collect();
            for rr in 0..n {
                if rr != r {
                    support[rr][c] = false;
                }
            }
            let ok = perfect_matching(&support).is_some();
            if ok {
                picked = Some(c);
                // Keep the restriction: (r, c) is final.
                break;
            }
            support[r] = saved_row;
            for rr in 0..n {
                support[rr][c] = saved_col[rr];
            }
        }
        let c = picked.expect("an admissible column exists at every step");
        used_col[c] = true;
        image.push(c);
    }

    let perm = PermMatrix::from_image(image)?;
    let coefficient = (0..n)
        .map(|r| x.at(r, perm.col_of_row(r)).clone())
        .min()
        .expect("n > 0");
    Ok(BvnExtraction { perm, coefficient })
}

/// Decomposes a doubly stochastic matrix into a convex combination of
/// permutation matrices by repeated extraction; coefficients are positive
/// and sum to 1.  When the greedy term count exceeds the Carathéodory bound
/// `(n-1)^2 + 1`, the combination is reduced to at most that many terms.
pub fn bvn_decompose(x: &RatMatrix) -> Result<Vec<(Rat, PermMatrix)>, MatError> {
    let report = is_doubly_substochastic(x)?;
    if !report.is_doubly_stochastic() {
        return Err(MatError::NotDoublyStochastic("input must be doubly stochastic".into()));
    }
    let n = x.rows();
    if n == 0 {
        return Err(MatError::EmptyFamily);
    }
    let mut rest = x.clone();
    let mut terms: Vec<(Rat, PermMatrix)> = Vec::new();
    let mut remaining_mass = Rat::one();
    while !remaining_mass.is_zero() {
        // Rescale so the extraction sees a doubly stochastic matrix.
        let scaled = rest.scale(&(Rat::one() / &remaining_mass));
        let step = bvn_extract_permutation(&scaled)?;
        let alpha = &step.coefficient * &remaining_mass;
        rest = rest.sub(&step.perm.to_matrix().scale(&alpha)).expect("same shape");
        debug_assert!(rest.is_nonneg());
        remaining_mass -= &alpha;
        terms.push((alpha, step.perm));
    }
    let bound = (n - 1) * (n - 1) + 1;
    if terms.len() > bound {
        terms = caratheodory_reduce(terms, bound);
        debug_assert!(terms.len() <= bound);
    }
    Ok(terms)
}

/// Reduces a convex combination of permutation matrices to at most `bound`
/// terms without changing its value: while more terms remain, an affine
/// dependency among the vectorized permutations is shifted until some
/// coefficient hits zero.
pub fn caratheodory_reduce(
    mut terms: Vec<(Rat, PermMatrix)>,
    bound: usize,
) -> Vec<(Rat, PermMatrix)> {
    while terms.len() > bound {
        let Some(dep) = affine_dependency(&terms) else {
            // Affinely independent terms cannot be reduced further.
            return terms;
        };
        // Largest step keeping all coefficients nonnegative; exists because
        // the dependency has both signs (its entries sum to zero).
        let t = terms
            .iter()
            .zip(&dep)
            .filter(|(_, c)| c > &&Rat::zero())
            .map(|((lambda, _), c)| lambda / c)
            .min()
            .expect("dependency has a positive entry");
        for ((lambda, _), c) in terms.iter_mut().zip(&dep) {
            *lambda -= &t * c;
        }
        terms.retain(|(lambda, _)| !lambda.is_zero());
    }
    terms
}

/// A nontrivial vector `c` with `sum_i c_i * vec(P_i) = 0` and
/// `sum_i c_i = 0`, or `None` when the terms are affinely independent.
fn affine_dependency(terms: &[(Rat, PermMatrix)]) -> Option<Vec<Rat>> {
    let t = terms.len();
    let n = terms[0].1.n();
    let rows = n * n + 1;
    // Columns are vectorized permutations with an appended 1; reduce and
    // take the first free column.
    let mut a: Vec<Vec<Rat>> = vec![vec![Rat::zero(); t]; rows];
    for (j, (_, p)) in terms.iter().enumerate() {
        for r in 0..n {
            a[r * n + p.col_of_row(r)][j] = Rat::one();
        }
        a[n * n][j] = Rat::one();
    }
    // Gauss-Jordan to reduced row echelon form with pivot bookkeeping.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..t {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = Rat::one() / &a[row][col];
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for cc in 0..t {
                    let delta = &f * &a[row][cc];
                    a[r][cc] -= delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..t).find(|c| !pivot_cols.contains(c))?;
    let mut dep = vec![Rat::zero(); t];
    dep[free] = Rat::one();
    for &(r, c) in &pivots {
        dep[c] = -a[r][free].clone();
    }
    Some(dep)
}

/// Greedily selects an affinely independent subfamily: indices whose
/// vectorized permutation (with appended 1) grows the rank, in the order
/// given.
pub fn greedy_affine_basis(family: &[PermMatrix]) -> Vec<usize> {
    let Some(first) = family.first() else { return Vec::new() };
    let n = first.n();
    let mut ech = Echelon::new(n * n + 1);
    let mut kept = Vec::new();
    for (i, p) in family.iter().enumerate() {
        let mut v = vec![Rat::zero(); n * n + 1];
        for r in 0..n {
            v[r * n + p.col_of_row(r)] = Rat::one();
        }
        v[n * n] = Rat::one();
        if ech.insert(v) {
            kept.push(i);
        }
    }
    kept
}

/// Completes a doubly substochastic matrix to a doubly stochastic one by
/// filling slack greedily: repeatedly add the joint slack of the first
/// deficient row and first deficient column at their crossing.
pub fn complete_to_doubly_stochastic(x: &RatMatrix) -> Result<RatMatrix, MatError> {
    let report = is_doubly_substochastic(x)?;
    if !report.ok {
        return Err(MatError::NotDoublyStochastic("input must be doubly substochastic".into()));
    }
    let n = x.rows();
    let mut out = x.clone();
    loop {
        let rows = out.row_sums();
        let one = Rat::one();
        let Some(r) = (0..n).find(|&r| rows[r] < one) else { break };
        let cols = out.col_sums();
        let c = (0..n).find(|&c| cols[c] < one).expect("total row slack equals column slack");
        let add = std::cmp::min(&one - &rows[r], &one - &cols[c]);
        let cur = out.at(r, c).clone();
        out.set(r, c, cur + add);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn m(rows: &[&[Rat]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn half_j2() -> RatMatrix {
        RatMatrix::constant(2, 2, frac(1, 2))
    }

    #[test]
    fn extracts_identity_from_uniform() {
        let e = bvn_extract_permutation(&half_j2()).unwrap();
        assert_eq!(e.perm.image(), &[0, 1]);
        assert_eq!(e.coefficient, frac(1, 2));

        let third = RatMatrix::constant(3, 3, frac(1, 3));
        let e = bvn_extract_permutation(&third).unwrap();
        assert_eq!(e.perm.image(), &[0, 1, 2]);
        assert_eq!(e.coefficient, frac(1, 3));
    }

    #[test]
    fn extraction_avoids_dead_ends() {
        // Greedy-by-value would pick (0,0), (1,1) and strand row 2 on the
        // zero cell (2,2); the admissibility check must route around it.
        let x = m(&[
            &[frac(1, 4), frac(1, 4), frac(1, 2)],
            &[frac(1, 4), frac(1, 4), frac(1, 2)],
            &[frac(1, 2), frac(1, 2), int(0)],
        ]);
        let e = bvn_extract_permutation(&x).unwrap();
        assert_eq!(e.perm.image(), &[0, 2, 1]);
        assert_eq!(e.coefficient, frac(1, 4));
    }

    #[test]
    fn decomposes_small_matrices() {
        let terms = bvn_decompose(&half_j2()).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, frac(1, 2));
        assert_eq!(terms[0].1.image(), &[0, 1]);
        assert_eq!(terms[1].0, frac(1, 2));
        assert_eq!(terms[1].1.image(), &[1, 0]);

        let x = m(&[
            &[frac(1, 4), frac(3, 4)],
            &[frac(3, 4), frac(1, 4)],
        ]);
        let terms = bvn_decompose(&x).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, frac(1, 4));
        assert_eq!(terms[0].1.image(), &[0, 1]);
        assert_eq!(terms[1].0, frac(3, 4));
    }

    #[test]
    fn decomposition_reconstructs_exactly() {
        // A 4x4 doubly stochastic matrix with scattered support.
        let x = m(&[
            &[frac(1, 2), frac(1, 6), frac(1, 3), int(0)],
            &[frac(1, 6), frac(1, 2), int(0), frac(1, 3)],
            &[frac(1, 3), int(0), frac(1, 2), frac(1, 6)],
            &[int(0), frac(1, 3), frac(1, 6), frac(1, 2)],
        ]);
        let terms = bvn_decompose(&x).unwrap();
        let mut sum = RatMatrix::zeros(4, 4);
        let mut mass = int(0);
        for (lambda, p) in &terms {
            assert!(lambda > &int(0));
            mass += lambda;
            sum = sum.add(&p.to_matrix().scale(lambda)).unwrap();
            // Support containment: each used cell is in x's support.
            for r in 0..4 {
                assert!(!x.at(r, p.col_of_row(r)).is_zero());
            }
        }
        assert_eq!(mass, int(1));
        assert_eq!(sum.entries(), x.entries());
        assert!(terms.len() <= 3 * 3 + 1);
    }

    #[test]
    fn caratheodory_reduction_preserves_value() {
        // Uniform combination of all six 3x3 permutations: reducible to at
        // most (3-1)^2 + 1 = 5 terms, still summing to the flat matrix.
        let all = PermMatrix::all(3);
        let terms: Vec<(Rat, PermMatrix)> =
            all.iter().map(|p| (frac(1, 6), p.clone())).collect();
        let reduced = caratheodory_reduce(terms, 5);
        assert!(reduced.len() <= 5);
        let mut sum = RatMatrix::zeros(3, 3);
        let mut mass = int(0);
        for (lambda, p) in &reduced {
            assert!(lambda > &int(0));
            mass += lambda;
            sum = sum.add(&p.to_matrix().scale(lambda)).unwrap();
        }
        assert_eq!(mass, int(1));
        assert_eq!(sum.entries(), RatMatrix::constant(3, 3, frac(1, 3)).entries());
    }

    #[test]
    fn affine_basis_of_all_3x3_permutations() {
        // The Birkhoff polytope of order 3 has dimension 4: five of the six
        // permutations are affinely independent, the sixth is dependent.
        let kept = greedy_affine_basis(&PermMatrix::all(3));
        assert_eq!(kept, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn completes_substochastic_matrices() {
        let x = m(&[&[frac(1, 2), int(0)], &[int(0), int(0)]]);
        let full = complete_to_doubly_stochastic(&x).unwrap();
        assert_eq!(full.entries(), RatMatrix::identity(2).entries());
        assert!(is_doubly_substochastic(&full).unwrap().is_doubly_stochastic());

        // Already stochastic: unchanged.
        let done = complete_to_doubly_stochastic(&half_j2()).unwrap();
        assert_eq!(done.entries(), half_j2().entries());
    }

    #[test]
    fn rejects_non_stochastic_input() {
        let x = m(&[&[frac(1, 2), int(0)], &[int(0), int(0)]]);
        assert!(matches!(bvn_decompose(&x), Err(MatError::NotDoublyStochastic(_))));
        assert!(bvn_decompose(&RatMatrix::zeros(0, 0)).is_err());
    }
}
