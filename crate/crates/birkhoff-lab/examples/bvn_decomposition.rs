//! Decomposing doubly stochastic matrices into permutation matrices.
//!
//! A doubly stochastic matrix is a convex combination of permutation
//! matrices.  The decomposition here is fully exact: rational weights,
//! greedy extraction along matchings in the support, and a term count
//! bounded by `(n-1)^2 + 1` via an affine-independence reduction.
//!
//! Run with: `cargo run --example bvn_decomposition`

use birkhoff_lab::bvn::{
    bvn_decompose, bvn_extract_permutation, complete_to_doubly_stochastic,
};
use birkhoff_lab::rat::{fmt_rat, frac, int};
use num_traits::Zero;
use birkhoff_lab::{PermMatrix, RatMatrix};

fn main() {
    // Mix four fixed permutations of S4 with weights 1/10, 2/10, 3/10, 4/10.
    let images: [Vec<usize>; 4] =
        [vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
    let weights = [frac(1, 10), frac(2, 10), frac(3, 10), frac(4, 10)];
    let mut mix = RatMatrix::zeros(4, 4);
    for (image, w) in images.iter().zip(&weights) {
        let p = PermMatrix::from_image(image.clone()).unwrap().to_matrix();
        mix = mix.add(&p.scale(w)).unwrap();
    }
    println!("input doubly stochastic matrix:\n{mix}");

    // One greedy extraction step: a permutation inside the support plus the
    // largest coefficient that keeps the remainder proportional.
    let first = bvn_extract_permutation(&mix).unwrap();
    println!(
        "first extraction: image {:?} with coefficient {}",
        first.perm.image(),
        fmt_rat(&first.coefficient)
    );

    // The full decomposition, then verify it exactly.
    let terms = bvn_decompose(&mix).unwrap();
    println!("\ndecomposition into {} terms:", terms.len());
    let mut rebuilt = RatMatrix::zeros(4, 4);
    let mut total = int(0);
    for (coeff, perm) in &terms {
        println!("  {}  x  image {:?}", fmt_rat(coeff), perm.image());
        assert!(coeff > &int(0));
        // Support inclusion: the permutation only uses nonzero entries.
        for (r, &c) in perm.image().iter().enumerate() {
            assert!(!mix.at(r, c).is_zero(), "extraction stayed inside the support");
        }
        rebuilt = rebuilt.add(&perm.to_matrix().scale(coeff)).unwrap();
        total += coeff.clone();
    }
    assert_eq!(rebuilt, mix, "the terms rebuild the input exactly");
    assert_eq!(total, int(1), "the weights form a convex combination");
    let bound = (4 - 1) * (4 - 1) + 1;
    assert!(terms.len() <= bound, "term count within the (n-1)^2 + 1 bound");
    println!("reconstruction exact; {} terms <= bound {bound}", terms.len());

    // The decomposition found a representation, not necessarily ours: the
    // matrix remembers only itself.
    if terms.len() != weights.len() {
        println!("(note: a different representation than the four-term input mix)");
    }

    // Substochastic matrices first get completed, then decomposed.
    let partial = RatMatrix::from_fn(3, 3, |r, c| if r == c { frac(1, 2) } else { int(0) });
    let completed = complete_to_doubly_stochastic(&partial).unwrap();
    println!("\nsubstochastic half-identity completed to:\n{completed}");
    let completed_terms = bvn_decompose(&completed).unwrap();
    println!("which decomposes into {} permutation terms", completed_terms.len());
    assert!(!completed_terms.is_empty());
}
