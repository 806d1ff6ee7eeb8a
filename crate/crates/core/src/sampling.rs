//! Random polynomials and matrices for the randomized identity batches.
//!
//! Sampling is driven by [`SplitMix64`](crate::rng::SplitMix64) so a seed
//! reproduces a batch exactly, both in tests and in the CLI reports.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::graded_poly::{Generator, GradedPoly};
use crate::linalg::Matrix;
use crate::rational::{q, Ratio};
use crate::rng::SplitMix64;

/// Small nonzero rational with numerator in `-4..=4` and denominator 1..=3.
pub fn small_ratio(rng: &mut SplitMix64) -> Ratio {
    loop {
        let n = rng.int_in(-4, 4);
        if n != 0 {
            let d = rng.int_in(1, 3);
            return crate::rational::qq(n, d);
        }
    }
}

/// Random polynomial over `gens` with at most `max_terms` monomials, each of
/// total exponent at most `max_exp`. May be zero when unlucky; callers that
/// need nonzero input should resample.
pub fn random_poly(
    rng: &mut SplitMix64,
    gens: &[Generator],
    max_terms: usize,
    max_exp: u32,
) -> GradedPoly {
    let mut out = GradedPoly::zero();
    let terms = 1 + rng.below(max_terms as u64) as usize;
    for _ in 0..terms {
        let mut seq = Vec::new();
        let mut budget = 1 + rng.below(u64::from(max_exp)) as u32;
        while budget > 0 {
            let g = gens[rng.below(gens.len() as u64) as usize].clone();
            let e = if g.is_odd() {
                1
            } else {
                1 + rng.below(u64::from(budget)) as u32
            };
            let e = e.min(budget);
            seq.push((g, e));
            budget -= e;
            if rng.chance(1, 3) {
                break;
            }
        }
        out = &out + &GradedPoly::monomial(small_ratio(rng), &seq);
    }
    out
}

/// Random polynomial with every term of the same parity.
pub fn random_homogeneous_parity_poly(
    rng: &mut SplitMix64,
    gens: &[Generator],
    max_terms: usize,
    max_exp: u32,
) -> GradedPoly {
    for _ in 0..64 {
        let p = random_poly(rng, gens, max_terms, max_exp);
        let (even, odd) = p.parity_split();
        let pick = if rng.chance(1, 2) { even } else { odd };
        if !pick.is_zero() {
            return pick;
        }
    }
    GradedPoly::one()
}

/// Random symmetric positive-definite rational matrix, built as
/// `M^T M + I` from a random integer matrix `M`.
pub fn random_positive_definite(rng: &mut SplitMix64, n: usize) -> Matrix {
    let m: Matrix = (0..n)
        .map(|_| (0..n).map(|_| q(rng.int_in(-2, 2))).collect())
        .collect();
    let mt = crate::linalg::transpose(&m);
    let mut out = crate::linalg::mat_mul(&mt, &m);
    for (i, row) in out.iter_mut().enumerate() {
        row[i] += q(1);
    }
    out
}

/// Random antisymmetric invertible rational matrix of even size `2n`,
/// produced as a block perturbation of the standard symplectic form.
pub fn random_symplectic(rng: &mut SplitMix64, two_n: usize) -> Matrix {
    assert!(two_n % 2 == 0);
    loop {
        let mut m = crate::linalg::zeros(two_n, two_n);
        let n = two_n / 2;
        for i in 0..n {
            m[i][n + i] = q(1);
            m[n + i][i] = q(-1);
        }
        for i in 0..two_n {
            for j in i + 1..two_n {
                if rng.chance(1, 3) {
                    let v = q(rng.int_in(-2, 2));
                    m[i][j] += v.clone();
                    m[j][i] -= v;
                }
            }
        }
        if !crate::linalg::determinant(&m).is_zero() {
            return m;
        }
    }
}
