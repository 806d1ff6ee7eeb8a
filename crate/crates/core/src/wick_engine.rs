//! Gaussian moments and vertex correlators by exhaustive perfect-matching
//! enumeration, with diagram grouping and symmetry factors.
//!
//! Two independent evaluation routes are provided and cross-checked by the
//! test suites: the combinatorial route (`matching_sum`, `correlator`,
//! `diagram_expansion`) enumerates perfect matchings of vertex legs, and the
//! generating-function route (`operator_correlator`) applies the exponential
//! of a second-order contraction operator to the product of vertex
//! polynomials. Odd legs contract with the usual fermionic matching signs.
//!
//! Everything is formal: moments over a symmetric kernel are polynomials in
//! the symbol `1/α`, correlators over a factored symplectic kernel are
//! polynomials in the edge variables `t_{ij}` (so same-copy contractions
//! vanish identically).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::graded_poly::{Generator, GradedPoly};
use crate::graph_complex::{self, LabelledGraph};
use crate::linalg::{self, Matrix};
use crate::rational::{factorial, Ratio};

/// Default cap on the number of legs in a matching enumeration.
pub const DEFAULT_MAX_LEGS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WickError {
    TooManyLegs { legs: usize, cap: usize },
    IndexOutOfRange { index: usize, dim: usize },
    SingularOmega,
    NotAntisymmetric,
    UnknownVariable(String),
    /// Diagram grouping needs single-monomial vertices.
    NonMonomialVertex { vertex: usize },
}

impl fmt::Display for WickError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WickError::TooManyLegs { legs, cap } => {
                write!(f, "{legs} legs exceed the matching cap {cap}")
            }
            WickError::IndexOutOfRange { index, dim } => {
                write!(f, "coordinate index {index} outside dimension {dim}")
            }
            WickError::SingularOmega => write!(f, "symplectic matrix is singular"),
            WickError::NotAntisymmetric => write!(f, "matrix is not antisymmetric"),
            WickError::UnknownVariable(v) => write!(f, "unknown vertex variable `{v}`"),
            WickError::NonMonomialVertex { vertex } => {
                write!(f, "vertex {vertex} is not a single monomial")
            }
        }
    }
}

impl core::error::Error for WickError {}

/// The formal symbol `1/α` carried by symmetric-kernel moments.
pub fn alpha_inv() -> Generator {
    Generator::new("ainv", 0)
}

/// Ambient even coordinate `x^idx` (1-based) of a vertex polynomial.
pub fn ambient_even(idx: usize) -> Generator {
    Generator::new(format!("y{idx:02}"), 0)
}

/// Ambient odd coordinate `ψ^idx` (1-based) of a vertex polynomial.
pub fn ambient_odd(idx: usize) -> Generator {
    Generator::new(format!("w{idx:02}"), 1)
}

fn copy_even(copy: usize, idx: usize) -> Generator {
    Generator::new(format!("y{copy:02}_{idx:02}"), 0)
}

fn copy_odd(copy: usize, idx: usize) -> Generator {
    Generator::new(format!("w{copy:02}_{idx:02}"), 1)
}

/// One leg of a vertex: a single coordinate factor awaiting contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leg {
    pub copy: usize,
    pub index: usize,
    pub odd: bool,
}

/// The quadratic data defining pair contractions.
#[derive(Clone, Debug)]
pub enum QuadraticKernel {
    /// Symmetric inverse pairing: `⟨x^μ x^ν⟩ = Q^{μν}/α` (`α` formal when
    /// `symbolic_alpha`, otherwise 1). Legs live on one copy; loops allowed.
    Symmetric {
        q_inverse: Matrix,
        symbolic_alpha: bool,
    },
    /// Factored symplectic kernel on copies of `R^{2n}`:
    /// `⟨x_i^μ x_j^ν⟩ = (Ω^{-1})^{μν} t_{ij}` with `t_{ii} = 0`.
    FactoredSymplectic { omega_inverse: Matrix },
    /// Factored kernel on copies of `R^{2n|m}`: even legs contract with
    /// `Ω^{-1} t_{ij}`, odd legs with `η^{-1} t_{ij}` and fermionic matching
    /// signs.
    SuperSymplectic {
        omega_inverse: Matrix,
        eta_inverse: Matrix,
    },
}

impl QuadraticKernel {
    pub fn symmetric(q_inverse: Matrix) -> QuadraticKernel {
        QuadraticKernel::Symmetric {
            q_inverse,
            symbolic_alpha: true,
        }
    }

    /// Symmetric kernel with `α = 1` (used for concrete moment problems).
    pub fn symmetric_unit_alpha(q_inverse: Matrix) -> QuadraticKernel {
        QuadraticKernel::Symmetric {
            q_inverse,
            symbolic_alpha: false,
        }
    }

    /// Builds the factored kernel from the symplectic form itself.
    pub fn factored(omega: &Matrix) -> Result<QuadraticKernel, WickError> {
        if !linalg::is_antisymmetric(omega) {
            return Err(WickError::NotAntisymmetric);
        }
        let omega_inverse = linalg::inverse(omega).ok_or(WickError::SingularOmega)?;
        Ok(QuadraticKernel::FactoredSymplectic { omega_inverse })
    }

    pub fn super_symplectic(omega: &Matrix, eta: &Matrix) -> Result<QuadraticKernel, WickError> {
        if !linalg::is_antisymmetric(omega) {
            return Err(WickError::NotAntisymmetric);
        }
        if !linalg::is_symmetric(eta) {
            return Err(WickError::NotAntisymmetric);
        }
        let omega_inverse = linalg::inverse(omega).ok_or(WickError::SingularOmega)?;
        let eta_inverse = linalg::inverse(eta).ok_or(WickError::SingularOmega)?;
        Ok(QuadraticKernel::SuperSymplectic {
            omega_inverse,
            eta_inverse,
        })
    }

    fn even_dim(&self) -> usize {
        match self {
            QuadraticKernel::Symmetric { q_inverse, .. } => q_inverse.len(),
            QuadraticKernel::FactoredSymplectic { omega_inverse } => omega_inverse.len(),
            QuadraticKernel::SuperSymplectic { omega_inverse, .. } => omega_inverse.len(),
        }
    }

    fn odd_dim(&self) -> usize {
        match self {
            QuadraticKernel::SuperSymplectic { eta_inverse, .. } => eta_inverse.len(),
            _ => 0,
        }
    }

    /// Contraction value of an ordered leg pair; zero for mixed parities,
    /// unsupported odd legs, or same-copy factored contractions.
    pub fn pair_value(&self, a: &Leg, b: &Leg) -> Result<GradedPoly, WickError> {
        let check = |idx: usize, dim: usize| -> Result<(), WickError> {
            if idx == 0 || idx > dim {
                Err(WickError::IndexOutOfRange { index: idx, dim })
            } else {
                Ok(())
            }
        };
        if a.odd != b.odd {
            return Ok(GradedPoly::zero());
        }
        match self {
            QuadraticKernel::Symmetric {
                q_inverse,
                symbolic_alpha,
            } => {
                if a.odd {
                    return Ok(GradedPoly::zero());
                }
                check(a.index, q_inverse.len())?;
                check(b.index, q_inverse.len())?;
                let v = q_inverse[a.index - 1][b.index - 1].clone();
                if v.is_zero() {
                    return Ok(GradedPoly::zero());
                }
                if *symbolic_alpha {
                    Ok(GradedPoly::monomial(v, &[(alpha_inv(), 1)]))
                } else {
                    Ok(GradedPoly::constant(v))
                }
            }
            QuadraticKernel::FactoredSymplectic { omega_inverse } => {
                if a.odd {
                    return Ok(GradedPoly::zero());
                }
                check(a.index, omega_inverse.len())?;
                check(b.index, omega_inverse.len())?;
                let v = omega_inverse[a.index - 1][b.index - 1].clone();
                Ok(graph_complex::edge_poly(a.copy, b.copy).scale(&v))
            }
            QuadraticKernel::SuperSymplectic {
                omega_inverse,
                eta_inverse,
            } => {
                let m = if a.odd { eta_inverse } else { omega_inverse };
                check(a.index, m.len())?;
                check(b.index, m.len())?;
                let v = m[a.index - 1][b.index - 1].clone();
                Ok(graph_complex::edge_poly(a.copy, b.copy).scale(&v))
            }
        }
    }
}

/// A vertex: a polynomial insertion on one copy, pre-expanded into terms of
/// (coefficient, ordered leg list).
#[derive(Clone, Debug)]
pub struct Vertex {
    pub copy: usize,
    pub terms: Vec<(Ratio, Vec<Leg>)>,
}

impl Vertex {
    /// The 1D monomial `c·x^k` on `copy`.
    pub fn power_1d(copy: usize, k: usize, coeff: Ratio) -> Vertex {
        Vertex {
            copy,
            terms: vec![(
                coeff,
                (0..k)
                    .map(|_| Leg {
                        copy,
                        index: 1,
                        odd: false,
                    })
                    .collect(),
            )],
        }
    }

    /// Expands an ambient-variable polynomial (`ambient_even`/`ambient_odd`)
    /// into legs on `copy`.
    pub fn from_poly(copy: usize, poly: &GradedPoly) -> Result<Vertex, WickError> {
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let mut legs = Vec::new();
            for (g, e) in m.factors() {
                let name = g.name();
                let (odd, idx_str) = if let Some(rest) = name.strip_prefix('y') {
                    (false, rest)
                } else if let Some(rest) = name.strip_prefix('w') {
                    (true, rest)
                } else {
                    return Err(WickError::UnknownVariable(name.into()));
                };
                let Ok(index) = idx_str.parse::<usize>() else {
                    return Err(WickError::UnknownVariable(name.into()));
                };
                for _ in 0..*e {
                    legs.push(Leg { copy, index, odd });
                }
            }
            terms.push((c.clone(), legs));
        }
        Ok(Vertex { copy, terms })
    }

    pub fn max_valence(&self) -> usize {
        self.terms.iter().map(|(_, l)| l.len()).max().unwrap_or(0)
    }
}

/// Sum over perfect matchings of the product of pair values, with fermionic
/// signs for odd legs. Odd leg counts sum to zero.
pub fn matching_sum(
    legs: &[Leg],
    kernel: &QuadraticKernel,
    max_legs: usize,
) -> Result<GradedPoly, WickError> {
    if legs.len() > max_legs {
        return Err(WickError::TooManyLegs {
            legs: legs.len(),
            cap: max_legs,
        });
    }
    if legs.len() % 2 == 1 {
        return Ok(GradedPoly::zero());
    }
    fn rec(remaining: &[Leg], kernel: &QuadraticKernel) -> Result<GradedPoly, WickError> {
        let Some((first, rest)) = remaining.split_first() else {
            return Ok(GradedPoly::one());
        };
        let mut sum = GradedPoly::zero();
        for (j, partner) in rest.iter().enumerate() {
            let w = kernel.pair_value(first, partner)?;
            if w.is_zero() {
                continue;
            }
            let mut negative = false;
            if first.odd && partner.odd {
                let crossings = rest[..j].iter().filter(|l| l.odd).count();
                negative = crossings % 2 == 1;
            }
            let mut next = Vec::with_capacity(rest.len() - 1);
            next.extend_from_slice(&rest[..j]);
            next.extend_from_slice(&rest[j + 1..]);
            let sub = rec(&next, kernel)?;
            let contribution = &w * &sub;
            sum = if negative {
                &sum - &contribution
            } else {
                &sum + &contribution
            };
        }
        Ok(sum)
    }
    rec(legs, kernel)
}

/// Gaussian moment `⟨x^{μ_1} ... x^{μ_k}⟩` over a symmetric kernel
/// (1-based coordinate indices).
pub fn gaussian_moment(
    indices: &[usize],
    kernel: &QuadraticKernel,
    max_legs: usize,
) -> Result<GradedPoly, WickError> {
    let dim = kernel.even_dim();
    for &i in indices {
        if i == 0 || i > dim {
            return Err(WickError::IndexOutOfRange { index: i, dim });
        }
    }
    let legs: Vec<Leg> = indices
        .iter()
        .map(|&index| Leg {
            copy: 0,
            index,
            odd: false,
        })
        .collect();
    matching_sum(&legs, kernel, max_legs)
}

/// Full Wick sum of a vertex product, including the `1/p!` prefactor per
/// group of `p` identical vertices. `identical_groups` partitions the vertex
/// positions; singleton groups may be omitted.
pub fn correlator(
    vertices: &[Vertex],
    kernel: &QuadraticKernel,
    identical_groups: &[Vec<usize>],
    max_legs: usize,
) -> Result<GradedPoly, WickError> {
    let mut prefactor = Ratio::one();
    for set in identical_groups {
        prefactor /= factorial(set.len() as u64);
    }
    if vertices.iter().any(|v| v.terms.is_empty()) {
        return Ok(GradedPoly::zero());
    }
    let mut out = GradedPoly::zero();
    let mut combo = vec![0usize; vertices.len()];
    loop {
        let mut coeff = prefactor.clone();
        let mut legs = Vec::new();
        for (v, &t) in vertices.iter().zip(&combo) {
            let (c, ls) = &v.terms[t];
            coeff *= c;
            legs.extend_from_slice(ls);
        }
        if !coeff.is_zero() {
            let s = matching_sum(&legs, kernel, max_legs)?;
            out = &out + &s.scale(&coeff);
        }
        // advance the mixed-radix term counter
        let mut k = 0;
        loop {
            if k == vertices.len() {
                return Ok(out);
            }
            combo[k] += 1;
            if combo[k] < vertices[k].terms.len() {
                break;
            }
            combo[k] = 0;
            k += 1;
        }
    }
}

/// One diagram class of a Wick expansion.
#[derive(Clone, Debug)]
pub struct Diagram {
    /// Canonical contraction pattern (colors = identical-vertex groups).
    pub graph: LabelledGraph,
    /// Number of leg matchings realizing the pattern.
    pub count: u64,
    /// Symmetry factors (#P, #V, #L); #V counts only group-preserving
    /// vertex permutations.
    pub sym_p: Ratio,
    pub sym_v: Ratio,
    pub sym_l: Ratio,
    /// Total contraction value summed over the matchings of this class.
    pub weight: GradedPoly,
}

impl Diagram {
    pub fn aut_order(&self) -> Ratio {
        self.sym_p.clone() * &self.sym_v * &self.sym_l
    }
}

fn symmetry_factor_colored(g: &LabelledGraph, colors: &[usize]) -> (Ratio, Ratio, Ratio) {
    let mult = g.undirected_multiplicities();
    let mut p = Ratio::one();
    let mut loops = 0u32;
    for (&(a, b), &m) in &mult {
        p *= factorial(u64::from(m));
        if a == b {
            loops += m;
        }
    }
    let mut v = 0u64;
    for perm in graph_complex::permutations(g.n_vertices()) {
        if (1..=g.n_vertices()).any(|x| colors[x - 1] != colors[perm[x - 1] - 1]) {
            continue;
        }
        let mut mapped: alloc::collections::BTreeMap<(usize, usize), u32> =
            alloc::collections::BTreeMap::new();
        for (&(a, b), &m) in &mult {
            let (na, nb) = (perm[a - 1], perm[b - 1]);
            *mapped.entry((na.min(nb), na.max(nb))).or_insert(0) += m;
        }
        if mapped == mult {
            v += 1;
        }
    }
    let l = Ratio::from_integer(num_bigint::BigInt::from(2u64).pow(loops));
    (p, Ratio::from_integer(v.into()), l)
}

/// Groups the matchings of single-monomial vertices by the isomorphism class
/// of their contraction pattern. Vertices in different `identical_groups`
/// are never identified. Summing `count · weight` over the classes
/// reproduces the raw matching sum exactly.
pub fn diagram_expansion(
    vertices: &[Vertex],
    kernel: &QuadraticKernel,
    identical_groups: &[Vec<usize>],
    max_legs: usize,
) -> Result<Vec<Diagram>, WickError> {
    let n = vertices.len();
    let mut colors: Vec<usize> = (0..n).collect();
    for (gid, set) in identical_groups.iter().enumerate() {
        for &v in set {
            colors[v] = n + gid;
        }
    }
    let mut legs = Vec::new();
    let mut owner = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        if v.terms.len() != 1 || v.terms[0].1.iter().any(|l| l.odd) {
            return Err(WickError::NonMonomialVertex { vertex: vi });
        }
        for l in &v.terms[0].1 {
            legs.push(*l);
            owner.push(vi + 1);
        }
    }
    if legs.len() > max_legs {
        return Err(WickError::TooManyLegs {
            legs: legs.len(),
            cap: max_legs,
        });
    }
    if legs.len() % 2 == 1 {
        return Ok(Vec::new());
    }
    // enumerate matchings as index pairings of positions
    let mut diagrams: alloc::collections::BTreeMap<LabelledGraph, (u64, GradedPoly)> =
        alloc::collections::BTreeMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    fn rec(
        free: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        legs: &[Leg],
        owner: &[usize],
        n: usize,
        colors: &[usize],
        kernel: &QuadraticKernel,
        diagrams: &mut alloc::collections::BTreeMap<LabelledGraph, (u64, GradedPoly)>,
    ) -> Result<(), WickError> {
        if free.is_empty() {
            let mut value = GradedPoly::one();
            for &(a, b) in pairs.iter() {
                let w = kernel.pair_value(&legs[a], &legs[b])?;
                value = &value * &w;
                if value.is_zero() {
                    return Ok(());
                }
            }
            let edges: Vec<(usize, usize)> =
                pairs.iter().map(|&(a, b)| (owner[a], owner[b])).collect();
            let canon = graph_complex::canonical_multigraph(n, &edges, colors);
            let entry = diagrams
                .entry(canon)
                .or_insert((0, GradedPoly::zero()));
            entry.0 += 1;
            entry.1 = &entry.1 + &value;
            return Ok(());
        }
        let first = free[0];
        for j in 1..free.len() {
            let partner = free[j];
            let mut next = free.clone();
            next.remove(j);
            next.remove(0);
            pairs.push((first, partner));
            rec(&mut next, pairs, legs, owner, n, colors, kernel, diagrams)?;
            pairs.pop();
        }
        Ok(())
    }
    let mut free: Vec<usize> = (0..legs.len()).collect();
    rec(
        &mut free,
        &mut pairs,
        &legs,
        &owner,
        n,
        &colors,
        kernel,
        &mut diagrams,
    )?;
    Ok(diagrams
        .into_iter()
        .map(|(graph, (count, weight))| {
            let (sym_p, sym_v, sym_l) = symmetry_factor_colored(&graph, &colors);
            Diagram {
                graph,
                count,
                sym_p,
                sym_v,
                sym_l,
                weight,
            }
        })
        .collect())
}

/// Normalized correlator of polynomials on `N` copies of `R^{2n}`, one
/// polynomial per copy, as an exact polynomial in the `t_{ij}`. The
/// polynomials use `ambient_even` coordinates.
pub fn lattice_correlator(
    fs: &[GradedPoly],
    omega: &Matrix,
    max_legs: usize,
) -> Result<GradedPoly, WickError> {
    let kernel = QuadraticKernel::factored(omega)?;
    let vertices: Vec<Vertex> = fs
        .iter()
        .enumerate()
        .map(|(k, f)| Vertex::from_poly(k + 1, f))
        .collect::<Result<_, _>>()?;
    correlator(&vertices, &kernel, &[], max_legs)
}

/// Substitutes ambient coordinates by per-copy coordinates.
pub fn place_on_copy(poly: &GradedPoly, copy: usize, even_dim: usize, odd_dim: usize) -> GradedPoly {
    let mut bindings = alloc::collections::BTreeMap::new();
    for idx in 1..=even_dim {
        bindings.insert(ambient_even(idx), GradedPoly::var(&copy_even(copy, idx)));
    }
    for idx in 1..=odd_dim {
        bindings.insert(ambient_odd(idx), GradedPoly::var(&copy_odd(copy, idx)));
    }
    poly.substitute(&bindings).expect("placement preserves parity")
}

fn is_copy_var(g: &Generator) -> bool {
    let name = g.name();
    (name.starts_with('y') || name.starts_with('w')) && name.contains('_')
}

/// One application of the pair contraction operator
/// `C_{ij} = ½ Σ_{A on i, B on j} ⟨A B⟩ ∂_B ∂_A` (plus the mirrored term),
/// with the fermionic sign on the odd block.
fn apply_pair_contraction(
    poly: &GradedPoly,
    i: usize,
    j: usize,
    kernel: &QuadraticKernel,
) -> Result<GradedPoly, WickError> {
    let even_dim = kernel.even_dim();
    let odd_dim = kernel.odd_dim();
    let mut out = GradedPoly::zero();
    let unordered_factor = if i == j {
        crate::rational::qq(1, 2)
    } else {
        Ratio::one() // (i,j) and (j,i) terms of the double sum agree
    };
    for mu in 1..=even_dim {
        let d1 = poly.derive(&copy_even(j, mu));
        if d1.is_zero() {
            continue;
        }
        for nu in 1..=even_dim {
            let w = kernel.pair_value(
                &Leg {
                    copy: i,
                    index: nu,
                    odd: false,
                },
                &Leg {
                    copy: j,
                    index: mu,
                    odd: false,
                },
            )?;
            if w.is_zero() {
                continue;
            }
            let d2 = d1.derive(&copy_even(i, nu));
            if d2.is_zero() {
                continue;
            }
            out = &out + &(&w * &d2).scale(&unordered_factor);
        }
    }
    for a in 1..=odd_dim {
        let d1 = poly.derive(&copy_odd(j, a));
        if d1.is_zero() {
            continue;
        }
        for b in 1..=odd_dim {
            let w = kernel.pair_value(
                &Leg {
                    copy: i,
                    index: b,
                    odd: true,
                },
                &Leg {
                    copy: j,
                    index: a,
                    odd: true,
                },
            )?;
            if w.is_zero() {
                continue;
            }
            let d2 = d1.derive(&copy_odd(i, b));
            if d2.is_zero() {
                continue;
            }
            // fermionic block sign
            out = &out - &(&w * &d2).scale(&unordered_factor);
        }
    }
    Ok(out)
}

/// `exp(C_{ij})` applied in full (terminates because each application
/// removes one coordinate from each side).
fn apply_pair_exponential(
    poly: &GradedPoly,
    i: usize,
    j: usize,
    kernel: &QuadraticKernel,
) -> Result<GradedPoly, WickError> {
    let mut total = poly.clone();
    let mut term = poly.clone();
    let mut k = 1u64;
    loop {
        term = apply_pair_contraction(&term, i, j, kernel)?;
        if term.is_zero() {
            return Ok(total);
        }
        term = term.scale(&(Ratio::one() / Ratio::from_integer(k.into())));
        total = &total + &term;
        k += 1;
    }
}

/// Generating-function route: `⟨Π f_k⟩ = [exp(C) Π f_k]_{coords→0}` where
/// `C = Σ_{i≤j} C_{ij}` is the second-order contraction operator of the
/// kernel. Because the pair operators commute, the exponential factorizes
/// per copy pair; copies are eliminated one at a time, discarding terms
/// that still carry coordinates of a finished copy.
pub fn operator_correlator(
    fs: &[(usize, GradedPoly)],
    kernel: &QuadraticKernel,
) -> Result<GradedPoly, WickError> {
    let even_dim = kernel.even_dim();
    let odd_dim = kernel.odd_dim();
    let mut acc = GradedPoly::one();
    let mut copies: Vec<usize> = Vec::new();
    for (copy, f) in fs {
        acc = &acc * &place_on_copy(f, *copy, even_dim, odd_dim);
        if !copies.contains(copy) {
            copies.push(*copy);
        }
    }
    copies.sort_unstable();
    for (ci, &i) in copies.iter().enumerate() {
        for &j in &copies[ci..] {
            acc = apply_pair_exponential(&acc, i, j, kernel)?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        // copy i is fully contracted: terms still holding its coordinates die
        let prefix_even = format!("y{i:02}_");
        let prefix_odd = format!("w{i:02}_");
        acc = acc.kill_generators(|g| {
            g.name().starts_with(&prefix_even) || g.name().starts_with(&prefix_odd)
        });
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    Ok(acc.kill_generators(is_copy_var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{double_factorial_odd, q, qq};

    fn kernel_1d() -> QuadraticKernel {
        QuadraticKernel::symmetric(vec![vec![q(1)]])
    }

    #[test]
    fn one_dimensional_moments() {
        // ⟨x^{2p}⟩ = (2p-1)!!/α^p for p ≤ 6
        for p in 1..=6usize {
            let m = gaussian_moment(&vec![1; 2 * p], &kernel_1d(), 16).unwrap();
            let expect = GradedPoly::monomial(double_factorial_odd(p as u64), &[(alpha_inv(), p as u32)]);
            assert_eq!(m, expect, "p = {p}");
        }
        // odd count vanishes
        assert!(gaussian_moment(&[1; 5], &kernel_1d(), 16).unwrap().is_zero());
    }

    #[test]
    fn four_point_moment_is_three_term_sum() {
        // ⟨x^μx^νx^ρx^σ⟩ = (Q^{μν}Q^{ρσ} + Q^{μρ}Q^{νσ} + Q^{μσ}Q^{νρ})/α²
        let qinv = vec![
            vec![q(2), q(1), q(0)],
            vec![q(1), q(3), q(1)],
            vec![q(0), q(1), q(1)],
        ];
        let kernel = QuadraticKernel::symmetric(qinv.clone());
        let idx = [1usize, 2, 3, 2];
        let m = gaussian_moment(&idx, &kernel, 16).unwrap();
        let pick = |a: usize, b: usize| qinv[idx[a] - 1][idx[b] - 1].clone();
        let expect_value =
            pick(0, 1) * pick(2, 3) + pick(0, 2) * pick(1, 3) + pick(0, 3) * pick(1, 2);
        assert_eq!(m, GradedPoly::monomial(expect_value, &[(alpha_inv(), 2)]));
    }

    #[test]
    fn index_out_of_range_rejected() {
        let err = gaussian_moment(&[1, 2], &kernel_1d(), 16).unwrap_err();
        assert_eq!(err, WickError::IndexOutOfRange { index: 2, dim: 1 });
    }

    #[test]
    fn leg_cap_enforced() {
        let err = gaussian_moment(&[1; 18], &kernel_1d(), 16).unwrap_err();
        assert_eq!(err, WickError::TooManyLegs { legs: 18, cap: 16 });
    }

    #[test]
    fn matching_counts_15_and_105() {
        // raw matchings of x³–x³ and x³–x⁵
        let v33 = [Vertex::power_1d(1, 3, q(1)), Vertex::power_1d(2, 3, q(1))];
        let m = correlator(&v33, &kernel_1d(), &[], 16).unwrap();
        assert_eq!(m, GradedPoly::monomial(q(15), &[(alpha_inv(), 3)]));
        let v35 = [Vertex::power_1d(1, 3, q(1)), Vertex::power_1d(2, 5, q(1))];
        let m = correlator(&v35, &kernel_1d(), &[], 16).unwrap();
        assert_eq!(m, GradedPoly::monomial(q(105), &[(alpha_inv(), 4)]));
    }

    #[test]
    fn normalized_correlator_goldens() {
        // ⟨x³x³⟩/(2(3!)²) = 5/(24α³)
        let v = [
            Vertex::power_1d(1, 3, qq(1, 6)),
            Vertex::power_1d(2, 3, qq(1, 6)),
        ];
        let m = correlator(&v, &kernel_1d(), &[vec![0, 1]], 16).unwrap();
        assert_eq!(m, GradedPoly::monomial(qq(5, 24), &[(alpha_inv(), 3)]));
        // ⟨x³x⁵⟩/(3!5!) = 7/(48α⁴)
        let v = [
            Vertex::power_1d(1, 3, qq(1, 6)),
            Vertex::power_1d(2, 5, qq(1, 120)),
        ];
        let m = correlator(&v, &kernel_1d(), &[], 16).unwrap();
        assert_eq!(m, GradedPoly::monomial(qq(7, 48), &[(alpha_inv(), 4)]));
    }

    #[test]
    fn diagram_counts_and_symmetry_factors() {
        // x³–x³: classes with 6 and 9 contractions, |Aut| = 12 and 8
        let v33 = [Vertex::power_1d(1, 3, q(1)), Vertex::power_1d(2, 3, q(1))];
        let d = diagram_expansion(&v33, &kernel_1d(), &[vec![0, 1]], 16).unwrap();
        let mut counts: Vec<(u64, Ratio)> =
            d.iter().map(|dg| (dg.count, dg.aut_order())).collect();
        counts.sort_by_key(|(c, _)| *c);
        assert_eq!(counts, vec![(6, q(12)), (9, q(8))]);
        // count / (Π n_i! · Π p!) = 1/|Aut|
        for dg in &d {
            assert_eq!(
                Ratio::from_integer(dg.count.into()) / (q(6) * q(6) * q(2)),
                Ratio::one() / dg.aut_order()
            );
        }

        // x³–x⁵: classes with 60 and 45 contractions, |Aut| = 12 and 16
        let v35 = [Vertex::power_1d(1, 3, q(1)), Vertex::power_1d(2, 5, q(1))];
        let d = diagram_expansion(&v35, &kernel_1d(), &[], 16).unwrap();
        let mut counts: Vec<(u64, Ratio)> =
            d.iter().map(|dg| (dg.count, dg.aut_order())).collect();
        counts.sort_by_key(|(c, _)| *c);
        assert_eq!(counts, vec![(45, q(16)), (60, q(12))]);

        // single x² vertex: one loop class, count 1, |Aut| = 2
        let v2 = [Vertex::power_1d(1, 2, q(1))];
        let d = diagram_expansion(&v2, &kernel_1d(), &[], 16).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].count, 1);
        assert_eq!(d[0].aut_order(), q(2));
    }

    #[test]
    fn diagram_expansion_resums_to_correlator() {
        let v35 = [Vertex::power_1d(1, 3, q(1)), Vertex::power_1d(2, 5, q(1))];
        let d = diagram_expansion(&v35, &kernel_1d(), &[], 16).unwrap();
        let mut resummed = GradedPoly::zero();
        for dg in &d {
            resummed = &resummed + &dg.weight;
        }
        let raw = correlator(&v35, &kernel_1d(), &[], 16).unwrap();
        assert_eq!(resummed, raw);
    }

    #[test]
    fn lattice_linear_pair() {
        // two linear functions: ⟨(a·x)(b·x)⟩ = (a Ω^{-1} b) t_{12}
        let omega = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        let a = &GradedPoly::var(&ambient_even(1)).scale(&q(2))
            + &GradedPoly::var(&ambient_even(2)).scale(&q(3));
        let b = &GradedPoly::var(&ambient_even(1)).scale(&q(-1))
            + &GradedPoly::var(&ambient_even(2)).scale(&q(5));
        let got = lattice_correlator(&[a, b], &omega, 16).unwrap();
        // aΩ^{-1}b with Ω^{-1} = [[0,-1],[1,0]]: 2·(-1)·5 + 3·1·(-1) = -13
        let expect = graph_complex::edge_poly(1, 2).scale(&q(-13));
        assert_eq!(got, expect);
        // odd total degree vanishes
        let c = GradedPoly::var(&ambient_even(1));
        let d = &GradedPoly::var(&ambient_even(1)) * &GradedPoly::var(&ambient_even(2));
        assert!(lattice_correlator(&[c, d], &omega, 16).unwrap().is_zero());
    }

    #[test]
    fn singular_omega_rejected() {
        let omega = vec![vec![q(0), q(0)], vec![q(0), q(0)]];
        assert_eq!(
            QuadraticKernel::factored(&omega).unwrap_err(),
            WickError::SingularOmega
        );
        let not_anti = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(
            QuadraticKernel::factored(&not_anti).unwrap_err(),
            WickError::NotAntisymmetric
        );
    }

    #[test]
    fn operator_route_agrees_with_matchings_even() {
        let omega = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        let kernel = QuadraticKernel::factored(&omega).unwrap();
        let x1 = GradedPoly::var(&ambient_even(1));
        let x2 = GradedPoly::var(&ambient_even(2));
        let f = &(&x1 * &x1) + &(&x1 * &x2).scale(&q(3));
        let g = &(&x2 * &x2) + &x1.scale(&q(2)).pow(2);
        let vertices = [
            Vertex::from_poly(1, &f).unwrap(),
            Vertex::from_poly(2, &g).unwrap(),
        ];
        let via_matchings = correlator(&vertices, &kernel, &[], 16).unwrap();
        let via_operator =
            operator_correlator(&[(1, f.clone()), (2, g.clone())], &kernel).unwrap();
        assert_eq!(via_matchings, via_operator);
    }

    #[test]
    fn operator_route_agrees_with_matchings_super() {
        let omega = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        let eta = vec![vec![q(1), q(0)], vec![q(0), q(2)]];
        let kernel = QuadraticKernel::super_symplectic(&omega, &eta).unwrap();
        let w1 = GradedPoly::var(&ambient_odd(1));
        let w2 = GradedPoly::var(&ambient_odd(2));
        let x1 = GradedPoly::var(&ambient_even(1));
        let f = &(&w1 * &w2) + &(&x1 * &w1).scale(&q(2));
        let g = &(&w2 * &w1).scale(&q(3)) + &(&x1 * &w2);
        let h = &w1 * &w2;
        let vertices = [
            Vertex::from_poly(1, &f).unwrap(),
            Vertex::from_poly(2, &g).unwrap(),
            Vertex::from_poly(3, &h).unwrap(),
        ];
        let via_matchings = correlator(&vertices, &kernel, &[], 16).unwrap();
        let via_operator = operator_correlator(
            &[(1, f.clone()), (2, g.clone()), (3, h.clone())],
            &kernel,
        )
        .unwrap();
        assert_eq!(via_matchings, via_operator);

        // a pair with a guaranteed nonzero contraction
        let pair = [
            Vertex::from_poly(1, &h).unwrap(),
            Vertex::from_poly(2, &h).unwrap(),
        ];
        let via_matchings = correlator(&pair, &kernel, &[], 16).unwrap();
        let via_operator =
            operator_correlator(&[(1, h.clone()), (2, h.clone())], &kernel).unwrap();
        assert_eq!(via_matchings, via_operator);
        assert!(!via_matchings.is_zero());
    }

    #[test]
    fn super_pair_matches_berezin_oracle() {
        // ⟨ψ_1 ψ_2⟩ with one odd dimension and η = (1): Berezin integral of
        // ψ1ψ2·e^{-t^{12}ψ1ψ2} over dψ gives t_{12} after normalization.
        let omega = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        let eta = vec![vec![q(1)]];
        let kernel = QuadraticKernel::super_symplectic(&omega, &eta).unwrap();
        let legs = [
            Leg {
                copy: 1,
                index: 1,
                odd: true,
            },
            Leg {
                copy: 2,
                index: 1,
                odd: true,
            },
        ];
        let got = matching_sum(&legs, &kernel, 16).unwrap();
        assert_eq!(got, graph_complex::edge_poly(1, 2));
    }

    #[test]
    fn moments_invariant_under_kernel_symmetry() {
        let qinv = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let kernel = QuadraticKernel::symmetric(qinv);
        let a = gaussian_moment(&[1, 2, 1, 2], &kernel, 16).unwrap();
        let b = gaussian_moment(&[2, 1, 2, 1], &kernel, 16).unwrap();
        assert_eq!(a, b);
    }
}
