//! The Chevalley–Eilenberg complex of formal Hamiltonian vector fields on
//! `R^{2n}` (and `R^{2n|m}`) and the correlator map to graph polynomials:
//! a chain `(f_1, ..., f_l)` evaluates to a polynomial in odd `t_i` / even
//! `t_{ij}` via the factored symplectic Wick kernel with `N = l` copies, and
//! the map intertwines the CE boundary with the graph differential.
//!
//! Coordinates: `ambient_even(μ)`, `μ = 1..=2n`, and `ambient_odd(a)`,
//! `a = 1..=m` from the Wick engine. Chain generators must be polynomials
//! with only quadratic and higher terms and homogeneous parity.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::graded_poly::{Generator, GradedPoly, Parity, PolyError};
use crate::graph_complex::{self, GraphChain, GraphError};
use crate::linalg::{self, Matrix};
use crate::rational::{q, qq, Ratio};
use crate::wick_engine::{self, QuadraticKernel, WickError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CeError {
    /// Ω must be antisymmetric and invertible.
    BadOmega,
    /// η must be symmetric and invertible.
    BadEta,
    /// A generator has terms below quadratic order (or is zero).
    NotHamiltonian { index: usize },
    /// A generator mixes parities (needed for the super signs).
    MixedParity { index: usize },
    /// Structure constants violate the Jacobi identity.
    JacobiFailure { witness: String },
    /// Cycle construction needs an even number of trivalent vertices.
    OddVertexCount { k: usize },
    /// A generator uses unknown coordinates.
    ForeignVariable { name: String },
    Graph(GraphError),
    Wick(WickError),
    Poly(PolyError),
}

impl fmt::Display for CeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CeError::BadOmega => write!(f, "omega must be antisymmetric and invertible"),
            CeError::BadEta => write!(f, "eta must be symmetric and invertible"),
            CeError::NotHamiltonian { index } => {
                write!(f, "generator {index} has terms below quadratic order")
            }
            CeError::MixedParity { index } => {
                write!(f, "generator {index} mixes parities")
            }
            CeError::JacobiFailure { witness } => {
                write!(f, "Jacobi identity fails: {{f, f}} contains {witness}")
            }
            CeError::OddVertexCount { k } => {
                write!(f, "trivalent cycle needs even vertex count, got {k}")
            }
            CeError::ForeignVariable { name } => write!(f, "unknown coordinate `{name}`"),
            CeError::Graph(e) => write!(f, "{e}"),
            CeError::Wick(e) => write!(f, "{e}"),
            CeError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CeError {}

impl From<GraphError> for CeError {
    fn from(e: GraphError) -> CeError {
        CeError::Graph(e)
    }
}

impl From<WickError> for CeError {
    fn from(e: WickError) -> CeError {
        CeError::Wick(e)
    }
}

impl From<PolyError> for CeError {
    fn from(e: PolyError) -> CeError {
        CeError::Poly(e)
    }
}

/// The constant symplectic structure of `R^{2n|m}`.
///
/// The bracket and the Wick propagator share one pairing matrix, normalized
/// so that the canonical pair of the standard form `[[0, 1], [-1, 0]]`
/// satisfies `{x¹, x²} = +1` (the raised-index convention
/// `Ω^{μν} Ω_{ρν} = δ^μ_ρ`, the negative of the plain matrix inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticData {
    omega: Matrix,
    omega_pairing: Matrix,
    eta: Matrix,
    eta_inv: Matrix,
}

impl SymplecticData {
    pub fn new(omega: Matrix, eta: Option<Matrix>) -> Result<SymplecticData, CeError> {
        if omega.len() % 2 != 0 || !linalg::is_antisymmetric(&omega) {
            return Err(CeError::BadOmega);
        }
        let omega_inv = linalg::inverse(&omega).ok_or(CeError::BadOmega)?;
        let omega_pairing = linalg::mat_scale(&omega_inv, &q(-1));
        let eta = eta.unwrap_or_default();
        if !linalg::is_symmetric(&eta) {
            return Err(CeError::BadEta);
        }
        let eta_inv = linalg::inverse(&eta).ok_or(CeError::BadEta)?;
        Ok(SymplecticData {
            omega,
            omega_pairing,
            eta,
            eta_inv,
        })
    }

    /// The standard symplectic form on `R^{2n}`: block `[[0, I], [-I, 0]]`.
    pub fn standard(n: usize) -> SymplecticData {
        let mut omega = linalg::zeros(2 * n, 2 * n);
        for i in 0..n {
            omega[i][n + i] = q(1);
            omega[n + i][i] = q(-1);
        }
        SymplecticData::new(omega, None).expect("standard form is symplectic")
    }

    /// Purely odd `R^{0|m}` with metric η.
    pub fn purely_odd(eta: Matrix) -> Result<SymplecticData, CeError> {
        SymplecticData::new(Vec::new(), Some(eta))
    }

    pub fn even_dim(&self) -> usize {
        self.omega.len()
    }

    pub fn odd_dim(&self) -> usize {
        self.eta.len()
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    pub fn eta(&self) -> &Matrix {
        &self.eta
    }

    pub fn x(&self, mu: usize) -> Generator {
        wick_engine::ambient_even(mu)
    }

    pub fn psi(&self, a: usize) -> Generator {
        wick_engine::ambient_odd(a)
    }

    pub fn kernel(&self) -> QuadraticKernel {
        if self.odd_dim() == 0 {
            QuadraticKernel::FactoredSymplectic {
                omega_inverse: self.omega_pairing.clone(),
            }
        } else {
            QuadraticKernel::SuperSymplectic {
                omega_inverse: self.omega_pairing.clone(),
                eta_inverse: self.eta_inv.clone(),
            }
        }
    }

    /// The shared bracket/propagator pairing matrix.
    pub fn pairing(&self) -> &Matrix {
        &self.omega_pairing
    }

    pub fn eta_inverse(&self) -> &Matrix {
        &self.eta_inv
    }

    fn check_support(&self, poly: &GradedPoly) -> Result<(), CeError> {
        for g in poly.support() {
            let ok = (1..=self.even_dim()).any(|i| g == self.x(i))
                || (1..=self.odd_dim()).any(|a| g == self.psi(a));
            if !ok {
                return Err(CeError::ForeignVariable {
                    name: g.name().into(),
                });
            }
        }
        Ok(())
    }
}

/// Poisson bracket of the constant symplectic structure:
/// `{f, g} = ∂_μ f (Ω^{-1})^{μν} ∂_ν g + (-1)^{|f|} ∂_a f (η^{-1})^{ab} ∂_b g`.
pub fn poisson(f: &GradedPoly, g: &GradedPoly, data: &SymplecticData) -> GradedPoly {
    let mut out = GradedPoly::zero();
    let (f_even, f_odd) = f.parity_split();
    for (fp, fpart) in [(Parity::Even, f_even), (Parity::Odd, f_odd)] {
        if fpart.is_zero() {
            continue;
        }
        for mu in 1..=data.even_dim() {
            let df = fpart.derive(&data.x(mu));
            if df.is_zero() {
                continue;
            }
            for nu in 1..=data.even_dim() {
                let w = &data.omega_pairing[mu - 1][nu - 1];
                if w.is_zero() {
                    continue;
                }
                let dg = g.derive(&data.x(nu));
                out = &out + &(&df * &dg).scale(w);
            }
        }
        let fsgn = crate::rational::sign(fp.bit());
        for a in 1..=data.odd_dim() {
            let df = fpart.derive(&data.psi(a));
            if df.is_zero() {
                continue;
            }
            for b in 1..=data.odd_dim() {
                let w = data.eta_inv[a - 1][b - 1].clone() * &fsgn;
                if w.is_zero() {
                    continue;
                }
                let dg = g.derive(&data.psi(b));
                out = &out + &(&df * &dg).scale(&w);
            }
        }
    }
    out
}

/// An ordered Chevalley–Eilenberg chain of Hamiltonian generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEChain {
    pub data: SymplecticData,
    pub generators: Vec<GradedPoly>,
}

impl CEChain {
    /// Validates the `Ham⁰` condition (quadratic and higher terms only) and
    /// homogeneous parity of every generator. Zero generators are allowed
    /// and make the whole chain zero.
    pub fn new(data: SymplecticData, generators: Vec<GradedPoly>) -> Result<CEChain, CeError> {
        for (i, g) in generators.iter().enumerate() {
            data.check_support(g)?;
            if g.is_zero() {
                continue;
            }
            if g.min_total_exponent().unwrap_or(0) < 2 {
                return Err(CeError::NotHamiltonian { index: i });
            }
            if g.homogeneous_parity().is_none() {
                return Err(CeError::MixedParity { index: i });
            }
        }
        Ok(CEChain { data, generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Shifted parities `|w_i| = |f_i| + 1 (mod 2)` driving the chain signs.
    fn shifted_parities(&self) -> Vec<u64> {
        self.generators
            .iter()
            .map(|g| {
                let p = g.homogeneous_parity().map(|p| p.bit()).unwrap_or(0);
                (p + 1) % 2
            })
            .collect()
    }

    /// Sorts the generators by their canonical rendering, tracking the
    /// Koszul swap signs; `None` when a repeated generator of odd shifted
    /// parity makes the chain zero.
    pub fn canonicalize(&self) -> Option<(Ratio, CEChain)> {
        let w = self.shifted_parities();
        let mut items: Vec<(String, GradedPoly, u64)> = self
            .generators
            .iter()
            .zip(&w)
            .map(|(g, &wi)| (g.to_string(), g.clone(), wi))
            .collect();
        let mut sign = Ratio::one();
        // insertion sort with explicit adjacent swaps
        for i in 1..items.len() {
            let mut j = i;
            while j > 0 && items[j - 1].0 > items[j].0 {
                if items[j - 1].2 == 1 && items[j].2 == 1 {
                    sign = -sign;
                }
                items.swap(j - 1, j);
                j -= 1;
            }
        }
        for pair in items.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].2 == 1 {
                return None;
            }
        }
        Some((
            sign,
            CEChain {
                data: self.data.clone(),
                generators: items.into_iter().map(|(_, g, _)| g).collect(),
            },
        ))
    }
}

/// One term of a Chevalley–Eilenberg boundary.
#[derive(Clone, Debug)]
pub struct BoundaryTerm {
    pub coeff: Ratio,
    pub chain: CEChain,
}

/// Outcome of [`ce_boundary`]: the signed terms, plus a note for every
/// bracket that degenerated to a constant and was discarded.
#[derive(Clone, Debug, Default)]
pub struct CeBoundary {
    pub terms: Vec<BoundaryTerm>,
    pub discarded_constants: Vec<(usize, usize)>,
}

/// The CE boundary
/// `∂(f_1,...,f_k) = Σ_{i<j} ±({f_i, f_j}, f_1,..., f̂_i,..., f̂_j,..., f_k)`
/// with the Koszul signs of the degree-1 bracket convention; for purely even
/// generators the sign reduces to `(-1)^{i+j+1}` (1-based `i < j`).
pub fn ce_boundary(c: &CEChain) -> CeBoundary {
    let w = c.shifted_parities();
    let mut out = CeBoundary::default();
    for i in 0..c.generators.len() {
        for j in i + 1..c.generators.len() {
            let bracket = poisson(&c.generators[i], &c.generators[j], &c.data);
            if bracket.is_zero() {
                continue;
            }
            if bracket.max_total_exponent() == 0 {
                out.discarded_constants.push((i, j));
                continue;
            }
            let before_i: u64 = w[..i].iter().sum();
            let before_j: u64 = w[..j].iter().sum();
            let s_ij = w[i] * before_i + w[j] * before_j + w[i] * w[j];
            let coeff = crate::rational::sign(s_ij + w[i] + 1);
            let mut gens = vec![bracket];
            for (r, g) in c.generators.iter().enumerate() {
                if r != i && r != j {
                    gens.push(g.clone());
                }
            }
            out.terms.push(BoundaryTerm {
                coeff,
                chain: CEChain {
                    data: c.data.clone(),
                    generators: gens,
                },
            });
        }
    }
    out
}

/// Collects a formal sum of chains into a canonical map, expanding each
/// chain multilinearly into monomial-atomic chains so that cancellations
/// driven by the Jacobi identity become visible as exact zeros.
pub fn collect_chain_sum(terms: &[BoundaryTerm]) -> BTreeMap<Vec<String>, Ratio> {
    let mut out: BTreeMap<Vec<String>, Ratio> = BTreeMap::new();
    for t in terms {
        expand_term(t, &mut out);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Multilinear expansion of one signed chain into monomial-atomic chains.
fn expand_term(t: &BoundaryTerm, out: &mut BTreeMap<Vec<String>, Ratio>) {
    let slots: Vec<Vec<(String, Ratio, u64)>> = t
        .chain
        .generators
        .iter()
        .map(|g| {
            g.terms()
                .map(|(m, c)| {
                    let shifted = (m.parity().bit() + 1) % 2;
                    (m.to_string(), c.clone(), shifted)
                })
                .collect()
        })
        .collect();
    if slots.iter().any(Vec::is_empty) {
        return;
    }
    let mut combo = alloc::vec![0usize; slots.len()];
    'outer: loop {
        let mut coeff = t.coeff.clone();
        let mut atoms: Vec<(String, u64)> = Vec::with_capacity(slots.len());
        for (s, &pick) in slots.iter().zip(&combo) {
            let (name, c, w) = &s[pick];
            coeff *= c;
            atoms.push((name.clone(), *w));
        }
        // sort with Koszul swap signs of the shifted parities
        for i in 1..atoms.len() {
            let mut j = i;
            while j > 0 && atoms[j - 1].0 > atoms[j].0 {
                if atoms[j - 1].1 == 1 && atoms[j].1 == 1 {
                    coeff = -coeff;
                }
                atoms.swap(j - 1, j);
                j -= 1;
            }
        }
        let zero = atoms
            .windows(2)
            .any(|pair| pair[0].0 == pair[1].0 && pair[0].1 == 1);
        if !zero {
            let key: Vec<String> = atoms.into_iter().map(|(n, _)| n).collect();
            let entry = out.entry(key).or_insert_with(Ratio::zero);
            *entry += coeff;
        }
        let mut k = 0;
        loop {
            if k == slots.len() {
                break 'outer;
            }
            combo[k] += 1;
            if combo[k] < slots[k].len() {
                break;
            }
            combo[k] = 0;
            k += 1;
        }
    }
}

/// Correlator of a chain over `copies ≥ l` lattice copies: the graph
/// polynomial `⟨(f_1, ..., f_l)⟩` in odd `t_i` and even `t_{ij}`.
///
/// The Wick contraction of the ordered product on distinct copies is
/// computed once by the generating-function route, then re-labelled over
/// all injective copy assignments with the odd `t` prefactors.
pub fn evaluate_chain(c: &CEChain, copies: usize) -> Result<GradedPoly, CeError> {
    fn rec(
        l: usize,
        copies: usize,
        assign: &mut Vec<usize>,
        base: &GradedPoly,
        interleave_sign: &Ratio,
        out: &mut GradedPoly,
    ) {
        if assign.len() == l {
            let mut bindings = BTreeMap::new();
            for a in 1..=l {
                for b in a + 1..=l {
                    bindings.insert(
                        graph_complex::edge_var(a, b),
                        graph_complex::edge_poly(assign[a - 1], assign[b - 1]),
                    );
                }
            }
            let relabelled = base.substitute(&bindings).expect("even to even");
            let mut tmon = GradedPoly::constant(interleave_sign.clone());
            for &kappa in assign.iter() {
                tmon = &tmon * &GradedPoly::var(&graph_complex::vertex_var(kappa));
            }
            *out = &*out + &(&tmon * &relabelled);
            return;
        }
        for v in 1..=copies {
            if !assign.contains(&v) {
                assign.push(v);
                rec(l, copies, assign, base, interleave_sign, out);
                assign.pop();
            }
        }
    }

    let l = c.len();
    if l == 0 {
        return Ok(GradedPoly::one());
    }
    assert!(copies >= l, "need at least one copy per generator");
    let kernel = c.data.kernel();
    let placed: Vec<(usize, GradedPoly)> = c
        .generators
        .iter()
        .enumerate()
        .map(|(k, f)| (k + 1, f.clone()))
        .collect();
    let base = wick_engine::operator_correlator(&placed, &kernel)?;
    if base.is_zero() {
        return Ok(GradedPoly::zero());
    }
    let parities: Vec<u64> = c
        .generators
        .iter()
        .map(|g| g.homogeneous_parity().expect("validated").bit())
        .collect();
    // sign from pulling each t_{κ_k} to the front through f_1 ... f_{k-1}
    let interleave: u64 = parities
        .iter()
        .enumerate()
        .map(|(k0, p)| p * ((l - 1 - k0) as u64))
        .sum();
    let interleave_sign = crate::rational::sign(interleave);

    let mut out = GradedPoly::zero();
    let mut assign: Vec<usize> = Vec::with_capacity(l);
    rec(l, copies, &mut assign, &base, &interleave_sign, &mut out);
    Ok(out)
}

/// Result of the homomorphism check `⟨∂c⟩ = ∂_Gph ⟨c⟩`.
#[derive(Clone, Debug)]
pub struct HomomorphismCheck {
    pub lhs: GradedPoly,
    pub rhs: GradedPoly,
    pub equal: bool,
}

/// Checks the intertwining identity with `N = l` copies on both sides.
pub fn homomorphism_check(c: &CEChain) -> Result<HomomorphismCheck, CeError> {
    let l = c.len();
    let encoded = evaluate_chain(c, l)?;
    let rhs = graph_complex::boundary_operator_poly(&encoded, l, l);
    let mut lhs = GradedPoly::zero();
    for term in ce_boundary(c).terms {
        let piece = evaluate_chain(&term.chain, l)?;
        lhs = &lhs + &piece.scale(&term.coeff);
    }
    let equal = lhs == rhs;
    Ok(HomomorphismCheck { lhs, rhs, equal })
}

/// Fully antisymmetric structure constants with all indices down.
pub type StructureConstants = Vec<Vec<Vec<Ratio>>>;

/// `ε_{abc}` for `su(2)` with `ε_{123} = 1`.
pub fn su2_epsilon() -> StructureConstants {
    let mut f = vec![vec![vec![Ratio::zero(); 3]; 3]; 3];
    let eps = [
        (0usize, 1usize, 2usize, 1i64),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (1, 0, 2, -1),
        (0, 2, 1, -1),
        (2, 1, 0, -1),
    ];
    for (a, b, c, s) in eps {
        f[a][b][c] = q(s);
    }
    f
}

/// The cubic Hamiltonian `f = (1/3!) f_{abc} ψ^a ψ^b ψ^c` on `R^{0|m}`.
pub fn cubic_from_structure(f_abc: &StructureConstants) -> GradedPoly {
    let m = f_abc.len();
    let mut out = GradedPoly::zero();
    let sixth = qq(1, 6);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if f_abc[a][b][c].is_zero() {
                    continue;
                }
                out = &out
                    + &GradedPoly::monomial(
                        f_abc[a][b][c].clone() * &sixth,
                        &[
                            (wick_engine::ambient_odd(a + 1), 1),
                            (wick_engine::ambient_odd(b + 1), 1),
                            (wick_engine::ambient_odd(c + 1), 1),
                        ],
                    );
            }
        }
    }
    out
}

/// Builds the trivalent graph cycle `Σ_Γ c_Γ(g) Γ` from `k` copies of the
/// structure cubic on `R^{0|m}`; the Jacobi identity is validated through
/// the Poisson self-bracket. `k` must be even.
pub fn lie_algebra_cycle(
    f_abc: &StructureConstants,
    eta: Matrix,
    k: usize,
) -> Result<GraphChain, CeError> {
    if k % 2 != 0 {
        return Err(CeError::OddVertexCount { k });
    }
    let data = SymplecticData::purely_odd(eta)?;
    let f = cubic_from_structure(f_abc);
    let self_bracket = poisson(&f, &f, &data);
    if !self_bracket.is_zero() {
        let witness = self_bracket
            .terms()
            .next()
            .map(|(m, _)| m.to_string())
            .unwrap_or_default();
        return Err(CeError::JacobiFailure { witness });
    }
    let chain = CEChain::new(data, vec![f; k])?;
    let poly = evaluate_chain(&chain, k)?;
    Ok(graph_complex::chain_from_polynomial(&poly)?)
}
