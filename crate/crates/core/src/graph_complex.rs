//! The graph chain complex: oriented labelled graphs up to orientation
//! equivalence, the boundary by signed edge contraction, the encoding of
//! classes as polynomials in odd `t_i` / even `t_{ij}` variables, the
//! operator form of the differential, and the cochain pairing.
//!
//! Orientation bookkeeping: a labelled graph carries directed edges; a vertex
//! permutation `σ` together with `k` edge flips relates equal orientations
//! when `(-1)^k sgn(σ) = 1`. Classes admitting an orientation-reversing
//! automorphism are zero; graphs with loops are zero for the same reason
//! (flipping a loop is an automorphism of sign -1).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::graded_poly::{Generator, GradedPoly};
use crate::rational::{q, Ratio};

/// Default cap on the factorial canonicalization search.
pub const DEFAULT_VERTEX_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Vertex count exceeds the canonicalization cap.
    CapExceeded { vertices: usize, cap: usize },
    /// An edge endpoint lies outside `1..=n`.
    BadEndpoint { edge: (usize, usize), n: usize },
    /// Strict-mode pairing of mismatched vertex degrees.
    DegreeMismatch { cochain: usize, chain: usize },
    /// A polynomial fed to the graph decoder is not a graph polynomial.
    NotAGraphPolynomial(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::CapExceeded { vertices, cap } => {
                write!(f, "graph has {vertices} vertices, canonicalization cap is {cap}")
            }
            GraphError::BadEndpoint { edge, n } => {
                write!(f, "edge ({}, {}) outside vertex range 1..={n}", edge.0, edge.1)
            }
            GraphError::DegreeMismatch { cochain, chain } => {
                write!(f, "pairing degree mismatch: cochain {cochain}, chain {chain}")
            }
            GraphError::NotAGraphPolynomial(msg) => write!(f, "not a graph polynomial: {msg}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A labelled directed multigraph on vertices `1..=n`. Loops are representable
/// but canonicalize to zero. The edge list is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabelledGraph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<LabelledGraph, GraphError> {
        for &(a, b) in &edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(GraphError::BadEndpoint { edge: (a, b), n });
            }
        }
        edges.sort_unstable();
        Ok(LabelledGraph { n, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Multiset of undirected edges as (min, max) pairs with multiplicities.
    pub fn undirected_multiplicities(&self) -> BTreeMap<(usize, usize), u32> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.edges {
            let key = (a.min(b), a.max(b));
            *m.entry(key).or_insert(0) += 1;
        }
        m
    }

    pub fn vertex_valences(&self) -> Vec<usize> {
        let mut v = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            v[a - 1] += 1;
            v[b - 1] += 1;
        }
        v
    }
}

impl fmt::Display for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}[", self.n)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}>{b}")?;
        }
        write!(f, "]")
    }
}

/// An orientation-equivalence class of graphs. `is_zero` marks classes killed
/// by an orientation-reversing automorphism; such classes never enter chains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphClass {
    canonical: LabelledGraph,
    is_zero: bool,
}

impl GraphClass {
    pub fn graph(&self) -> &LabelledGraph {
        &self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    pub fn n_vertices(&self) -> usize {
        self.canonical.n
    }

    pub fn n_edges(&self) -> usize {
        self.canonical.edges.len()
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            write!(f, "0·")?;
        }
        write!(f, "{}", self.canonical)
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    // 1-indexed images: perm[i-1] is the image of vertex i
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    heap(n, &mut cur, &mut out);
    out
}

pub(crate) fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Canonical form with orientation sign. Returns the class and the sign
/// relating `g` to the canonical representative: `+1`, `-1`, or `0` when the
/// class is killed by an orientation-reversing automorphism (then `is_zero`
/// is set on the class).
pub fn canonical_form(g: &LabelledGraph) -> Result<(GraphClass, i64), GraphError> {
    canonical_form_capped(g, DEFAULT_VERTEX_CAP)
}

pub fn canonical_form_capped(
    g: &LabelledGraph,
    cap: usize,
) -> Result<(GraphClass, i64), GraphError> {
    if g.n > cap {
        return Err(GraphError::CapExceeded {
            vertices: g.n,
            cap,
        });
    }
    if g.has_loop() {
        // flipping the loop maps the graph to itself with one edge flip
        return Ok((
            GraphClass {
                canonical: g.clone(),
                is_zero: true,
            },
            0,
        ));
    }
    let mut best: Option<(Vec<(usize, usize)>, i64)> = None;
    let mut input_sign = 0i64;
    let mut zero = false;
    for perm in permutations(g.n) {
        let psign = permutation_sign(&perm);
        let mut edges = Vec::with_capacity(g.edges.len());
        let mut flips = 0usize;
        for &(a, b) in &g.edges {
            let (na, nb) = (perm[a - 1], perm[b - 1]);
            if na <= nb {
                edges.push((na, nb));
            } else {
                edges.push((nb, na));
                flips += 1;
            }
        }
        edges.sort_unstable();
        let sign = if flips % 2 == 0 { psign } else { -psign };
        match &mut best {
            None => {
                best = Some((edges, sign));
                input_sign = sign;
            }
            Some((bedges, bsign)) => match edges.cmp(bedges) {
                core::cmp::Ordering::Less => {
                    best = Some((edges, sign));
                    input_sign = sign;
                }
                core::cmp::Ordering::Equal => {
                    if sign != *bsign {
                        zero = true;
                    }
                }
                core::cmp::Ordering::Greater => {}
            },
        }
    }
    let (edges, _) = best.expect("at least the identity permutation");
    let canonical = LabelledGraph { n: g.n, edges };
    if zero {
        Ok((
            GraphClass {
                canonical,
                is_zero: true,
            },
            0,
        ))
    } else {
        Ok((
            GraphClass {
                canonical,
                is_zero: false,
            },
            input_sign,
        ))
    }
}

/// A rational linear combination of nonzero graph classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphChain {
    terms: BTreeMap<GraphClass, Ratio>,
}

impl GraphChain {
    pub fn zero() -> GraphChain {
        GraphChain::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GraphClass, &Ratio)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, class: &GraphClass) -> Ratio {
        self.terms.get(class).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn add(&mut self, class: GraphClass, coeff: Ratio) {
        if coeff.is_zero() || class.is_zero {
            return;
        }
        match self.terms.entry(class) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn of(class: GraphClass, coeff: Ratio) -> GraphChain {
        let mut c = GraphChain::zero();
        c.add(class, coeff);
        c
    }

    pub fn plus(&self, other: &GraphChain) -> GraphChain {
        let mut out = self.clone();
        for (cls, c) in &other.terms {
            out.add(cls.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Ratio) -> GraphChain {
        if c.is_zero() {
            return GraphChain::zero();
        }
        GraphChain {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c))
                .collect(),
        }
    }
}

impl fmt::Display for GraphChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (cls, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{}", cls.canonical)?;
        }
        Ok(())
    }
}

/// A rational cochain: coefficients of dual classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphCochain {
    terms: BTreeMap<GraphClass, Ratio>,
}

impl GraphCochain {
    pub fn of(class: GraphClass, coeff: Ratio) -> GraphCochain {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() && !class.is_zero {
            terms.insert(class, coeff);
        }
        GraphCochain { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GraphClass, &Ratio)> {
        self.terms.iter()
    }
}

/// Contracts the edge at `edge_index`, merging the larger endpoint into the
/// smaller one and relabelling the tail down by one. Returns the raw graph
/// and the sign `(-1)^j` (times `-1` for an edge running high-to-low).
fn contract_edge(g: &LabelledGraph, edge_index: usize) -> (LabelledGraph, i64) {
    let (a, b) = g.edges[edge_index];
    let (i, j, extra) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let sign = if j % 2 == 0 { extra } else { -extra };
    let relabel = |v: usize| -> usize {
        if v == j {
            i
        } else if v > j {
            v - 1
        } else {
            v
        }
    };
    let mut edges = Vec::with_capacity(g.edges.len() - 1);
    for (k, &(u, v)) in g.edges.iter().enumerate() {
        if k == edge_index {
            continue;
        }
        edges.push((relabel(u), relabel(v)));
    }
    edges.sort_unstable();
    (LabelledGraph { n: g.n - 1, edges }, sign)
}

/// Graph boundary: the signed sum of single edge contractions, extended
/// linearly to chains. Loops created by contraction vanish in canonical form.
pub fn boundary(chain: &GraphChain) -> Result<GraphChain, GraphError> {
    let mut out = GraphChain::zero();
    for (class, coeff) in &chain.terms {
        let g = &class.canonical;
        for k in 0..g.edges.len() {
            let (contracted, sign) = contract_edge(g, k);
            let (cls, csign) = canonical_form(&contracted)?;
            if csign == 0 {
                continue;
            }
            out.add(cls, coeff.clone() * q(sign * csign));
        }
    }
    Ok(out)
}

/// Odd vertex variable `t_i` (degree -1).
pub fn vertex_var(i: usize) -> Generator {
    Generator::new(format!("t{i:02}"), -1)
}

/// Even edge variable `t_{ij}` for `i < j` (degree 0).
pub fn edge_var(i: usize, j: usize) -> Generator {
    debug_assert!(i < j);
    Generator::new(format!("t{i:02}_{j:02}"), 0)
}

/// The polynomial `t_{uv}` for a directed edge, i.e. `±edge_var` with the
/// sign of the normal form `t_{ij} = -t_{ji}`; zero for a loop.
pub fn edge_poly(u: usize, v: usize) -> GradedPoly {
    if u == v {
        GradedPoly::zero()
    } else if u < v {
        GradedPoly::var(&edge_var(u, v))
    } else {
        -&GradedPoly::var(&edge_var(v, u))
    }
}

fn injective_assignments(k: usize, range: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, range: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 1..=range {
            if !cur.contains(&v) {
                cur.push(v);
                rec(k, range, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    rec(k, range, &mut cur, &mut out);
    out
}

/// Encodes a class as the polynomial `Σ t_{l_1}...t_{l_n} Π t_{l_i l_j}` with
/// labels summed over `1..=range`; non-injective assignments vanish because
/// the `t_i` are odd. Contains no symmetry factors.
pub fn to_polynomial_with_range(class: &GraphClass, range: usize) -> GradedPoly {
    if class.is_zero {
        return GradedPoly::zero();
    }
    let g = &class.canonical;
    let mut out = GradedPoly::zero();
    for assign in injective_assignments(g.n, range) {
        let mut term = GradedPoly::one();
        for v in 1..=g.n {
            term = &term * &GradedPoly::var(&vertex_var(assign[v - 1]));
        }
        for &(u, v) in &g.edges {
            term = &term * &edge_poly(assign[u - 1], assign[v - 1]);
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    out
}

/// Encoding over the graph's own label range `1..=n`.
pub fn to_polynomial(class: &GraphClass) -> GradedPoly {
    to_polynomial_with_range(class, class.n_vertices())
}

/// Symmetry factors of a labelled graph, loops allowed:
/// `#P` = product of multiplicity factorials over vertex pairs (loops
/// included), `#V` = order of the vertex-permutation group preserving the
/// undirected multigraph, `#L` = 2 per loop.
pub fn symmetry_factor(g: &LabelledGraph) -> (Ratio, Ratio, Ratio) {
    let mult = g.undirected_multiplicities();
    let mut p = Ratio::one();
    let mut loops = 0u32;
    for (&(a, b), &m) in &mult {
        p *= crate::rational::factorial(u64::from(m));
        if a == b {
            loops += m;
        }
    }
    let mut v = 0u64;
    for perm in permutations(g.n) {
        let mut mapped: BTreeMap<(usize, usize), u32> = BTreeMap::new();
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

/// `|Aut Γ| = #P · #V · #L`.
pub fn aut_order(g: &LabelledGraph) -> Ratio {
    let (p, v, l) = symmetry_factor(g);
    p * v * l
}

/// Extracts the coefficient of class `g` from a graph polynomial: apply
/// `∂_{t_n}...∂_{t_1}` and one `∂_{t_{ij}}` per canonical edge, evaluate at
/// zero, divide by `#V·#P`. Linear in `p`.
pub fn extract_coefficient(class: &GraphClass, p: &GradedPoly) -> Ratio {
    if class.is_zero {
        return Ratio::zero();
    }
    let g = &class.canonical;
    let mut acc = p.clone();
    for v in 1..=g.n {
        acc = acc.derive(&vertex_var(v));
        if acc.is_zero() {
            return Ratio::zero();
        }
    }
    let mut sign = Ratio::one();
    for &(u, v) in &g.edges {
        if u < v {
            acc = acc.derive(&edge_var(u, v));
        } else {
            acc = acc.derive(&edge_var(v, u));
            sign = -sign;
        }
        if acc.is_zero() {
            return Ratio::zero();
        }
    }
    let value = acc.constant_term() * sign;
    let (pf, vf, _) = symmetry_factor(g);
    value / (pf * vf)
}

/// Renaming operator `R^p_k` on graph polynomials: renames the vertex-pair
/// index `p` to `k` in every `t_{ij}` (producing zero when `t_{kk}` forms).
fn rename_index(poly: &GradedPoly, p: usize, k: usize, range: usize) -> GradedPoly {
    let mut bindings = BTreeMap::new();
    bindings.insert(vertex_var(p), GradedPoly::var(&vertex_var(k)));
    for other in 1..=range {
        if other == p {
            continue;
        }
        let (i, j) = (p.min(other), p.max(other));
        let from = edge_var(i, j);
        // t_{p,other} -> t_{k,other}, keeping the normal-form sign
        let to = if p < other {
            edge_poly(k, other)
        } else {
            edge_poly(other, k)
        };
        bindings.insert(from, to);
    }
    poly.substitute(&bindings)
        .expect("renaming preserves parity")
}

/// Operator form of the graph differential,
/// `∂_Gph = -1/(2(N-l+1)) Σ_{k≠p} R^p_k ∂/∂t_{kp} ∂/∂t_p`,
/// acting on a polynomial of vertex degree `l` over labels `1..=N`.
/// The derivative with respect to `t_{kp}` is taken before the renaming.
pub fn boundary_operator_poly(p: &GradedPoly, range: usize, l: usize) -> GradedPoly {
    let mut sum = GradedPoly::zero();
    for k in 1..=range {
        for pp in 1..=range {
            if k == pp {
                continue;
            }
            let d1 = p.derive(&vertex_var(pp));
            if d1.is_zero() {
                continue;
            }
            // ∂/∂t_{kp} with the antisymmetric normal form
            let (i, j) = (k.min(pp), k.max(pp));
            let mut d2 = d1.derive(&edge_var(i, j));
            if k > pp {
                d2 = -&d2;
            }
            if d2.is_zero() {
                continue;
            }
            sum = &sum + &rename_index(&d2, pp, k, range);
        }
    }
    let denom = q(-2) * q((range - l + 1) as i64);
    sum.scale(&(Ratio::one() / denom))
}

/// Decodes a graph polynomial into a chain of canonical classes. The input
/// must be homogeneous in vertex degree; the decoded chain re-encodes to the
/// polynomial restricted to labels `1..=v`.
pub fn chain_from_polynomial(p: &GradedPoly) -> Result<GraphChain, GraphError> {
    if p.is_zero() {
        return Ok(GraphChain::zero());
    }
    let mut vertex_degree: Option<usize> = None;
    let mut candidates: Vec<LabelledGraph> = Vec::new();
    for (m, _) in p.terms() {
        let mut labels = Vec::new();
        let mut edges_raw: Vec<((usize, usize), u32)> = Vec::new();
        for (g, e) in m.factors() {
            let name = g.name();
            let Some(rest) = name.strip_prefix('t') else {
                return Err(GraphError::NotAGraphPolynomial(name.into()));
            };
            if let Some((a, b)) = rest.split_once('_') {
                let (Ok(i), Ok(j)) = (a.parse::<usize>(), b.parse::<usize>()) else {
                    return Err(GraphError::NotAGraphPolynomial(name.into()));
                };
                edges_raw.push(((i, j), *e));
            } else {
                let Ok(i) = rest.parse::<usize>() else {
                    return Err(GraphError::NotAGraphPolynomial(name.into()));
                };
                labels.push(i);
            }
        }
        match vertex_degree {
            None => vertex_degree = Some(labels.len()),
            Some(v) if v == labels.len() => {}
            Some(v) => {
                return Err(GraphError::NotAGraphPolynomial(format!(
                    "mixed vertex degrees {v} and {}",
                    labels.len()
                )))
            }
        }
        // only the canonical label window produces class candidates
        let v = labels.len();
        if labels.iter().all(|&l| l <= v) {
            let mut edges = Vec::new();
            for ((i, j), mult) in edges_raw {
                for _ in 0..mult {
                    edges.push((i, j));
                }
            }
            candidates.push(LabelledGraph::new(v, edges)?);
        }
    }
    let mut out = GraphChain::zero();
    for g in candidates {
        let (class, sign) = canonical_form(&g)?;
        if sign == 0 || !out.coefficient(&class).is_zero() {
            continue;
        }
        let c = extract_coefficient(&class, p);
        out.add(class, c);
    }
    Ok(out)
}

/// Bilinear pairing of a cochain with a chain. Mismatched vertex degrees
/// pair to zero; `strict` makes the mismatch an error instead.
pub fn pair(
    cochain: &GraphCochain,
    chain: &GraphChain,
    strict: bool,
) -> Result<Ratio, GraphError> {
    let mut out = Ratio::zero();
    for (cls, b) in &cochain.terms {
        for (gls, c) in &chain.terms {
            if cls.n_vertices() != gls.n_vertices() {
                if strict {
                    return Err(GraphError::DegreeMismatch {
                        cochain: cls.n_vertices(),
                        chain: gls.n_vertices(),
                    });
                }
                continue;
            }
            if cls == gls {
                out += b.clone() * c;
            }
        }
    }
    Ok(out)
}

/// All distinct nonzero classes with exactly `n` vertices and at most
/// `max_edges` edges (loop-free multigraphs up to equivalence).
pub fn enumerate_classes(n: usize, max_edges: usize) -> Result<Vec<GraphClass>, GraphError> {
    fn rec(
        idx: usize,
        remaining: usize,
        pairs: &[(usize, usize)],
        mult: &mut Vec<u32>,
        n: usize,
        seen: &mut alloc::collections::BTreeSet<LabelledGraph>,
        out: &mut Vec<GraphClass>,
    ) -> Result<(), GraphError> {
        if idx == pairs.len() {
            let mut edges = Vec::new();
            for (k, &(i, j)) in pairs.iter().enumerate() {
                for _ in 0..mult[k] {
                    edges.push((i, j));
                }
            }
            let g = LabelledGraph::new(n, edges)?;
            let (class, sign) = canonical_form(&g)?;
            if sign != 0 && seen.insert(class.canonical.clone()) {
                out.push(class);
            }
            return Ok(());
        }
        for m in 0..=remaining {
            mult[idx] = m as u32;
            rec(idx + 1, remaining - m, pairs, mult, n, seen, out)?;
        }
        mult[idx] = 0;
        Ok(())
    }
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut mult = vec![0u32; pairs.len()];
    rec(0, max_edges, &pairs, &mut mult, n, &mut seen, &mut out)?;
    Ok(out)
}

/// Canonical labelling of an undirected multigraph with loops, restricted to
/// permutations preserving `colors` (vertex `i` has color `colors[i-1]`).
/// No orientation signs: this is plain isomorphism, used to group Wick
/// contraction patterns into diagram classes.
pub fn canonical_multigraph(
    n: usize,
    edges: &[(usize, usize)],
    colors: &[usize],
) -> LabelledGraph {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for perm in permutations(n) {
        if (1..=n).any(|v| colors[v - 1] != colors[perm[v - 1] - 1]) {
            continue;
        }
        let mut mapped: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (na, nb) = (perm[a - 1], perm[b - 1]);
                (na.min(nb), na.max(nb))
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    }
    LabelledGraph {
        n,
        edges: best.unwrap_or_default(),
    }
}

/// Well-known small graphs used across the suites.
pub mod classes {
    use super::*;

    /// Two vertices joined by a single edge.
    pub fn single_edge() -> GraphClass {
        let g = LabelledGraph::new(2, vec![(1, 2)]).unwrap();
        canonical_form(&g).unwrap().0
    }

    /// The theta graph: two vertices joined by three parallel edges.
    pub fn theta() -> GraphClass {
        let g = LabelledGraph::new(2, vec![(1, 2), (1, 2), (1, 2)]).unwrap();
        canonical_form(&g).unwrap().0
    }

    /// Tetrahedron (complete graph on four vertices).
    pub fn tetrahedron() -> GraphClass {
        let g = LabelledGraph::new(4, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
            .unwrap();
        canonical_form(&g).unwrap().0
    }

    /// Four-vertex trivalent graph with two doubled opposite edges and two
    /// single rungs.
    pub fn double_square() -> GraphClass {
        let g = LabelledGraph::new(4, vec![(1, 2), (1, 2), (4, 3), (4, 3), (1, 4), (2, 3)])
            .unwrap();
        canonical_form(&g).unwrap().0
    }

    /// Three-vertex graph with edge multiplicities 2, 2, 1: the boundary of
    /// both four-vertex trivalent classes.
    pub fn gamma8() -> GraphClass {
        let g = LabelledGraph::new(3, vec![(1, 2), (1, 2), (1, 3), (1, 3), (2, 3)]).unwrap();
        canonical_form(&g).unwrap().0
    }

    /// One isolated vertex, no edges.
    pub fn point() -> GraphClass {
        let g = LabelledGraph::new(1, vec![]).unwrap();
        canonical_form(&g).unwrap().0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_poly::GradedPoly;

    #[test]
    fn canonical_form_spec_examples() {
        // single edge both directions: same class, opposite signs
        let a = LabelledGraph::new(2, vec![(1, 2)]).unwrap();
        let b = LabelledGraph::new(2, vec![(2, 1)]).unwrap();
        let (ca, sa) = canonical_form(&a).unwrap();
        let (cb, sb) = canonical_form(&b).unwrap();
        assert_eq!(ca, cb);
        assert_eq!(sa * sb, -1);
        assert!(!ca.is_zero());

        // triangle and its transposition-plus-flip relabelling: same class, same sign
        let t1 = LabelledGraph::new(3, vec![(1, 2), (2, 3), (1, 3)]).unwrap();
        let t2 = LabelledGraph::new(3, vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        let (c1, s1) = canonical_form(&t1).unwrap();
        let (c2, s2) = canonical_form(&t2).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(s1, s2);

        // theta graph survives, two parallel edges die
        assert!(!classes::theta().is_zero());
        let two = LabelledGraph::new(2, vec![(1, 2), (1, 2)]).unwrap();
        let (c, s) = canonical_form(&two).unwrap();
        assert!(c.is_zero());
        assert_eq!(s, 0);

        // loops die immediately
        let looped = LabelledGraph::new(1, vec![(1, 1)]).unwrap();
        let (c, s) = canonical_form(&looped).unwrap();
        assert!(c.is_zero());
        assert_eq!(s, 0);
    }

    #[test]
    fn canonical_form_idempotent_and_relabelling_invariant() {
        let g = LabelledGraph::new(4, vec![(1, 2), (1, 2), (4, 3), (4, 3), (1, 4), (2, 3)])
            .unwrap();
        let (class, _) = canonical_form(&g).unwrap();
        let (again, sign) = canonical_form(class.graph()).unwrap();
        assert_eq!(again, class);
        assert_eq!(sign, 1);
        for perm in permutations(4) {
            let relabelled: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(a, b)| (perm[a - 1], perm[b - 1]))
                .collect();
            let h = LabelledGraph::new(4, relabelled).unwrap();
            let (hc, _) = canonical_form(&h).unwrap();
            assert_eq!(hc, class);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = LabelledGraph::new(9, vec![]).unwrap();
        assert_eq!(
            canonical_form(&g).unwrap_err(),
            GraphError::CapExceeded {
                vertices: 9,
                cap: DEFAULT_VERTEX_CAP
            }
        );
    }

    #[test]
    fn boundary_of_single_edge_is_point() {
        let chain = GraphChain::of(classes::single_edge(), q(1));
        let b = boundary(&chain).unwrap();
        assert_eq!(b, GraphChain::of(classes::point(), q(1)));
    }

    #[test]
    fn boundary_goldens() {
        // ∂Γ1 = 6·Γ8 and ∂Γ2 = -2·Γ8
        let b1 = boundary(&GraphChain::of(classes::tetrahedron(), q(1))).unwrap();
        assert_eq!(b1, GraphChain::of(classes::gamma8(), q(6)));
        let b2 = boundary(&GraphChain::of(classes::double_square(), q(1))).unwrap();
        assert_eq!(b2, GraphChain::of(classes::gamma8(), q(-2)));
    }

    #[test]
    fn to_polynomial_single_edge() {
        let p = to_polynomial(&classes::single_edge());
        let expect = GradedPoly::monomial(
            q(2),
            &[(vertex_var(1), 1), (vertex_var(2), 1), (edge_var(1, 2), 1)],
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn symmetry_factors_figure_one() {
        let theta = LabelledGraph::new(2, vec![(1, 2); 3]).unwrap();
        assert_eq!(aut_order(&theta), q(12));
        let dumbbell = LabelledGraph::new(2, vec![(1, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(aut_order(&dumbbell), q(8));
        let g3 = LabelledGraph::new(2, vec![(1, 2), (1, 2), (1, 2), (2, 2)]).unwrap();
        assert_eq!(aut_order(&g3), q(12));
        let g4 = LabelledGraph::new(2, vec![(1, 1), (1, 2), (2, 2), (2, 2)]).unwrap();
        assert_eq!(aut_order(&g4), q(16));
    }

    #[test]
    fn symmetry_factors_trivalent_classes() {
        let (p, v, _) = symmetry_factor(classes::tetrahedron().graph());
        assert_eq!((p, v), (q(1), q(24)));
        let (p, v, _) = symmetry_factor(classes::double_square().graph());
        assert_eq!((p, v), (q(4), q(4)));
        let (p, v, _) = symmetry_factor(classes::gamma8().graph());
        assert_eq!((p, v), (q(4), q(2)));
    }

    #[test]
    fn extraction_is_identity_on_own_polynomial() {
        for class in [
            classes::single_edge(),
            classes::theta(),
            classes::tetrahedron(),
            classes::double_square(),
            classes::gamma8(),
        ] {
            let p = to_polynomial(&class);
            assert_eq!(extract_coefficient(&class, &p), q(1), "{class}");
        }
    }

    #[test]
    fn operator_differential_matches_combinatorial_on_single_edge() {
        let p = to_polynomial(&classes::single_edge());
        let d = boundary_operator_poly(&p, 2, 2);
        let expect = &GradedPoly::var(&vertex_var(1)) + &GradedPoly::var(&vertex_var(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn chain_from_polynomial_round_trip() {
        let chain = GraphChain::of(classes::tetrahedron(), q(3))
            .plus(&GraphChain::of(classes::double_square(), q(-2)));
        let mut poly = GradedPoly::zero();
        for (cls, c) in chain.terms() {
            poly = &poly + &to_polynomial(cls).scale(c);
        }
        let back = chain_from_polynomial(&poly).unwrap();
        assert_eq!(back, chain);
    }

    #[test]
    fn pairing_golden_values() {
        let gamma8_dual = GraphCochain::of(classes::gamma8(), q(1));
        let b1 = boundary(&GraphChain::of(classes::tetrahedron(), q(1))).unwrap();
        assert_eq!(pair(&gamma8_dual, &b1, false).unwrap(), q(6));
        let b2 = boundary(&GraphChain::of(classes::double_square(), q(1))).unwrap();
        assert_eq!(pair(&gamma8_dual, &b2, false).unwrap(), q(-2));
        // degree mismatch: zero in lax mode, error in strict mode
        let theta_dual = GraphCochain::of(classes::theta(), q(1));
        assert_eq!(pair(&theta_dual, &b1, false).unwrap(), q(0));
        assert!(pair(&theta_dual, &b1, true).is_err());
    }
}
