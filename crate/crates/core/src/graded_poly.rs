//! Exact graded-commutative polynomial arithmetic with Koszul signs.
//!
//! Generators carry an integer degree; parity is the degree mod 2. Monomials
//! are kept in a normal form sorted by `(degree, name)`, odd generators square
//! to zero and each transposition of two odd factors flips the sign of the
//! coefficient. Coefficients are arbitrary-precision rationals, so every
//! identity in this crate is checked exactly.
//!
//! Sign convention: a single Z-grading with `v w = (-1)^{|v||w|} w v` for the
//! induced parities. Left graded derivatives throughout; the Berezin integral
//! over a list `[g1, ..., gm]` applies the left derivative with respect to
//! `g1` first (the measure `d^mθ = dθ^m ... dθ^1`).

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Ratio;

/// Parity of a generator or homogeneous polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(degree: i64) -> Parity {
        if degree.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    /// Parity as an exponent in `(-1)^p`.
    pub fn bit(self) -> u64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// A named generator of fixed integer degree. The derived ordering
/// `(degree, name)` defines the monomial normal form everywhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    degree: i64,
    name: String,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Generator {
        Generator {
            degree,
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.degree)
    }

    pub fn is_odd(&self) -> bool {
        self.parity().is_odd()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Errors raised by polynomial construction and the graded operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// A raw factor names a generator that was never registered.
    UnknownGenerator(String),
    /// Berezin integration was asked to integrate an even generator.
    EvenGeneratorInBerezin(String),
    /// A substitution binds a generator to a polynomial of the wrong parity.
    ParityViolatingBinding(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            PolyError::EvenGeneratorInBerezin(name) => {
                write!(f, "Berezin integral over even generator `{name}`")
            }
            PolyError::ParityViolatingBinding(name) => {
                write!(f, "substitution for `{name}` does not preserve parity")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// A normal-form monomial: factors sorted by the generator order, positive
/// exponents, odd generators with exponent exactly one.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    /// Total graded degree: sum of generator degrees times exponents.
    pub fn degree(&self) -> i64 {
        self.factors
            .iter()
            .map(|(g, e)| g.degree() * i64::from(*e))
            .sum()
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.degree())
    }

    /// Sum of exponents (the polynomial degree, ignoring generator grading).
    pub fn total_exponent(&self) -> u64 {
        self.factors.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn exponent_of(&self, g: &Generator) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.exponent_of(g) > 0
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.factors.iter().map(|(g, _)| g)
    }

    /// Normalizes an arbitrary factor sequence. Returns the sorted monomial
    /// and `true` when the Koszul reordering flips the sign; `None` when an
    /// odd generator repeats (the term is zero).
    pub fn normalize(sequence: &[(Generator, u32)]) -> Option<(Monomial, bool)> {
        let mut negative = false;
        let items: Vec<&(Generator, u32)> =
            sequence.iter().filter(|(_, e)| *e > 0).collect();
        for (i, (gi, ei)) in items.iter().map(|p| (&p.0, p.1)).enumerate() {
            if gi.is_odd() && ei > 1 {
                return None;
            }
            for (gj, _) in items[i + 1..].iter().map(|p| (&p.0, p.1)) {
                if gi.is_odd() && gj.is_odd() {
                    match gi.cmp(gj) {
                        core::cmp::Ordering::Greater => negative = !negative,
                        core::cmp::Ordering::Equal => return None,
                        core::cmp::Ordering::Less => {}
                    }
                }
            }
        }
        let mut merged: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in items {
            *merged.entry(g.clone()).or_insert(0) += *e;
        }
        Some((
            Monomial {
                factors: merged.into_iter().collect(),
            },
            negative,
        ))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact graded-commutative polynomial: a map from normal-form monomials to
/// nonzero rational coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Ratio>,
}

impl GradedPoly {
    pub fn zero() -> GradedPoly {
        GradedPoly::default()
    }

    pub fn one() -> GradedPoly {
        GradedPoly::constant(Ratio::one())
    }

    pub fn constant(c: Ratio) -> GradedPoly {
        let mut p = GradedPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(g: &Generator) -> GradedPoly {
        let mut p = GradedPoly::zero();
        p.add_term(
            Monomial {
                factors: alloc::vec![(g.clone(), 1)],
            },
            Ratio::one(),
        );
        p
    }

    /// Monomial from an already-normalized factor sequence.
    pub fn monomial(c: Ratio, sequence: &[(Generator, u32)]) -> GradedPoly {
        let mut p = GradedPoly::zero();
        if let Some((m, neg)) = Monomial::normalize(sequence) {
            p.add_term(m, if neg { -c } else { c });
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Ratio)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Ratio {
        self.terms.get(m).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn constant_term(&self) -> Ratio {
        self.coefficient(&Monomial::one())
    }

    fn add_term(&mut self, m: Monomial, c: Ratio) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Ratio) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c))
                .collect(),
        }
    }

    /// Degree when every term agrees, `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        it.all(|m| m.degree() == first).then_some(first)
    }

    /// Parity when every term agrees, `None` for zero or mixed input.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys();
        let first = it.next()?.parity();
        it.all(|m| m.parity() == first).then_some(first)
    }

    /// Splits into (even-parity part, odd-parity part).
    pub fn parity_split(&self) -> (GradedPoly, GradedPoly) {
        let mut even = GradedPoly::zero();
        let mut odd = GradedPoly::zero();
        for (m, c) in &self.terms {
            match m.parity() {
                Parity::Even => even.add_term(m.clone(), c.clone()),
                Parity::Odd => odd.add_term(m.clone(), c.clone()),
            }
        }
        (even, odd)
    }

    /// Largest `total_exponent` over the terms, 0 for the zero polynomial.
    pub fn max_total_exponent(&self) -> u64 {
        self.terms
            .keys()
            .map(Monomial::total_exponent)
            .max()
            .unwrap_or(0)
    }

    /// Smallest `total_exponent` over the terms, `None` for zero.
    pub fn min_total_exponent(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_exponent).min()
    }

    /// The set of generators appearing in the polynomial.
    pub fn support(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|m| m.generators().cloned())
            .collect()
    }

    /// Keeps only the terms with no generator matching `pred` (evaluation at
    /// zero of the matching generators).
    pub fn kill_generators(&self, pred: impl Fn(&Generator) -> bool) -> GradedPoly {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.generators().any(|g| pred(g)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Left graded derivative with respect to `g`; degree `-deg(g)`.
    pub fn derive(&self, g: &Generator) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            let Some(pos) = m.factors.iter().position(|(h, _)| h == g) else {
                continue;
            };
            let mut factors = m.factors.clone();
            let (_, e) = factors[pos].clone();
            if g.is_odd() {
                let odd_before = factors[..pos]
                    .iter()
                    .filter(|(h, _)| h.is_odd())
                    .count();
                factors.remove(pos);
                let mut coeff = c.clone();
                if odd_before % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(Monomial { factors }, coeff);
            } else {
                let coeff = c.clone() * Ratio::from_integer(e.into());
                if e == 1 {
                    factors.remove(pos);
                } else {
                    factors[pos].1 = e - 1;
                }
                out.add_term(Monomial { factors }, coeff);
            }
        }
        out
    }

    /// Iterated Berezin integral over the listed odd generators, innermost
    /// first (`d^mθ = dθ^m ... dθ^1` applies `∂_{θ^1}` first).
    pub fn berezin(&self, odd_generators: &[Generator]) -> Result<GradedPoly, PolyError> {
        for g in odd_generators {
            if !g.is_odd() {
                return Err(PolyError::EvenGeneratorInBerezin(g.name.clone()));
            }
        }
        let mut acc = self.clone();
        for g in odd_generators {
            acc = acc.derive(g);
        }
        Ok(acc)
    }

    /// Simultaneous graded substitution. Every bound generator must map to a
    /// polynomial of its own parity; unbound generators stay themselves.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Generator, GradedPoly>,
    ) -> Result<GradedPoly, PolyError> {
        for (g, b) in bindings {
            if !b.is_zero() && b.homogeneous_parity() != Some(g.parity()) {
                return Err(PolyError::ParityViolatingBinding(g.name.clone()));
            }
        }
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = GradedPoly::constant(c.clone());
            for (g, e) in &m.factors {
                let base = match bindings.get(g) {
                    Some(b) => b.clone(),
                    None => GradedPoly::var(g),
                };
                acc = &acc * &base.pow(*e);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut acc = GradedPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut seq = ma.factors.clone();
                seq.extend_from_slice(&mb.factors);
                if let Some((m, neg)) = Monomial::normalize(&seq) {
                    let c = ca.clone() * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if (-c.clone()).is_one() {
                write!(f, "-{m}")?;
            } else {
                write!(f, "{c} {m}")?;
            }
        }
        Ok(())
    }
}

/// A registry of named generators: the entry point for building polynomials
/// from raw user input, where unknown names must be rejected.
#[derive(Clone, Debug, Default)]
pub struct GeneratorSet {
    by_name: BTreeMap<String, Generator>,
}

impl GeneratorSet {
    pub fn new() -> GeneratorSet {
        GeneratorSet::default()
    }

    pub fn register(&mut self, name: impl Into<String>, degree: i64) -> Generator {
        let name = name.into();
        let g = Generator::new(name.clone(), degree);
        self.by_name.insert(name, g.clone());
        g
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.by_name.get(name)
    }

    pub fn resolve(&self, name: &str) -> Result<&Generator, PolyError> {
        self.by_name
            .get(name)
            .ok_or_else(|| PolyError::UnknownGenerator(name.to_owned()))
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.by_name.values()
    }

    /// Canonical form of a raw sum of (coefficient, unordered factor list)
    /// terms; factors are `(name, exponent)` pairs resolved in this registry.
    pub fn normalize(
        &self,
        raw: &[(Ratio, Vec<(String, u32)>)],
    ) -> Result<GradedPoly, PolyError> {
        let mut out = GradedPoly::zero();
        for (coeff, factors) in raw {
            let mut seq = Vec::with_capacity(factors.len());
            for (name, exp) in factors {
                seq.push((self.resolve(name)?.clone(), *exp));
            }
            out = &out + &GradedPoly::monomial(coeff.clone(), &seq);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qq};

    fn theta(i: usize) -> Generator {
        Generator::new(alloc::format!("th{i:02}"), 1)
    }

    fn x() -> Generator {
        Generator::new("x01", 0)
    }

    #[test]
    fn normalize_spec_examples() {
        // (1, [θ2, θ1]) -> -θ1θ2
        let p = GradedPoly::monomial(q(1), &[(theta(2), 1), (theta(1), 1)]);
        let expected = GradedPoly::monomial(q(-1), &[(theta(1), 1), (theta(2), 1)]);
        assert_eq!(p, expected);

        // odd square vanishes
        let z = GradedPoly::monomial(q(1), &[(theta(1), 1), (theta(1), 1)]);
        assert!(z.is_zero());
        let z2 = GradedPoly::monomial(q(1), &[(theta(1), 2)]);
        assert!(z2.is_zero());

        // t2 t1 t12 with odd t_i of degree -1 and even t12: one odd swap
        let t1 = Generator::new("t01", -1);
        let t2 = Generator::new("t02", -1);
        let t12 = Generator::new("t01_02", 0);
        let p = GradedPoly::monomial(q(1), &[(t2.clone(), 1), (t1.clone(), 1), (t12.clone(), 1)]);
        let expected = GradedPoly::monomial(q(-1), &[(t1, 1), (t2, 1), (t12, 1)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn unknown_generator_rejected() {
        let mut gens = GeneratorSet::new();
        gens.register("x01", 0);
        let err = gens
            .normalize(&[(q(1), alloc::vec![("y01".into(), 1)])])
            .unwrap_err();
        assert_eq!(err, PolyError::UnknownGenerator("y01".into()));
    }

    #[test]
    fn mul_spec_examples() {
        let t1 = GradedPoly::var(&theta(1));
        let t2 = GradedPoly::var(&theta(2));
        let t12 = &t1 * &t2;
        assert_eq!(&t2 * &t1, -&t12);

        let xv = GradedPoly::var(&x());
        assert_eq!(&xv * &t1, &t1 * &xv);

        // (θ1θ2)(θ3θ4) = +θ1θ2θ3θ4
        let a = &t1 * &t2;
        let b = &GradedPoly::var(&theta(3)) * &GradedPoly::var(&theta(4));
        let prod = &a * &b;
        let expect = GradedPoly::monomial(
            q(1),
            &[(theta(1), 1), (theta(2), 1), (theta(3), 1), (theta(4), 1)],
        );
        assert_eq!(prod, expect);
    }

    #[test]
    fn derive_spec_examples() {
        let t1t2 = GradedPoly::monomial(q(1), &[(theta(1), 1), (theta(2), 1)]);
        assert_eq!(t1t2.derive(&theta(1)), GradedPoly::var(&theta(2)));
        assert_eq!(t1t2.derive(&theta(2)), -&GradedPoly::var(&theta(1)));

        let x3 = GradedPoly::monomial(q(1), &[(x(), 3)]);
        let expect = GradedPoly::monomial(q(3), &[(x(), 2)]);
        assert_eq!(x3.derive(&x()), expect);
    }

    #[test]
    fn berezin_spec_examples() {
        let t1t2 = GradedPoly::monomial(q(1), &[(theta(1), 1), (theta(2), 1)]);
        let full = t1t2.berezin(&[theta(1), theta(2)]).unwrap();
        assert_eq!(full, GradedPoly::one());

        let t1 = GradedPoly::var(&theta(1));
        assert!(t1.berezin(&[theta(1), theta(2)]).unwrap().is_zero());

        // x θ2 θ1 integrates to -x
        let p = GradedPoly::monomial(q(1), &[(x(), 1), (theta(2), 1), (theta(1), 1)]);
        let got = p.berezin(&[theta(1), theta(2)]).unwrap();
        assert_eq!(got, GradedPoly::monomial(q(-1), &[(x(), 1)]));

        let err = t1.berezin(&[x()]).unwrap_err();
        assert_eq!(err, PolyError::EvenGeneratorInBerezin("x01".into()));
    }

    #[test]
    fn substitute_spec_examples() {
        let xv = x();
        let x2 = GradedPoly::monomial(q(1), &[(xv.clone(), 2)]);
        let mut bind = BTreeMap::new();
        bind.insert(xv.clone(), &GradedPoly::var(&xv) + &GradedPoly::one());
        let got = x2.substitute(&bind).unwrap();
        let expect = &(&GradedPoly::monomial(q(1), &[(xv.clone(), 2)])
            + &GradedPoly::monomial(q(2), &[(xv.clone(), 1)]))
            + &GradedPoly::one();
        assert_eq!(got, expect);

        // θ1θ2 with θ1 -> θ2 collapses to zero
        let t1t2 = GradedPoly::monomial(q(1), &[(theta(1), 1), (theta(2), 1)]);
        let mut bind = BTreeMap::new();
        bind.insert(theta(1), GradedPoly::var(&theta(2)));
        assert!(t1t2.substitute(&bind).unwrap().is_zero());

        // t1 t2 with t2 -> t1 + t3 gives t1 t3 (odd square drops)
        let t = |i: usize| Generator::new(alloc::format!("t{i:02}"), -1);
        let t1t2 = GradedPoly::monomial(q(1), &[(t(1), 1), (t(2), 1)]);
        let mut bind = BTreeMap::new();
        bind.insert(t(2), &GradedPoly::var(&t(1)) + &GradedPoly::var(&t(3)));
        let got = t1t2.substitute(&bind).unwrap();
        assert_eq!(got, GradedPoly::monomial(q(1), &[(t(1), 1), (t(3), 1)]));

        // parity violation rejected
        let mut bad = BTreeMap::new();
        bad.insert(theta(1), GradedPoly::var(&x()));
        let p = GradedPoly::var(&theta(1));
        assert_eq!(
            p.substitute(&bad).unwrap_err(),
            PolyError::ParityViolatingBinding("th01".into())
        );
    }

    #[test]
    fn display_is_deterministic() {
        let p = &GradedPoly::monomial(qq(-3, 2), &[(x(), 2), (theta(1), 1)])
            + &GradedPoly::monomial(q(1), &[(theta(2), 1)]);
        assert_eq!(alloc::format!("{p}"), "-3/2 x01^2 th01 + th02");
    }
}
