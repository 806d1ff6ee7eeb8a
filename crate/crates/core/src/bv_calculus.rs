//! Finite-dimensional BV calculus on polynomial models of `T[1]R^n` and
//! `T*[-1]R^n`: the odd Fourier transform, the odd Laplacian, the odd
//! Poisson (Schouten) bracket generated by it, the de Rham differential,
//! the star convolution, and the Ward-identity checks.
//!
//! Coordinates on a space of dimension `n`: even `x^μ` (degree 0), odd
//! `θ^μ` (degree 1, functions of `(x, θ)` are differential forms) and odd
//! `ψ_μ` (degree -1, functions of `(x, ψ)` are multivector fields).
//!
//! The volume density is `ρ = e^σ` with polynomial `σ(x)`; every function
//! carries an integer `density_power` `k` recording an overall factor
//! `e^{kσ}`, so `F` (which multiplies by `ρ^{-1}`) and `F^{-1}` (which
//! multiplies by `ρ`) stay exact and the round trip cancels the powers.
//! On the weight-`k` sector the odd Laplacian acts as
//! `Δ_k = Σ_μ ∂_{x^μ}∂_{ψ_μ} + (k+1) Σ_μ (∂_μ σ) ∂_{ψ_μ}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::graded_poly::{Generator, GradedPoly, Parity};
use crate::linalg;
use crate::rational::{q, Ratio};
use crate::wick_engine::{self, QuadraticKernel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BvError {
    /// A polynomial uses generators outside the allowed coordinate set.
    ForeignVariable { name: String, role: &'static str },
    /// σ must be a polynomial in the even coordinates only.
    BadSigma,
    /// Functions from different spaces or density sectors were combined.
    SpaceMismatch,
    /// An input that must satisfy `Δf = 0` does not; reports the 0-based index.
    DeltaNotClosed { index: usize },
    /// The expansion identity failed (an internal invariant, a bug signal).
    ExpansionMismatch,
    /// Ward check rejected its quadratic form.
    WardRejected(String),
    Wick(wick_engine::WickError),
}

impl fmt::Display for BvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BvError::ForeignVariable { name, role } => {
                write!(f, "generator `{name}` is not a {role} coordinate")
            }
            BvError::BadSigma => write!(f, "sigma must be an even polynomial in x only"),
            BvError::SpaceMismatch => write!(f, "mismatched spaces or density powers"),
            BvError::DeltaNotClosed { index } => {
                write!(f, "input {index} is not Δ-closed")
            }
            BvError::ExpansionMismatch => {
                write!(f, "Δ-product expansion disagrees with the bracket double sum")
            }
            BvError::WardRejected(msg) => write!(f, "Ward check rejected: {msg}"),
            BvError::Wick(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BvError {}

impl From<wick_engine::WickError> for BvError {
    fn from(e: wick_engine::WickError) -> BvError {
        BvError::Wick(e)
    }
}

/// The polynomial model of `T[1]R^n` / `T*[-1]R^n` with log-density σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVSpace {
    n: usize,
    sigma: GradedPoly,
}

impl BVSpace {
    pub fn flat(n: usize) -> BVSpace {
        BVSpace {
            n,
            sigma: GradedPoly::zero(),
        }
    }

    pub fn with_sigma(n: usize, sigma: GradedPoly) -> Result<BVSpace, BvError> {
        let space = BVSpace::flat(n);
        if !sigma
            .support()
            .iter()
            .all(|g| (1..=n).any(|i| *g == space.x(i)))
        {
            return Err(BvError::BadSigma);
        }
        Ok(BVSpace { n, sigma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &GradedPoly {
        &self.sigma
    }

    pub fn x(&self, i: usize) -> Generator {
        Generator::new(format!("x{i:02}"), 0)
    }

    pub fn theta(&self, i: usize) -> Generator {
        Generator::new(format!("th{i:02}"), 1)
    }

    pub fn psi(&self, i: usize) -> Generator {
        Generator::new(format!("ps{i:02}"), -1)
    }

    fn lambda(&self, i: usize) -> Generator {
        Generator::new(format!("lm{i:02}"), -1)
    }

    fn check_support(
        &self,
        poly: &GradedPoly,
        allow_theta: bool,
        allow_psi: bool,
        role: &'static str,
    ) -> Result<(), BvError> {
        for g in poly.support() {
            let ok = (1..=self.n).any(|i| {
                g == self.x(i)
                    || (allow_theta && g == self.theta(i))
                    || (allow_psi && g == self.psi(i))
            });
            if !ok {
                return Err(BvError::ForeignVariable {
                    name: g.name().into(),
                    role,
                });
            }
        }
        Ok(())
    }

    /// A function of `(x, θ)`: a differential form.
    pub fn form(&self, poly: GradedPoly) -> Result<FormFunction, BvError> {
        self.check_support(&poly, true, false, "form (x, θ)")?;
        Ok(FormFunction {
            space: self.clone(),
            poly,
            density_power: 0,
        })
    }

    /// A function of `(x, ψ)`: a multivector field.
    pub fn multivector(&self, poly: GradedPoly) -> Result<MultivectorFunction, BvError> {
        self.check_support(&poly, false, true, "multivector (x, ψ)")?;
        Ok(MultivectorFunction {
            space: self.clone(),
            poly,
            density_power: 0,
        })
    }

    /// `∂_μ σ` as a polynomial.
    fn dsigma(&self, mu: usize) -> GradedPoly {
        self.sigma.derive(&self.x(mu))
    }
}

/// A polynomial function on `T[1]R^n` times `e^{kσ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormFunction {
    pub space: BVSpace,
    pub poly: GradedPoly,
    pub density_power: i64,
}

/// A polynomial function on `T*[-1]R^n` times `e^{kσ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivectorFunction {
    pub space: BVSpace,
    pub poly: GradedPoly,
    pub density_power: i64,
}

impl FormFunction {
    pub fn with_density_power(mut self, k: i64) -> FormFunction {
        self.density_power = k;
        self
    }

    pub fn scale(&self, c: &Ratio) -> FormFunction {
        FormFunction {
            space: self.space.clone(),
            poly: self.poly.scale(c),
            density_power: self.density_power,
        }
    }
}

impl MultivectorFunction {
    pub fn with_density_power(mut self, k: i64) -> MultivectorFunction {
        self.density_power = k;
        self
    }

    pub fn scale(&self, c: &Ratio) -> MultivectorFunction {
        MultivectorFunction {
            space: self.space.clone(),
            poly: self.poly.scale(c),
            density_power: self.density_power,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Graded product of multivector functions (density powers add).
pub fn mv_mul(a: &MultivectorFunction, b: &MultivectorFunction) -> MultivectorFunction {
    debug_assert_eq!(a.space, b.space);
    MultivectorFunction {
        space: a.space.clone(),
        poly: &a.poly * &b.poly,
        density_power: a.density_power + b.density_power,
    }
}

pub fn mv_add(a: &MultivectorFunction, b: &MultivectorFunction) -> Result<MultivectorFunction, BvError> {
    if a.space != b.space || (a.density_power != b.density_power && !a.is_zero() && !b.is_zero()) {
        return Err(BvError::SpaceMismatch);
    }
    Ok(MultivectorFunction {
        space: a.space.clone(),
        poly: &a.poly + &b.poly,
        density_power: if a.is_zero() { b.density_power } else { a.density_power },
    })
}

/// Density-corrected x-derivative: `∂_{x^μ}` on `e^{kσ}·poly`.
fn dx(space: &BVSpace, poly: &GradedPoly, k: i64, mu: usize) -> GradedPoly {
    let mut out = poly.derive(&space.x(mu));
    if k != 0 {
        out = &out + &(&space.dsigma(mu) * poly).scale(&q(k));
    }
    out
}

/// De Rham differential `D = θ^μ ∂/∂x^μ`; degree +1, `D∘D = 0`.
pub fn de_rham(f: &FormFunction) -> FormFunction {
    let space = &f.space;
    let mut out = GradedPoly::zero();
    for mu in 1..=space.n {
        let d = dx(space, &f.poly, f.density_power, mu);
        out = &out + &(&GradedPoly::var(&space.theta(mu)) * &d);
    }
    FormFunction {
        space: space.clone(),
        poly: out,
        density_power: f.density_power,
    }
}

/// `Π_μ (1 + s·ψ_μ θ^μ)`: the truncated exponential `e^{s·ψ_μθ^μ}`.
fn fourier_kernel(space: &BVSpace, s: i64) -> GradedPoly {
    let mut out = GradedPoly::one();
    for mu in 1..=space.n {
        let pt = &GradedPoly::var(&space.psi(mu)) * &GradedPoly::var(&space.theta(mu));
        out = &out * &(&GradedPoly::one() + &pt.scale(&q(s)));
    }
    out
}

/// Odd Fourier transform `F[f](x, ψ) = ∫ d^nθ ρ^{-1} e^{ψ_μ θ^μ} f(x, θ)`;
/// maps forms to multivectors and lowers the density power by one.
pub fn odd_fourier(f: &FormFunction) -> MultivectorFunction {
    let space = &f.space;
    let integrand = &fourier_kernel(space, 1) * &f.poly;
    let thetas: Vec<Generator> = (1..=space.n).map(|i| space.theta(i)).collect();
    let poly = integrand.berezin(&thetas).expect("theta generators are odd");
    MultivectorFunction {
        space: space.clone(),
        poly,
        density_power: f.density_power - 1,
    }
}

/// Inverse odd Fourier transform with the `(-1)^{n(n+1)/2}` prefactor;
/// raises the density power by one.
pub fn odd_fourier_inverse(g: &MultivectorFunction) -> FormFunction {
    let space = &g.space;
    let integrand = &fourier_kernel(space, -1) * &g.poly;
    let psis: Vec<Generator> = (1..=space.n).map(|i| space.psi(i)).collect();
    let poly = integrand.berezin(&psis).expect("psi generators are odd");
    let pref = crate::rational::sign((space.n * (space.n + 1) / 2) as u64);
    FormFunction {
        space: space.clone(),
        poly: poly.scale(&pref),
        density_power: g.density_power + 1,
    }
}

/// Odd Laplacian `Δ = ρ^{-1} ∂²/∂x^μ∂ψ_μ ρ` on the function's density
/// sector; degree +1, `Δ∘Δ = 0`.
pub fn odd_laplacian(g: &MultivectorFunction) -> MultivectorFunction {
    let space = &g.space;
    let mut out = GradedPoly::zero();
    for mu in 1..=space.n {
        let dpsi = g.poly.derive(&space.psi(mu));
        if dpsi.is_zero() {
            continue;
        }
        out = &out + &dpsi.derive(&space.x(mu));
        let k1 = g.density_power + 1;
        if k1 != 0 {
            out = &out + &(&space.dsigma(mu) * &dpsi).scale(&q(k1));
        }
    }
    MultivectorFunction {
        space: space.clone(),
        poly: out,
        density_power: g.density_power,
    }
}

fn homogeneous_parts(g: &MultivectorFunction) -> Vec<(Parity, MultivectorFunction)> {
    let (even, odd) = g.poly.parity_split();
    let mut out = Vec::new();
    if !even.is_zero() {
        out.push((
            Parity::Even,
            MultivectorFunction {
                space: g.space.clone(),
                poly: even,
                density_power: g.density_power,
            },
        ));
    }
    if !odd.is_zero() {
        out.push((
            Parity::Odd,
            MultivectorFunction {
                space: g.space.clone(),
                poly: odd,
                density_power: g.density_power,
            },
        ));
    }
    out
}

/// Odd Poisson (Schouten) bracket
/// `{f, g} = ∂f/∂x^μ ∂g/∂ψ_μ + (-1)^{|f|} ∂f/∂ψ_μ ∂g/∂x^μ`.
/// Inhomogeneous `f` is processed per parity part.
pub fn schouten(f: &MultivectorFunction, g: &MultivectorFunction) -> MultivectorFunction {
    debug_assert_eq!(f.space, g.space);
    let space = &f.space;
    let mut out = GradedPoly::zero();
    for (pf, part) in homogeneous_parts(f) {
        let fsgn = crate::rational::sign(pf.bit());
        for mu in 1..=space.n {
            let a = &dx(space, &part.poly, part.density_power, mu)
                * &g.poly.derive(&space.psi(mu));
            let b = &part.poly.derive(&space.psi(mu))
                * &dx(space, &g.poly, g.density_power, mu);
            out = &out + &(&a + &b.scale(&fsgn));
        }
    }
    MultivectorFunction {
        space: space.clone(),
        poly: out,
        density_power: f.density_power + g.density_power,
    }
}

/// The bracket generated by Δ:
/// `(-1)^{|f|} {f, g} = Δ(fg) - Δ(f)g - (-1)^{|f|} f Δ(g)`.
/// Identical to [`schouten`] for every σ and density sector.
pub fn bracket_from_delta(
    f: &MultivectorFunction,
    g: &MultivectorFunction,
) -> MultivectorFunction {
    debug_assert_eq!(f.space, g.space);
    let mut out = GradedPoly::zero();
    for (pf, part) in homogeneous_parts(f) {
        let fsgn = crate::rational::sign(pf.bit());
        let product = mv_mul(&part, g);
        let t1 = odd_laplacian(&product).poly;
        let t2 = &odd_laplacian(&part).poly * &g.poly;
        let t3 = (&part.poly * &odd_laplacian(g).poly).scale(&fsgn);
        let combo = &(&t1 - &t2) - &t3;
        out = &out + &combo.scale(&fsgn);
    }
    MultivectorFunction {
        space: f.space.clone(),
        poly: out,
        density_power: f.density_power + g.density_power,
    }
}

/// Star convolution
/// `(f * g)(x, ψ) = (-1)^{n(n+|f|)} ∫ d^nλ ρ f(x, λ) g(x, ψ-λ)`;
/// satisfies `F[fg] = F[f] * F[g]`.
pub fn star_convolution(
    f: &MultivectorFunction,
    g: &MultivectorFunction,
) -> Result<MultivectorFunction, BvError> {
    debug_assert_eq!(f.space, g.space);
    let space = &f.space;
    let mut shift = BTreeMap::new();
    let mut to_lambda = BTreeMap::new();
    for mu in 1..=space.n {
        to_lambda.insert(space.psi(mu), GradedPoly::var(&space.lambda(mu)));
        shift.insert(
            space.psi(mu),
            &GradedPoly::var(&space.psi(mu)) - &GradedPoly::var(&space.lambda(mu)),
        );
    }
    let lambdas: Vec<Generator> = (1..=space.n).map(|i| space.lambda(i)).collect();
    let mut out = GradedPoly::zero();
    for (pf, part) in homogeneous_parts(f) {
        let f_l = part.poly.substitute(&to_lambda).expect("parity preserved");
        let g_s = g.poly.substitute(&shift).expect("parity preserved");
        let integ = (&f_l * &g_s)
            .berezin(&lambdas)
            .expect("lambda generators are odd");
        let sgn = crate::rational::sign((space.n as u64) * (space.n as u64 + pf.bit()));
        out = &out + &integ.scale(&sgn);
    }
    Ok(MultivectorFunction {
        space: space.clone(),
        poly: out,
        density_power: f.density_power + g.density_power + 1,
    })
}

/// Checks `F[Df] = (-1)^n Δ F[f]` exactly.
pub fn d_delta_intertwine_check(f: &FormFunction) -> bool {
    let lhs = odd_fourier(&de_rham(f));
    let rhs = odd_laplacian(&odd_fourier(f));
    let sgn = crate::rational::sign(f.space.n as u64);
    lhs.poly == rhs.poly.scale(&sgn) && lhs.density_power == rhs.density_power
}

/// `Δ(f_1 ... f_k)` for Δ-closed homogeneous inputs, verified against the
/// bracket double sum
/// `Σ_{i<j} (-1)^{s_ij} (-1)^{|f_i|} {f_i, f_j} f_1 ... f̂_i ... f̂_j ... f_k`
/// with `s_ij = |f_i| Σ_{r<i} |f_r| + |f_j| Σ_{r<j} |f_r| + |f_i||f_j|`.
pub fn delta_product_expansion(
    fs: &[MultivectorFunction],
) -> Result<MultivectorFunction, BvError> {
    let mut parities = Vec::with_capacity(fs.len());
    for (i, f) in fs.iter().enumerate() {
        let Some(p) = f.poly.homogeneous_parity() else {
            return Err(BvError::DeltaNotClosed { index: i });
        };
        if !odd_laplacian(f).is_zero() {
            return Err(BvError::DeltaNotClosed { index: i });
        }
        parities.push(p.bit());
    }
    let space = fs
        .first()
        .map(|f| f.space.clone())
        .unwrap_or_else(|| BVSpace::flat(1));
    let mut product = MultivectorFunction {
        space: space.clone(),
        poly: GradedPoly::one(),
        density_power: 0,
    };
    for f in fs {
        product = mv_mul(&product, f);
    }
    let lhs = odd_laplacian(&product);
    let mut rhs = MultivectorFunction {
        space: space.clone(),
        poly: GradedPoly::zero(),
        density_power: lhs.density_power,
    };
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let before_i: u64 = parities[..i].iter().sum();
            let before_j: u64 = parities[..j].iter().sum();
            let s_ij = parities[i] * before_i + parities[j] * before_j + parities[i] * parities[j];
            let sgn = crate::rational::sign(s_ij + parities[i]);
            let mut term = schouten(&fs[i], &fs[j]);
            for (r, f) in fs.iter().enumerate() {
                if r != i && r != j {
                    term = mv_mul(&term, f);
                }
            }
            rhs.poly = &rhs.poly + &term.poly.scale(&sgn);
        }
    }
    if lhs.poly != rhs.poly {
        return Err(BvError::ExpansionMismatch);
    }
    Ok(lhs)
}

/// Ward identity `∫_{N*[-1]C} Δ(g · e^{-Q}) = 0` on a coordinate subspace
/// `C ⊆ {1..n}` with flat density. `Q` is a positive-definite quadratic form
/// in the `x_i, i ∈ C` (the coordinates integrated along `C`); the transverse
/// `x` and the `ψ_i, i ∈ C` restrict to zero, the conormal `ψ` are Berezin
/// integrated, and the `x_C` moments are evaluated by the Wick engine.
/// Returns the exact value, which the identity asserts to be zero.
pub fn gaussian_ward_check(
    space: &BVSpace,
    c: &BTreeSet<usize>,
    g: &MultivectorFunction,
    q_form: &GradedPoly,
) -> Result<Ratio, BvError> {
    if !space.sigma.is_zero() {
        return Err(BvError::WardRejected("requires σ = 0".into()));
    }
    if g.density_power != 0 || g.space != *space {
        return Err(BvError::SpaceMismatch);
    }
    let along: Vec<usize> = c.iter().copied().collect();
    if along.iter().any(|&i| i == 0 || i > space.n) {
        return Err(BvError::WardRejected("C outside 1..=n".into()));
    }
    // Q must be a pure quadratic in x; its support must damp every
    // coordinate integrated along C (transverse factors restrict away)
    let mut qvars: Vec<usize> = Vec::new();
    for gen in q_form.support() {
        match (1..=space.n).find(|&i| gen == space.x(i)) {
            Some(i) => qvars.push(i),
            None => {
                return Err(BvError::WardRejected(format!(
                    "Q contains non-x variable {}",
                    gen.name()
                )))
            }
        }
    }
    qvars.sort_unstable();
    if !q_form.is_zero()
        && (q_form.min_total_exponent() != Some(2) || q_form.max_total_exponent() != 2)
    {
        return Err(BvError::WardRejected("Q must be homogeneous quadratic".into()));
    }
    if let Some(&i) = along.iter().find(|i| !qvars.contains(i)) {
        return Err(BvError::WardRejected(format!(
            "Q does not damp the along-C coordinate x{i:02}"
        )));
    }
    // Λ_ij = ∂_i ∂_j Q, so Q = ½ x^T Λ x; definiteness on the support of Q
    let minor = |vars: &[usize]| -> linalg::Matrix {
        vars.iter()
            .map(|&i| {
                vars.iter()
                    .map(|&j| {
                        q_form
                            .derive(&space.x(i))
                            .derive(&space.x(j))
                            .constant_term()
                    })
                    .collect()
            })
            .collect()
    };
    if !qvars.is_empty() && !linalg::is_positive_definite(&minor(&qvars)) {
        return Err(BvError::WardRejected(
            "Q is not positive definite (leading principal minors)".into(),
        ));
    }
    let p = along.len();
    let lambda = minor(&along);

    // A = Δ₀ g - Σ_μ (∂_{ψ_μ} g)(∂_{x^μ} Q), so Δ(g e^{-Q}) = A e^{-Q}
    let mut a_poly = odd_laplacian(g).poly;
    for mu in 1..=space.n {
        let dpsi = g.poly.derive(&space.psi(mu));
        if dpsi.is_zero() {
            continue;
        }
        a_poly = &a_poly - &(&dpsi * &q_form.derive(&space.x(mu)));
    }

    // pull back to the conormal: x transverse -> 0, ψ along C -> 0
    let restricted = a_poly.kill_generators(|gen| {
        (1..=space.n).any(|i| {
            (!c.contains(&i) && *gen == space.x(i)) || (c.contains(&i) && *gen == space.psi(i))
        })
    });

    // Berezin over the conormal ψ directions, lowest index innermost
    let conormal: Vec<Generator> = (1..=space.n)
        .filter(|i| !c.contains(i))
        .map(|i| space.psi(i))
        .collect();
    let after_berezin = restricted.berezin(&conormal).expect("psi odd");

    // Gaussian moments of the surviving x_C polynomial
    let kernel = if p > 0 {
        let inv = linalg::inverse(&lambda)
            .ok_or_else(|| BvError::WardRejected("degenerate Q".into()))?;
        Some(QuadraticKernel::symmetric_unit_alpha(inv))
    } else {
        None
    };
    let mut total = Ratio::zero();
    for (m, coeff) in after_berezin.terms() {
        let mut indices = Vec::new();
        for (gen, e) in m.factors() {
            let pos = along
                .iter()
                .position(|&i| *gen == space.x(i))
                .expect("restricted to x_C");
            for _ in 0..*e {
                indices.push(pos + 1);
            }
        }
        let moment = if indices.is_empty() {
            Ratio::from_integer(1.into())
        } else {
            let kernel = kernel.as_ref().expect("moments need Q");
            wick_engine::gaussian_moment(&indices, kernel, usize::MAX)?.constant_term()
        };
        total += coeff.clone() * moment;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qq;

    fn space1() -> BVSpace {
        BVSpace::flat(1)
    }

    fn space2() -> BVSpace {
        BVSpace::flat(2)
    }

    #[test]
    fn de_rham_spec_examples() {
        let s = space1();
        let x = s.form(GradedPoly::var(&s.x(1))).unwrap();
        assert_eq!(de_rham(&x).poly, GradedPoly::var(&s.theta(1)));
        let xth = s
            .form(&GradedPoly::var(&s.x(1)) * &GradedPoly::var(&s.theta(1)))
            .unwrap();
        assert!(de_rham(&xth).poly.is_zero());

        let s2 = space2();
        // D(x1² θ1) = 0, D(x1 x2 θ2) = x2 θ1 θ2
        let f = s2
            .form(&GradedPoly::monomial(q(1), &[(s2.x(1), 2)]) * &GradedPoly::var(&s2.theta(1)))
            .unwrap();
        assert!(de_rham(&f).poly.is_zero());
        let g = s2
            .form(GradedPoly::monomial(
                q(1),
                &[(s2.x(1), 1), (s2.x(2), 1), (s2.theta(2), 1)],
            ))
            .unwrap();
        let expect = GradedPoly::monomial(
            q(1),
            &[(s2.x(2), 1), (s2.theta(1), 1), (s2.theta(2), 1)],
        );
        assert_eq!(de_rham(&g).poly, expect);
        // D² = 0 on a denser example
        let h = s2
            .form(GradedPoly::monomial(q(3), &[(s2.x(1), 2), (s2.x(2), 1)]))
            .unwrap();
        assert!(de_rham(&de_rham(&h)).poly.is_zero());
    }

    #[test]
    fn fourier_spec_examples_n1() {
        let s = space1();
        // F[1] = -ψ (left-derivative Berezin convention), F[θ] = 1
        let one = s.form(GradedPoly::one()).unwrap();
        let f1 = odd_fourier(&one);
        assert_eq!(f1.poly, -&GradedPoly::var(&s.psi(1)));
        assert_eq!(f1.density_power, -1);
        let th = s.form(GradedPoly::var(&s.theta(1))).unwrap();
        assert_eq!(odd_fourier(&th).poly, GradedPoly::one());

        // round trip on a + bθ
        let f = s
            .form(
                &GradedPoly::constant(qq(3, 2))
                    + &GradedPoly::var(&s.theta(1)).scale(&q(-5)),
            )
            .unwrap();
        let back = odd_fourier_inverse(&odd_fourier(&f));
        assert_eq!(back, f);
    }

    #[test]
    fn fourier_top_form_to_function_n2() {
        let s = space2();
        let f = s
            .form(GradedPoly::monomial(
                q(1),
                &[(s.x(1), 1), (s.theta(1), 1), (s.theta(2), 1)],
            ))
            .unwrap();
        let got = odd_fourier(&f);
        assert_eq!(got.poly, GradedPoly::var(&s.x(1)));
    }

    #[test]
    fn fourier_round_trip_with_density() {
        // σ = x: the e^{±σ} powers cancel in the round trip
        let s = BVSpace::with_sigma(1, GradedPoly::var(&Generator::new("x01", 0))).unwrap();
        let f = s
            .form(
                &GradedPoly::monomial(q(2), &[(s.x(1), 2)])
                    + &GradedPoly::monomial(q(7), &[(s.x(1), 1), (s.theta(1), 1)]),
            )
            .unwrap();
        let round = odd_fourier_inverse(&odd_fourier(&f));
        assert_eq!(round, f);
        let g = s.multivector(GradedPoly::var(&s.psi(1))).unwrap();
        let round = odd_fourier(&odd_fourier_inverse(&g));
        assert_eq!(round, g);
    }

    #[test]
    fn laplacian_spec_examples() {
        let s = space1();
        let g = s
            .multivector(&GradedPoly::var(&s.x(1)) * &GradedPoly::var(&s.psi(1)))
            .unwrap();
        assert_eq!(odd_laplacian(&g).poly, GradedPoly::one());
        let f = s
            .multivector(GradedPoly::monomial(q(5), &[(s.x(1), 3)]))
            .unwrap();
        assert!(odd_laplacian(&f).poly.is_zero());

        // σ = x1: Δψ1 = 1
        let sd = BVSpace::with_sigma(1, GradedPoly::var(&Generator::new("x01", 0))).unwrap();
        let psi = sd.multivector(GradedPoly::var(&sd.psi(1))).unwrap();
        assert_eq!(odd_laplacian(&psi).poly, GradedPoly::one());
    }

    #[test]
    fn schouten_spec_examples() {
        let s = space1();
        let x = s.multivector(GradedPoly::var(&s.x(1))).unwrap();
        let psi = s.multivector(GradedPoly::var(&s.psi(1))).unwrap();
        assert_eq!(schouten(&x, &psi).poly, GradedPoly::one());
        let s2 = space2();
        let p1 = s2.multivector(GradedPoly::var(&s2.psi(1))).unwrap();
        let p2 = s2.multivector(GradedPoly::var(&s2.psi(2))).unwrap();
        assert!(schouten(&p1, &p2).poly.is_zero());

        // {x1ψ2, x2ψ1} agrees with the Δ-generated bracket
        let a = s2
            .multivector(&GradedPoly::var(&s2.x(1)) * &GradedPoly::var(&s2.psi(2)))
            .unwrap();
        let b = s2
            .multivector(&GradedPoly::var(&s2.x(2)) * &GradedPoly::var(&s2.psi(1)))
            .unwrap();
        assert_eq!(schouten(&a, &b), bracket_from_delta(&a, &b));
        assert!(!schouten(&a, &b).poly.is_zero());
    }

    #[test]
    fn delta_product_expansion_small() {
        let s = space2();
        // divergence-free linear vector fields A x ψ with tr A = 0
        let f1 = s
            .multivector(&GradedPoly::var(&s.x(1)) * &GradedPoly::var(&s.psi(2)))
            .unwrap();
        let f2 = s
            .multivector(&GradedPoly::var(&s.x(2)) * &GradedPoly::var(&s.psi(1)))
            .unwrap();
        let f3 = s
            .multivector(
                &(&GradedPoly::var(&s.x(1)) * &GradedPoly::var(&s.psi(1)))
                    - &(&GradedPoly::var(&s.x(2)) * &GradedPoly::var(&s.psi(2))),
            )
            .unwrap();
        let out = delta_product_expansion(&[f1, f2, f3]);
        assert!(out.is_ok());

        // rejection reports the non-closed index
        let bad = s
            .multivector(&GradedPoly::var(&s.x(1)) * &GradedPoly::var(&s.psi(1)))
            .unwrap();
        let good = s.multivector(GradedPoly::var(&s.psi(1))).unwrap();
        assert_eq!(
            delta_product_expansion(&[good, bad]).unwrap_err(),
            BvError::DeltaNotClosed { index: 1 }
        );
    }

    #[test]
    fn ward_check_spec_examples() {
        let s = space1();
        // g = xψ, C = {} (point), Q = α x²/2 with α = 3
        let g = s
            .multivector(&GradedPoly::var(&s.x(1)) * &GradedPoly::var(&s.psi(1)))
            .unwrap();
        let c = BTreeSet::new();
        let q_form = GradedPoly::monomial(qq(3, 2), &[(s.x(1), 2)]);
        let v = gaussian_ward_check(&s, &c, &g, &q_form).unwrap();
        assert_eq!(v, q(0));

        // g = 1
        let one = s.multivector(GradedPoly::one()).unwrap();
        let c_full: BTreeSet<usize> = [1].into_iter().collect();
        let v = gaussian_ward_check(&s, &c_full, &one, &q_form).unwrap();
        assert_eq!(v, q(0));

        // g = x²ψ1 on R², C = axis 1
        let s2 = space2();
        let g2 = s2
            .multivector(GradedPoly::monomial(
                q(1),
                &[(s2.x(1), 2), (s2.psi(1), 1)],
            ))
            .unwrap();
        let c1: BTreeSet<usize> = [1].into_iter().collect();
        let q1 = GradedPoly::monomial(qq(1, 2), &[(s2.x(1), 2)]);
        let v = gaussian_ward_check(&s2, &c1, &g2, &q1).unwrap();
        assert_eq!(v, q(0));

        // non positive definite rejected
        let bad_q = GradedPoly::monomial(qq(-1, 2), &[(s2.x(1), 2)]);
        assert!(matches!(
            gaussian_ward_check(&s2, &c1, &g2, &bad_q),
            Err(BvError::WardRejected(_))
        ));
    }
}
