//! Exact-arithmetic toolkit for finite-dimensional Batalin–Vilkovisky calculus,
//! Wick-theorem perturbation theory, the graph complex, the correlator map from
//! Chevalley–Eilenberg chains of Hamiltonian vector fields to graph chains, and
//! graph cochains built from finite differential graded Frobenius algebras.
//!
//! Everything is computed over arbitrary-precision rationals; no operation in
//! this crate uses floating point. The crate is `no_std` (with `alloc`); IO,
//! serialization formats and the command line front end live in `bvgc-cli`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bv_calculus;
pub mod frobenius_cocycle;
pub mod graded_poly;
pub mod graph_complex;
pub mod kontsevich_map;
pub mod linalg;
pub mod rational;
pub mod rng;
pub mod sampling;
pub mod wick_engine;

pub use graded_poly::{Generator, GeneratorSet, GradedPoly, Monomial, Parity};
pub use rational::Ratio;
