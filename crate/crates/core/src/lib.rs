//! Arithmetic of integral binary quadratic forms and the discrete fractional
//! integral sums built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact integer helpers (square roots, factorization, modular
//!   square roots, compensated summation).
//! - [`forms`]: forms, unimodular transforms, reduction and proper equivalence.
//! - [`pell`]: the equation `t^2 - D u^2 = 4` and automorph groups.
//! - [`representations`]: `Gamma_t(s)`, the congruence `u^2 = D (mod 4|k|)`,
//!   congruence classes of representations and enumeration with oracles.
//! - [`operator`]: weighted representation sums, the operator itself, window
//!   checks, probes and divergence certificates.
//! - [`cli`]: the JSON-lines command line front end.
//!
//! All integers that can grow are [`num_bigint::BigInt`]; hot loops use
//! checked `i128` arithmetic and fall back to big integers on overflow.

pub mod arith;
pub mod cli;
pub mod error;
pub mod forms;
pub mod operator;
pub mod pell;
pub mod representations;

pub use error::{Error, Result};
pub use forms::{FormClass, QuadForm, UnimodularTransform};
pub use pell::{AutomorphGroup, PellFundamental};
