//! Frobenius traces of elliptic curves over small finite fields F_q,
//! q = p^e ≡ 1 (mod 12), computed two independent ways and cross-checked:
//! an exhaustive point-count oracle, and closed character-sum formulas that
//! express a(E) through Greene's finite-field hypergeometric series.
//!
//! The layers build on each other and each ships with numeric checkers so it
//! can be verified against brute force:
//!
//! * [`field`] — F_p[x]/(m(x)) arithmetic with eager dlog and trace tables;
//! * [`characters`] — multiplicative characters T^m and the additive
//!   character θ(α) = ζ_p^tr(α);
//! * [`charsums`] — Gauss and Jacobi sums, normalized character binomials,
//!   Davenport–Hasse product relations;
//! * [`hypergeo`] — the hypergeometric series ₙ₊₁Fₙ over F_q and its ₂F₁
//!   transformation laws;
//! * [`elliptic`] — curves y² = x³ + ax + b, the counting oracle, and the
//!   two trace formulas;
//! * [`cli`] — `trace`, `sweep`, and `identities` subcommands with
//!   machine-readable output.

pub mod characters;
pub mod charsums;
pub mod cli;
pub mod elliptic;
pub mod field;
pub mod hypergeo;

mod error;

pub use error::{Error, Result};

/// Absolute tolerance 1e−6·q shared by every character-sum identity check
/// and by trace rounding. Sums over F_q accumulate O(q) unit-magnitude
/// terms, so the error budget scales with q.
pub fn sum_tolerance(q: u64) -> f64 {
    1e-6 * q as f64
}
