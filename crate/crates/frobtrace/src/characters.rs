//! Characters of F_q: the multiplicative family T^m and the canonical
//! additive character θ.
//!
//! With g the context's generator and ω = e^(2πi/(q−1)), the character
//! T^m sends g^k ↦ ω^(mk); every multiplicative character of F_q* arises
//! this way, and m is only meaningful mod q − 1. Values at 0 follow the
//! convention χ(0) = 0 for **every** χ, including the trivial character ε —
//! the choice that makes the binomial-coefficient machinery in
//! [`crate::charsums`] come out clean. The additive character is
//! θ(α) = ζ_p^tr(α) with ζ_p = e^(2πi/p) and tr the absolute trace.

use num_complex::Complex64;

use crate::charsums::GaussTable;
use crate::field::{assert_same_ctx, FieldContext, FieldElement};
use crate::{Error, Result};

/// e^(2πik/n), with k reduced into [0, n) first so the angle stays small
/// and the value is bit-for-bit reproducible across equivalent exponents.
pub fn unit_root(k: i64, n: u64) -> Complex64 {
    let kr = k.rem_euclid(n as i64) as f64;
    Complex64::cis(std::f64::consts::TAU * kr / n as f64)
}

/// The multiplicative character T^m on F_q*, extended by T^m(0) = 0.
#[derive(Clone, Copy)]
pub struct MultCharacter<'a> {
    exponent: u64,
    ctx: &'a FieldContext,
}

impl<'a> MultCharacter<'a> {
    /// T^m; the exponent may be any integer and is reduced mod q − 1.
    pub fn new(ctx: &'a FieldContext, m: i64) -> MultCharacter<'a> {
        let n1 = (ctx.q() - 1) as i64;
        MultCharacter { exponent: m.rem_euclid(n1) as u64, ctx }
    }

    /// The trivial character ε = T^0 (still 0 at 0).
    pub fn trivial(ctx: &'a FieldContext) -> MultCharacter<'a> {
        MultCharacter { exponent: 0, ctx }
    }

    /// The quadratic character φ = T^((q−1)/2).
    pub fn quadratic(ctx: &'a FieldContext) -> MultCharacter<'a> {
        MultCharacter { exponent: (ctx.q() - 1) / 2, ctx }
    }

    /// The reduced exponent m ∈ [0, q−1).
    pub fn exponent(self) -> u64 {
        self.exponent
    }

    pub fn context(self) -> &'a FieldContext {
        self.ctx
    }

    pub fn is_trivial(self) -> bool {
        self.exponent == 0
    }

    /// The conjugate character T^(−m) = 1/T^m.
    pub fn conjugate(self) -> MultCharacter<'a> {
        let n1 = self.ctx.q() - 1;
        MultCharacter { exponent: (n1 - self.exponent) % n1, ctx: self.ctx }
    }

    pub fn eval(self, x: FieldElement<'a>) -> Complex64 {
        assert_same_ctx(self.ctx, x.context());
        match x.dlog() {
            Ok(k) => {
                let n1 = self.ctx.q() - 1;
                unit_root((self.exponent * k % n1) as i64, n1)
            }
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// T^m(−1) = (−1)^m, since −1 = g^((q−1)/2).
    pub fn at_minus_one(self) -> f64 {
        if self.exponent.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

impl<'a> std::ops::Mul for MultCharacter<'a> {
    type Output = MultCharacter<'a>;
    fn mul(self, rhs: MultCharacter<'a>) -> MultCharacter<'a> {
        assert_same_ctx(self.ctx, rhs.ctx);
        let n1 = self.ctx.q() - 1;
        MultCharacter { exponent: (self.exponent + rhs.exponent) % n1, ctx: self.ctx }
    }
}

impl PartialEq for MultCharacter<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.exponent == other.exponent
    }
}

impl Eq for MultCharacter<'_> {}

impl std::fmt::Debug for MultCharacter<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T^{} on F_{}", self.exponent, self.ctx.q())
    }
}

/// The canonical additive character θ(α) = ζ_p^tr(α).
#[derive(Clone, Copy)]
pub struct AdditiveChar<'a> {
    ctx: &'a FieldContext,
}

impl<'a> AdditiveChar<'a> {
    pub fn new(ctx: &'a FieldContext) -> AdditiveChar<'a> {
        AdditiveChar { ctx }
    }

    pub fn eval(self, x: FieldElement<'a>) -> Complex64 {
        assert_same_ctx(self.ctx, x.context());
        unit_root(x.trace_to_base() as i64, self.ctx.p())
    }
}

/// (1/(q−1)) Σ_m T^m(x) over all q − 1 characters: 1 at x = 1, else 0
/// (including x = 0, where every summand already vanishes).
pub fn indicator_sum(x: FieldElement<'_>) -> Complex64 {
    let ctx = x.context();
    let n1 = ctx.q() - 1;
    let total: Complex64 = (0..n1)
        .map(|m| MultCharacter::new(ctx, m as i64).eval(x))
        .sum();
    total / n1 as f64
}

/// Both sides of the Fourier expansion of θ against the T^m.
#[derive(Debug, Clone, Copy)]
pub struct ThetaExpansion {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl ThetaExpansion {
    pub fn abs_error(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// Checks θ(α) = (1/(q−1)) Σ_m G_m T^(−m)(α) for α ≠ 0, where G_m is the
/// Gauss sum of T^m. The identity is exactly the inverse Fourier transform
/// of the Gauss-sum table over the character group, so it fails only if the
/// table and the character conventions have drifted apart.
pub fn theta_expansion_check(
    table: &GaussTable<'_>,
    alpha: FieldElement<'_>,
) -> Result<ThetaExpansion> {
    let ctx = table.context();
    assert_same_ctx(ctx, alpha.context());
    if alpha.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n1 = ctx.q() - 1;
    let k = alpha.dlog().expect("nonzero element has a dlog");
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..n1 {
        // T^(−m)(g^k) = ω^(−mk).
        acc += table.gauss(m as i64) * unit_root(-((m * k % n1) as i64), n1);
    }
    let lhs = AdditiveChar::new(ctx).eval(alpha);
    Ok(ThetaExpansion { lhs, rhs: acc / n1 as f64 })
}
