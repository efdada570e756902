//! Greene's Gaussian hypergeometric series over F_q and the ₂F₁
//! transformation laws used to pass between the two trace formulas.
//!
//! For characters A₀,…,A_n and B₁,…,B_n of F_q the series is
//!
//!   ₙ₊₁F_n(A₀,…,A_n; B₁,…,B_n | x)
//!     = q/(q−1) · Σ_χ (A₀χ | χ)(A₁χ | B₁χ)⋯(A_nχ | B_nχ) χ(x),
//!
//! the sum over all q − 1 multiplicative characters χ. Each binomial factor
//! goes through the Gauss-sum shortcut; within one factor the exponent
//! difference (A_jχ)(B_jχ)⁻¹ = A_jB_j⁻¹ does not depend on χ, so a factor
//! either uses the table for all χ or falls back to direct Jacobi sums for
//! all χ. At x = 0 every term carries χ(0) = 0 and the series vanishes
//! exactly, with no numeric summation at all.

use num_complex::Complex64;

use crate::characters::MultCharacter;
use crate::charsums::{binom, binom_from_gauss, GaussTable};
use crate::field::{assert_same_ctx, FieldElement};
use crate::{Error, Result};

/// Parameters of one series evaluation: exponents of A₀…A_n and B₁…B_n
/// (any integers, interpreted mod q − 1) and the argument x.
#[derive(Debug, Clone)]
pub struct HypergeoParams<'a> {
    numerator_exponents: Vec<i64>,
    denominator_exponents: Vec<i64>,
    argument: FieldElement<'a>,
}

impl<'a> HypergeoParams<'a> {
    /// Exponent lists must have lengths n + 1 and n.
    pub fn new(
        numerator_exponents: Vec<i64>,
        denominator_exponents: Vec<i64>,
        argument: FieldElement<'a>,
    ) -> HypergeoParams<'a> {
        assert_eq!(
            numerator_exponents.len(),
            denominator_exponents.len() + 1,
            "a ₙ₊₁Fₙ series takes n + 1 numerator and n denominator characters"
        );
        HypergeoParams { numerator_exponents, denominator_exponents, argument }
    }

    /// The ₂F₁(A, B; C | x) special case.
    pub fn two_f_one(a: i64, b: i64, c: i64, argument: FieldElement<'a>) -> HypergeoParams<'a> {
        HypergeoParams::new(vec![a, b], vec![c], argument)
    }

    pub fn numerator_exponents(&self) -> &[i64] {
        &self.numerator_exponents
    }

    pub fn denominator_exponents(&self) -> &[i64] {
        &self.denominator_exponents
    }

    pub fn argument(&self) -> FieldElement<'a> {
        self.argument
    }
}

/// Evaluates the series with binomials from the Gauss-sum table (direct
/// Jacobi fallback only inside factors with A_j = B_j).
pub fn eval_series(table: &GaussTable<'_>, params: &HypergeoParams<'_>) -> Complex64 {
    let ctx = table.context();
    assert_same_ctx(ctx, params.argument.context());
    let x = params.argument;
    if x.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let n1 = ctx.q() - 1;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n1 as i64 {
        let chi = MultCharacter::new(ctx, i);
        let a0 = MultCharacter::new(ctx, params.numerator_exponents[0] + i);
        let mut term = binom_from_gauss(a0, chi, table);
        for (&aj, &bj) in params.numerator_exponents[1..]
            .iter()
            .zip(&params.denominator_exponents)
        {
            let upper = MultCharacter::new(ctx, aj + i);
            let lower = MultCharacter::new(ctx, bj + i);
            term *= binom_from_gauss(upper, lower, table);
        }
        total += term * chi.eval(x);
    }
    total * (ctx.q() as f64 / n1 as f64)
}

/// Evaluates the series from the binomial definition alone — every factor a
/// direct O(q) Jacobi sum, no Gauss table anywhere. The independent oracle
/// for [`eval_series`], at O(q²) per evaluation.
pub fn eval_series_direct(params: &HypergeoParams<'_>) -> Complex64 {
    let ctx = params.argument.context();
    let x = params.argument;
    if x.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let n1 = ctx.q() - 1;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n1 as i64 {
        let chi = MultCharacter::new(ctx, i);
        let a0 = MultCharacter::new(ctx, params.numerator_exponents[0] + i);
        let mut term = binom(a0, chi);
        for (&aj, &bj) in params.numerator_exponents[1..]
            .iter()
            .zip(&params.denominator_exponents)
        {
            term *= binom(
                MultCharacter::new(ctx, aj + i),
                MultCharacter::new(ctx, bj + i),
            );
        }
        total += term * chi.eval(x);
    }
    total * (ctx.q() as f64 / n1 as f64)
}

/// Hand-specialized ₂F₁(A, B; C | x) = q/(q−1) Σ_χ (Aχ | χ)(Bχ | Cχ) χ(x).
pub fn eval_2f1(table: &GaussTable<'_>, a: i64, b: i64, c: i64, x: FieldElement<'_>) -> Complex64 {
    let ctx = table.context();
    assert_same_ctx(ctx, x.context());
    if x.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let n1 = ctx.q() - 1;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n1 as i64 {
        let chi = MultCharacter::new(ctx, i);
        total += binom_from_gauss(MultCharacter::new(ctx, a + i), chi, table)
            * binom_from_gauss(
                MultCharacter::new(ctx, b + i),
                MultCharacter::new(ctx, c + i),
                table,
            )
            * chi.eval(x);
    }
    total * (ctx.q() as f64 / n1 as f64)
}

/// Both sides of a ₂F₁ transformation law, with their distance.
#[derive(Debug, Clone, Copy)]
pub struct TransformCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub deviation: f64,
}

impl TransformCheck {
    fn new(lhs: Complex64, rhs: Complex64) -> TransformCheck {
        TransformCheck { lhs, rhs, deviation: (lhs - rhs).norm() }
    }
}

/// The argument reflection x ↦ 1 − x:
/// ₂F₁(A, B; C | x) = A(−1) ₂F₁(A, B; ABC̄ | 1 − x), valid for x ∉ {0, 1}.
pub fn transform_1_minus_x(
    table: &GaussTable<'_>,
    a: i64,
    b: i64,
    c: i64,
    x: FieldElement<'_>,
) -> Result<TransformCheck> {
    let ctx = table.context();
    assert_same_ctx(ctx, x.context());
    if x.is_zero() || x == ctx.one() {
        return Err(Error::BadArgument { x: x.index() });
    }
    let lhs = eval_2f1(table, a, b, c, x);
    let sign = MultCharacter::new(ctx, a).at_minus_one();
    let rhs = sign * eval_2f1(table, a, b, a + b - c, ctx.one() - x);
    Ok(TransformCheck::new(lhs, rhs))
}

/// The argument inversion x ↦ 1/x:
/// ₂F₁(A, B; C | x) = ABC(−1) Ā(x) ₂F₁(A, AC̄; AB̄ | 1/x), valid for x ≠ 0.
pub fn transform_1_over_x(
    table: &GaussTable<'_>,
    a: i64,
    b: i64,
    c: i64,
    x: FieldElement<'_>,
) -> Result<TransformCheck> {
    let ctx = table.context();
    assert_same_ctx(ctx, x.context());
    if x.is_zero() {
        return Err(Error::BadArgument { x: 0 });
    }
    let lhs = eval_2f1(table, a, b, c, x);
    let sign = MultCharacter::new(ctx, a + b + c).at_minus_one();
    let a_bar_at_x = MultCharacter::new(ctx, a).conjugate().eval(x);
    let inv_x = x.inv().expect("x ≠ 0 was checked");
    let rhs = sign * a_bar_at_x * eval_2f1(table, a, a - c, a - b, inv_x);
    Ok(TransformCheck::new(lhs, rhs))
}
