//! Gauss sums, Jacobi sums, and Greene's normalized binomial coefficients,
//! plus the Davenport–Hasse product relations that tie them together.
//!
//! For χ = T^m the Gauss sum is G_m = Σ_x T^m(x)θ(x); the table satisfies
//! G_0 = −1 and |G_m|² = q for m ≢ 0 (mod q−1). Jacobi sums are
//! J(A, B) = Σ_x A(x)B(1−x), and the binomial coefficient is the rescaling
//!
//!   (A | B) = B(−1)/q · J(A, B̄),
//!
//! which also factors through Gauss sums as G_A·G_B̄·B(−1)/(G_{AB̄}·q)
//! whenever A ≠ B. Both routes are implemented and tested against each
//! other; series evaluation uses the Gauss-sum route and falls back to the
//! direct Jacobi sum exactly on the diagonal A = B where the factorization
//! breaks down.

use num_complex::Complex64;

use crate::characters::{unit_root, AdditiveChar, MultCharacter};
use crate::field::{assert_same_ctx, FieldContext};
use crate::{Error, Result};

/// Largest q for which [`GaussTable::build_auto`] stays with the O(q²)
/// schoolbook fill; larger fields switch to the FFT.
pub const NAIVE_CUTOFF: u64 = 4096;

/// How a [`GaussTable`] was filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussStrategy {
    /// Schoolbook double loop over dlogs, O(q²).
    Naive,
    /// One inverse FFT of length q − 1 over θ(g^k), O(q log q).
    Dft,
}

/// All q − 1 Gauss sums of a field, indexed by character exponent.
pub struct GaussTable<'a> {
    ctx: &'a FieldContext,
    values: Vec<Complex64>,
    strategy: GaussStrategy,
}

impl<'a> GaussTable<'a> {
    /// Fills the table by the schoolbook sum G_m = Σ_k θ(g^k) ω^(mk).
    pub fn build_naive(ctx: &'a FieldContext) -> GaussTable<'a> {
        let n1 = ctx.q() - 1;
        let theta_g = theta_on_generator_powers(ctx);
        let omega: Vec<Complex64> = (0..n1).map(|j| unit_root(j as i64, n1)).collect();
        let values = (0..n1)
            .map(|m| {
                (0..n1)
                    .map(|k| theta_g[k as usize] * omega[(m * k % n1) as usize])
                    .sum()
            })
            .collect();
        GaussTable { ctx, values, strategy: GaussStrategy::Naive }
    }

    /// Fills the table as the unnormalized inverse DFT of k ↦ θ(g^k):
    /// G_m = Σ_k θ(g^k) e^(+2πimk/(q−1)).
    pub fn build_dft(ctx: &'a FieldContext) -> GaussTable<'a> {
        let n1 = ctx.q() - 1;
        let mut buffer = theta_on_generator_powers(ctx);
        let mut planner = rustfft::FftPlanner::new();
        planner.plan_fft_inverse(n1 as usize).process(&mut buffer);
        GaussTable { ctx, values: buffer, strategy: GaussStrategy::Dft }
    }

    /// Naive fill for q ≤ [`NAIVE_CUTOFF`], FFT beyond.
    pub fn build_auto(ctx: &'a FieldContext) -> GaussTable<'a> {
        if ctx.q() <= NAIVE_CUTOFF {
            Self::build_naive(ctx)
        } else {
            Self::build_dft(ctx)
        }
    }

    pub fn context(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn strategy(&self) -> GaussStrategy {
        self.strategy
    }

    /// G_m, with m reduced mod q − 1.
    pub fn gauss(&self, m: i64) -> Complex64 {
        let n1 = (self.ctx.q() - 1) as i64;
        self.values[m.rem_euclid(n1) as usize]
    }

    /// The Gauss sum of a character from the same context.
    pub fn gauss_for(&self, chi: MultCharacter<'a>) -> Complex64 {
        assert_same_ctx(self.ctx, chi.context());
        self.values[chi.exponent() as usize]
    }
}

fn theta_on_generator_powers(ctx: &FieldContext) -> Vec<Complex64> {
    let theta = AdditiveChar::new(ctx);
    (0..ctx.q() - 1).map(|k| theta.eval(ctx.generator_power(k))).collect()
}

/// Direct evaluation of one Gauss sum through the character objects; the
/// independent oracle the table builders are tested against.
pub fn gauss_sum(chi: MultCharacter<'_>) -> Complex64 {
    let ctx = chi.context();
    let theta = AdditiveChar::new(ctx);
    ctx.elements().map(|x| chi.eval(x) * theta.eval(x)).sum()
}

/// J(A, B) = Σ_x A(x)B(1−x); the x = 0 and x = 1 terms vanish under the
/// χ(0) = 0 convention.
pub fn jacobi_sum<'a>(a: MultCharacter<'a>, b: MultCharacter<'a>) -> Complex64 {
    let ctx = a.context();
    assert_same_ctx(ctx, b.context());
    let one = ctx.one();
    ctx.elements().map(|x| a.eval(x) * b.eval(one - x)).sum()
}

/// Greene's binomial coefficient (A | B) = B(−1)/q · J(A, B̄), by the direct
/// O(q) Jacobi sum.
pub fn binom<'a>(a: MultCharacter<'a>, b: MultCharacter<'a>) -> Complex64 {
    let q = a.context().q() as f64;
    jacobi_sum(a, b.conjugate()) * (b.at_minus_one() / q)
}

/// (A | B) through the Gauss-sum factorization
/// G_A·G_B̄·B(−1)/(G_{AB̄}·q), falling back to the direct Jacobi sum on the
/// diagonal A = B where G_{AB̄} = G_0 no longer cancels the J ↔ G defect.
pub fn binom_from_gauss<'a>(
    a: MultCharacter<'a>,
    b: MultCharacter<'a>,
    table: &GaussTable<'a>,
) -> Complex64 {
    let ctx = table.context();
    assert_same_ctx(ctx, a.context());
    assert_same_ctx(ctx, b.context());
    if a == b {
        return binom(a, b);
    }
    let q = ctx.q() as f64;
    let m = a.exponent() as i64;
    let n = b.exponent() as i64;
    table.gauss(m) * table.gauss(-n) * (b.at_minus_one() / q) / table.gauss(m - n)
}

/// Two sides of an identity between complex sums.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl IdentityCheck {
    pub fn abs_error(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    /// The larger of the two magnitudes; products of many Gauss sums grow
    /// like q^(m/2), so long products are judged on relative error.
    pub fn magnitude(&self) -> f64 {
        self.lhs.norm().max(self.rhs.norm())
    }
}

/// Davenport–Hasse product relation for ψ = T^k and the characters of order
/// dividing m: Π_{χ^m = ε} G(χψ) = −G(ψ^m) ψ(m^(−m)) Π_{χ^m = ε} G(χ).
/// Requires m | q − 1.
pub fn davenport_hasse_check(
    table: &GaussTable<'_>,
    m_div: u64,
    k: i64,
) -> Result<IdentityCheck> {
    let ctx = table.context();
    let n1 = ctx.q() - 1;
    if m_div == 0 || !n1.is_multiple_of(m_div) {
        return Err(Error::BadModulus { q: ctx.q(), modulus: m_div });
    }
    let step = (n1 / m_div) as i64;
    let lhs: Complex64 = (0..m_div as i64).map(|j| table.gauss(k + j * step)).product();
    let gauss_product: Complex64 = (0..m_div as i64).map(|j| table.gauss(j * step)).product();
    let m_elt = ctx.from_int(m_div as i64);
    let m_to_minus_m = m_elt.pow(m_div).inv().expect("m is invertible when m | q−1");
    let psi_value = MultCharacter::new(ctx, k).eval(m_to_minus_m);
    let rhs = -table.gauss(k * m_div as i64) * psi_value * gauss_product;
    Ok(IdentityCheck { lhs, rhs })
}

/// The m = 2 specialization: G_{−k} G_{−(q−1)/2−k} = G_{−2k} T^k(4) G_{(q−1)/2}.
pub fn davenport_hasse_quadratic(table: &GaussTable<'_>, k: i64) -> IdentityCheck {
    let ctx = table.context();
    let half = ((ctx.q() - 1) / 2) as i64;
    let four = MultCharacter::new(ctx, k).eval(ctx.from_int(4));
    IdentityCheck {
        lhs: table.gauss(-k) * table.gauss(-half - k),
        rhs: table.gauss(-2 * k) * four * table.gauss(half),
    }
}

/// The m = 3 specialization: G_k G_{k+(q−1)/3} G_{k+2(q−1)/3} = q T^(−k)(27) G_{3k}.
pub fn davenport_hasse_cubic(table: &GaussTable<'_>, k: i64) -> IdentityCheck {
    let ctx = table.context();
    let third = ((ctx.q() - 1) / 3) as i64;
    let twenty_seven = MultCharacter::new(ctx, -k).eval(ctx.from_int(27));
    IdentityCheck {
        lhs: table.gauss(k) * table.gauss(k + third) * table.gauss(k + 2 * third),
        rhs: ctx.q() as f64 * twenty_seven * table.gauss(3 * k),
    }
}

/// Structural facts about one field's Gauss-sum table: the G_0 = −1 and
/// |G_m|² = q invariants, and the sign of the (real) quadratic Gauss sum
/// G_{(q−1)/2} = ±√q together with its prediction from the Hasse–Davenport
/// lifting (−1)^(e−1) G_p^e of the prime-field sign.
#[derive(Debug, Clone, Copy)]
pub struct SpecialIdentities {
    pub q: u64,
    /// |G_0 + 1|.
    pub gauss_zero_error: f64,
    /// max over m ≠ 0 of | |G_m|² − q |.
    pub modulus_error: f64,
    /// Sign of Re G_{(q−1)/2}.
    pub quadratic_sign: i8,
    /// Sign predicted by lifting the classical ±√p (resp. ±i√p) value.
    pub predicted_sign: i8,
    /// |Im G_{(q−1)/2}|, which must vanish when q ≡ 1 (mod 4).
    pub quadratic_imag: f64,
}

pub fn special_identities(table: &GaussTable<'_>) -> SpecialIdentities {
    let ctx = table.context();
    let q = ctx.q();
    let n1 = q - 1;
    let gauss_zero_error = (table.gauss(0) + 1.0).norm();
    let modulus_error = (1..n1)
        .map(|m| (table.gauss(m as i64).norm_sqr() - q as f64).abs())
        .fold(0.0, f64::max);
    let quad = table.gauss((n1 / 2) as i64);

    // G_p = √p for p ≡ 1 (mod 4) and i√p for p ≡ 3; lift through
    // (−1)^(e−1) G_p^e. With q ≡ 1 (mod 4) the result is real.
    let sqrt_p = (ctx.p() as f64).sqrt();
    let base = if ctx.p() % 4 == 1 {
        Complex64::new(sqrt_p, 0.0)
    } else {
        Complex64::new(0.0, sqrt_p)
    };
    let parity = if ctx.e() % 2 == 1 { 1.0 } else { -1.0 };
    let predicted = base.powu(ctx.e()) * parity;

    SpecialIdentities {
        q,
        gauss_zero_error,
        modulus_error,
        quadratic_sign: if quad.re >= 0.0 { 1 } else { -1 },
        predicted_sign: if predicted.re >= 0.0 { 1 } else { -1 },
        quadratic_imag: quad.im.abs(),
    }
}
