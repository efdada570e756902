//! Arithmetic in F_q = F_p[x]/(m(x)) for odd prime powers q = p^e, backed by
//! eager exponent, discrete-log, and trace tables sized for q ≤ 2^20.
//!
//! An element c₀ + c₁x + … + c_{e−1}x^{e−1} is identified with its canonical
//! index c₀ + c₁p + … + c_{e−1}p^{e−1} ∈ [0, q). Construction is fully
//! deterministic: the modulus is the monic irreducible of degree e whose
//! coefficient vector has the smallest packed index, and the generator is the
//! element of smallest index with multiplicative order q − 1 (both searches
//! are exhaustive). Multiplication, inversion, and powering run through the
//! dlog/exp tables; addition works digit-wise on the base-p packing.

use crate::{Error, Result};

/// Field orders are capped here unless a caller raises the limit explicitly
/// (the CLI does so via the `FROBTRACE_MAX_Q` environment variable).
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

/// Sentinel marking the zero element in the dlog table.
const DLOG_UNDEFINED: u32 = u32::MAX;

/// A fully tabulated finite field F_{p^e}.
#[derive(Debug)]
pub struct FieldContext {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible modulus, little-endian coefficients, length e + 1.
    modulus: Vec<u64>,
    /// Canonical index of the chosen generator g of F_q*.
    generator: u64,
    /// exp_table[k] = index of g^k, k ∈ [0, q−2].
    exp_table: Vec<u32>,
    /// dlog_table[index of g^k] = k; DLOG_UNDEFINED at index 0.
    dlog_table: Vec<u32>,
    /// trace_table[x] = x + x^p + … + x^(p^(e−1)) ∈ F_p, as a value in [0, p).
    trace_table: Vec<u32>,
}

impl FieldContext {
    /// Builds F_{p^e} under the default order ceiling.
    pub fn build(p: u64, e: u32) -> Result<FieldContext> {
        Self::build_with_max(p, e, DEFAULT_MAX_Q)
    }

    /// Builds F_{p^e} with an explicit ceiling on q.
    pub fn build_with_max(p: u64, e: u32, max_q: u64) -> Result<FieldContext> {
        Self::construct(p, e, max_q, None)
    }

    /// Builds F_{p^e} on the given generator instead of the smallest one.
    /// The candidate's order is verified; anything of order < q − 1 is
    /// rejected. Lets callers check that results are generator-independent.
    pub fn build_with_generator(p: u64, e: u32, generator_index: u64) -> Result<FieldContext> {
        Self::construct(p, e, DEFAULT_MAX_Q, Some(generator_index))
    }

    fn construct(p: u64, e: u32, max_q: u64, forced_generator: Option<u64>) -> Result<FieldContext> {
        assert!(e >= 1, "extension degree must be at least 1");
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut q128: u128 = 1;
        for _ in 0..e {
            q128 = q128.saturating_mul(p as u128);
        }
        if q128 > max_q as u128 {
            return Err(Error::TooLarge {
                q: q128.min(u64::MAX as u128) as u64,
                max: max_q,
            });
        }
        let q = q128 as u64;

        let modulus = find_modulus(p, e)?;

        let generator = match forced_generator {
            Some(index) => {
                if index >= q || !generates(index, p, q, &modulus) {
                    return Err(Error::NotAGenerator { index });
                }
                index
            }
            None => (1..q)
                .find(|&cand| generates(cand, p, q, &modulus))
                .ok_or(Error::NoIrreducible { p, e })?,
        };

        let mut ctx = FieldContext {
            p,
            e,
            q,
            modulus,
            generator,
            exp_table: Vec::new(),
            dlog_table: Vec::new(),
            trace_table: Vec::new(),
        };
        ctx.fill_tables();
        Ok(ctx)
    }

    fn fill_tables(&mut self) {
        let (p, e, q) = (self.p, self.e, self.q);
        let n1 = q - 1;

        self.exp_table = vec![0u32; n1 as usize];
        self.dlog_table = vec![DLOG_UNDEFINED; q as usize];
        let gen_digits = index_digits(self.generator, p, e);
        let mut v = vec![0u64; e as usize];
        v[0] = 1;
        for k in 0..n1 {
            let idx = digits_index(&v, p);
            self.exp_table[k as usize] = idx as u32;
            self.dlog_table[idx as usize] = k as u32;
            let prod = poly_mul_mod(&v, &gen_digits, &self.modulus, p);
            v = padded(prod, e);
        }
        assert_eq!(digits_index(&v, p), 1, "generator cycle must close at g^(q−1) = 1");
        assert!(
            (1..q).all(|i| self.dlog_table[i as usize] != DLOG_UNDEFINED),
            "generator powers must cover every nonzero element"
        );

        self.trace_table = vec![0u32; q as usize];
        let frob_exponents: Vec<u64> = (0..e).map(|i| pow_mod(p, i as u64, n1)).collect();
        for x in 1..q {
            let dx = self.dlog_table[x as usize] as u64;
            let mut acc = vec![0u64; e as usize];
            for &pe in &frob_exponents {
                let image = self.exp_table[((dx * pe) % n1) as usize] as u64;
                for (slot, d) in acc.iter_mut().zip(index_digits(image, p, e)) {
                    *slot = (*slot + d) % p;
                }
            }
            let t = digits_index(&acc, p);
            assert!(t < p, "trace must land in the prime subfield");
            self.trace_table[x as usize] = t as u32;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Little-endian coefficients of the modulus, length e + 1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement<'_> {
        FieldElement { index: self.generator, ctx: self }
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement { index: 0, ctx: self }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement { index: 1, ctx: self }
    }

    /// The element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<FieldElement<'_>> {
        if index < self.q {
            Ok(FieldElement { index, ctx: self })
        } else {
            Err(Error::IndexOutOfRange { index, q: self.q })
        }
    }

    /// The image of the integer n under Z → F_q (a constant polynomial).
    pub fn from_int(&self, n: i64) -> FieldElement<'_> {
        let r = n.rem_euclid(self.p as i64) as u64;
        FieldElement { index: r, ctx: self }
    }

    /// Embeds a prime-subfield value v ∈ [0, p) as the constant polynomial v:
    /// the field embedding F_p ↪ F_{p^e} used to lift curve coefficients.
    pub fn embed_base(&self, value: u64) -> FieldElement<'_> {
        assert!(value < self.p, "embed_base takes a residue in [0, p)");
        FieldElement { index: value, ctx: self }
    }

    /// g^k for the context's generator g (k taken mod q − 1).
    pub fn generator_power(&self, k: u64) -> FieldElement<'_> {
        let idx = self.exp_table[(k % (self.q - 1)) as usize] as u64;
        FieldElement { index: idx, ctx: self }
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> {
        (0..self.q).map(move |index| FieldElement { index, ctx: self })
    }

    /// Canonical indices of every generator of F_q*, ascending: the powers
    /// g^k with gcd(k, q − 1) = 1, of which there are φ(q − 1).
    pub fn generator_indices(&self) -> Vec<u64> {
        let n1 = self.q - 1;
        let mut out: Vec<u64> = (1..n1)
            .filter(|&k| gcd(k, n1) == 1)
            .map(|k| self.exp_table[k as usize] as u64)
            .collect();
        out.sort_unstable();
        out
    }

    fn add_indices(&self, a: u64, b: u64) -> u64 {
        let (p, e) = (self.p, self.e);
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..e {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg_index(&self, a: u64) -> u64 {
        let (p, e) = (self.p, self.e);
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..e {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    fn mul_indices(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n1 = self.q - 1;
        let k = (self.dlog_table[a as usize] as u64 + self.dlog_table[b as usize] as u64) % n1;
        self.exp_table[k as usize] as u64
    }
}

/// An element of a [`FieldContext`], cheap to copy. Elements from different
/// contexts never combine: the arithmetic operators assert that both sides
/// point at the same context object.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    index: u64,
    ctx: &'a FieldContext,
}

pub(crate) fn assert_same_ctx(a: &FieldContext, b: &FieldContext) {
    assert!(
        std::ptr::eq(a, b),
        "field elements from different contexts cannot be combined"
    );
}

impl<'a> FieldElement<'a> {
    pub fn index(self) -> u64 {
        self.index
    }

    pub fn context(self) -> &'a FieldContext {
        self.ctx
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }

    /// The discrete log base g, in [0, q−2].
    pub fn dlog(self) -> Result<u64> {
        if self.index == 0 {
            Err(Error::LogOfZero)
        } else {
            Ok(self.ctx.dlog_table[self.index as usize] as u64)
        }
    }

    /// Multiplicative inverse.
    pub fn inv(self) -> Result<FieldElement<'a>> {
        if self.index == 0 {
            return Err(Error::DivisionByZero);
        }
        let n1 = self.ctx.q - 1;
        let k = (n1 - self.ctx.dlog_table[self.index as usize] as u64) % n1;
        Ok(FieldElement { index: self.ctx.exp_table[k as usize] as u64, ctx: self.ctx })
    }

    /// x^k with the convention x^0 = 1 (including 0^0 = 1).
    pub fn pow(self, k: u64) -> FieldElement<'a> {
        if k == 0 {
            return self.ctx.one();
        }
        if self.index == 0 {
            return self.ctx.zero();
        }
        let n1 = self.ctx.q - 1;
        let d = (self.ctx.dlog_table[self.index as usize] as u64 * (k % n1)) % n1;
        FieldElement { index: self.ctx.exp_table[d as usize] as u64, ctx: self.ctx }
    }

    /// The absolute trace x + x^p + … + x^(p^(e−1)) as a residue in [0, p).
    pub fn trace_to_base(self) -> u64 {
        self.ctx.trace_table[self.index as usize] as u64
    }
}

impl std::ops::Add for FieldElement<'_> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_same_ctx(self.ctx, rhs.ctx);
        FieldElement { index: self.ctx.add_indices(self.index, rhs.index), ctx: self.ctx }
    }
}

impl std::ops::Sub for FieldElement<'_> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_same_ctx(self.ctx, rhs.ctx);
        let neg = self.ctx.neg_index(rhs.index);
        FieldElement { index: self.ctx.add_indices(self.index, neg), ctx: self.ctx }
    }
}

impl std::ops::Neg for FieldElement<'_> {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement { index: self.ctx.neg_index(self.index), ctx: self.ctx }
    }
}

impl std::ops::Mul for FieldElement<'_> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_same_ctx(self.ctx, rhs.ctx);
        FieldElement { index: self.ctx.mul_indices(self.index, rhs.index), ctx: self.ctx }
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.index == other.index
    }
}

impl Eq for FieldElement<'_> {}

impl std::fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}∈F_{}", self.index, self.ctx.q)
    }
}

/// Deterministic trial-division primality test (inputs stay below 2^20).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits q into (p, e) with p prime and q = p^e, if q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut base: u64, mut k: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        k >>= 1;
    }
    acc
}

fn index_digits(mut idx: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn digits_index(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn padded(mut a: Vec<u64>, e: u32) -> Vec<u64> {
    a.resize(e as usize, 0);
    a
}

// --- dense little-endian polynomial arithmetic over F_p (construction only) ---

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn poly_deg(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Remainder of a modulo the monic polynomial m.
fn poly_reduce(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    if dm == 0 {
        return vec![0];
    }
    let mut i = a.len();
    while i > dm {
        i -= 1;
        let c = a[i] % p;
        if c != 0 {
            a[i] = 0;
            for (j, &mj) in m.iter().enumerate().take(dm) {
                let sub = mj % p * c % p;
                let slot = &mut a[i - dm + j];
                *slot = (*slot + p - sub) % p;
            }
        }
    }
    a.truncate(dm);
    poly_trim(a)
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_reduce(out, m, p)
}

fn poly_pow_mod(base: &[u64], mut k: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_reduce(base.to_vec(), m, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        k >>= 1;
    }
    poly_reduce(acc, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !poly_is_zero(&b) {
        // Scale b monic so poly_reduce applies.
        let lead = b[poly_deg(&b)];
        let inv = pow_mod(lead, p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let r = poly_reduce(a, &monic, p);
        a = b;
        b = poly_trim(r);
    }
    a
}

/// Irreducibility over F_p: m (monic, degree e) is irreducible iff
/// gcd(x^(p^k) − x, m) = 1 for 1 ≤ k < e and x^(p^e) ≡ x (mod m).
fn is_irreducible(m: &[u64], p: u64, e: u32) -> bool {
    if e == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut cur = poly_pow_mod(&x, p, m, p); // x^(p^1)
    for _ in 1..e {
        // Here cur = x^(p^k) for some 1 ≤ k < e.
        let mut diff = padded(cur.clone(), cur.len().max(2) as u32);
        diff[1] = (diff[1] + p - 1) % p;
        if poly_deg(&poly_gcd(&diff, m, p)) != 0 {
            return false;
        }
        cur = poly_pow_mod(&cur, p, m, p);
    }
    // The loop leaves cur = x^(p^e); irreducibility needs cur ≡ x.
    poly_trim(cur) == x
}

fn find_modulus(p: u64, e: u32) -> Result<Vec<u64>> {
    let q = p.pow(e);
    for c in 0..q {
        let mut m = index_digits(c, p, e);
        m.push(1);
        if is_irreducible(&m, p, e) {
            return Ok(m);
        }
    }
    Err(Error::NoIrreducible { p, e })
}

/// True iff the element with the given index has multiplicative order q − 1,
/// i.e. cand^((q−1)/ℓ) ≠ 1 for every prime ℓ | q − 1 (and cand^(q−1) = 1,
/// which Lagrange guarantees but is cheap to confirm).
fn generates(index: u64, p: u64, q: u64, modulus: &[u64]) -> bool {
    if index == 0 {
        return false;
    }
    let e = (modulus.len() - 1) as u32;
    let digits = index_digits(index, p, e);
    let n1 = q - 1;
    let proper_powers_nontrivial = distinct_prime_factors(n1).iter().all(|&ell| {
        let r = poly_pow_mod(&digits, n1 / ell, modulus, p);
        digits_index(&r, p) != 1
    });
    proper_powers_nontrivial && {
        let full = poly_pow_mod(&digits, n1, modulus, p);
        digits_index(&full, p) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn builds_f13_with_generator_two() {
        let ctx = FieldContext::build(13, 1).unwrap();
        assert_eq!(ctx.q(), 13);
        assert_eq!(ctx.modulus(), &[0, 1]);
        // Independent oracle: the smallest element of multiplicative order 12.
        let order = |a: u64| {
            let mut v = a;
            let mut k = 1;
            while v != 1 {
                v = v * a % 13;
                k += 1;
            }
            k
        };
        let smallest = (2..13).find(|&a| order(a) == 12).unwrap();
        assert_eq!(smallest, 2);
        assert_eq!(ctx.generator().index(), smallest);
        // 2^6 = 64 ≡ −1 (mod 13): order is exactly 12.
        assert_eq!(ctx.generator().pow(6).index(), 12);
    }

    #[test]
    fn builds_f25() {
        let ctx = FieldContext::build(5, 2).unwrap();
        assert_eq!(ctx.q(), 25);
        assert_eq!((ctx.q() - 1) % 12, 0);
        // x² + 2 is the first monic irreducible in packed order: x² and
        // x² + 1 = (x+2)(x+3) both factor, and −2 ≡ 3 is a non-residue mod 5.
        assert_eq!(ctx.modulus(), &[2, 0, 1]);
        for z in 0..5u64 {
            assert_ne!((z * z + 2) % 5, 0, "modulus must have no roots in F_5");
        }
        // Generator x + 1 (index 6): constants have order ≤ 4 and x has
        // order 8, so index 6 is the first with full order 24.
        assert_eq!(ctx.generator().index(), 6);
        assert_eq!(ctx.generator().pow(24), ctx.one());
        assert_ne!(ctx.generator().pow(12), ctx.one());
        assert_ne!(ctx.generator().pow(8), ctx.one());
    }

    #[test]
    fn deeper_extensions_build() {
        for &(p, e, q) in &[(5u64, 3u32, 125u64), (3, 4, 81), (7, 3, 343)] {
            let ctx = FieldContext::build(p, e).unwrap();
            assert_eq!(ctx.q(), q);
            assert_eq!(ctx.generator().pow(q - 1), ctx.one());
            // Trace is balanced: every value in F_p hit exactly q/p times.
            for t in 0..p {
                let hits = ctx.elements().filter(|x| x.trace_to_base() == t).count() as u64;
                assert_eq!(hits, q / p);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldContext::build(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldContext::build(1, 1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldContext::build(2, 3), Err(Error::NotPrime(2))));
        // 1031² = 1 062 961 just clears the 2^20 ceiling.
        match FieldContext::build(1031, 2) {
            Err(Error::TooLarge { q, max }) => {
                assert_eq!(q, 1031 * 1031);
                assert_eq!(max, DEFAULT_MAX_Q);
            }
            Err(other) => panic!("expected TooLarge, got {other:?}"),
            Ok(_) => panic!("expected TooLarge, got a successful build"),
        }
        assert!(matches!(
            FieldContext::build_with_max(13, 1, 10),
            Err(Error::TooLarge { q: 13, max: 10 })
        ));
    }

    #[test]
    fn forced_generator_is_validated() {
        let ctx = FieldContext::build_with_generator(13, 1, 6).unwrap();
        assert_eq!(ctx.generator().index(), 6);
        assert!(matches!(
            FieldContext::build_with_generator(13, 1, 3),
            Err(Error::NotAGenerator { index: 3 })
        ));
        assert!(matches!(
            FieldContext::build_with_generator(13, 1, 0),
            Err(Error::NotAGenerator { index: 0 })
        ));
    }

    #[test]
    fn all_generators_of_f13() {
        let ctx = FieldContext::build(13, 1).unwrap();
        assert_eq!(ctx.generator_indices(), vec![2, 6, 7, 11]);
        for g in ctx.generator_indices() {
            assert!(FieldContext::build_with_generator(13, 1, g).is_ok());
        }
    }

    #[test]
    fn basic_arithmetic_matches_modular() {
        let ctx = FieldContext::build(13, 1).unwrap();
        let x = ctx.element(7).unwrap();
        let y = ctx.element(8).unwrap();
        assert_eq!((x + y).index(), 2);
        assert_eq!((x * y).index(), 56 % 13);
        assert_eq!((x - y).index(), 7 + 13 - 8);
        assert_eq!((-x).index(), 13 - 7);
    }

    #[test]
    fn inverse_and_lagrange() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for &(p, e) in &[(13u64, 1u32), (5, 2)] {
            let ctx = FieldContext::build(p, e).unwrap();
            let q = ctx.q();
            for _ in 0..200 {
                let x = ctx.element(rng.gen_range(1..q)).unwrap();
                assert_eq!(x * x.inv().unwrap(), ctx.one());
            }
            assert_eq!(ctx.generator().pow(q - 1), ctx.one());
        }
        let ctx = FieldContext::build(13, 1).unwrap();
        assert_eq!(ctx.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn dlog_table_properties() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        for &(p, e) in &[(13u64, 1u32), (5, 2), (37, 1)] {
            let ctx = FieldContext::build(p, e).unwrap();
            let q = ctx.q();
            assert_eq!(ctx.generator().dlog().unwrap(), 1);
            assert_eq!(ctx.one().dlog().unwrap(), 0);
            // exp and dlog invert each other on the whole range.
            for k in 0..q - 1 {
                assert_eq!(ctx.generator_power(k).dlog().unwrap(), k);
            }
            for _ in 0..100 {
                let x = ctx.element(rng.gen_range(1..q)).unwrap();
                let y = ctx.element(rng.gen_range(1..q)).unwrap();
                let expect = (x.dlog().unwrap() + y.dlog().unwrap()) % (q - 1);
                assert_eq!((x * y).dlog().unwrap(), expect);
            }
            assert_eq!(ctx.zero().dlog(), Err(Error::LogOfZero));
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let ctx = FieldContext::build(5, 2).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let x = ctx.element(rng.gen_range(0..25)).unwrap();
            let mut acc = ctx.one();
            for k in 0..8u64 {
                assert_eq!(x.pow(k), acc, "x = {x:?}, k = {k}");
                acc = acc * x;
            }
        }
    }

    #[test]
    fn trace_is_the_identity_for_prime_fields() {
        let ctx = FieldContext::build(13, 1).unwrap();
        for x in ctx.elements() {
            assert_eq!(x.trace_to_base(), x.index());
        }
    }

    #[test]
    fn trace_over_f25() {
        let ctx = FieldContext::build(5, 2).unwrap();
        // tr(c) = c + c^5 = 2c for constants.
        assert_eq!(ctx.one().trace_to_base(), 2);
        for c in 0..5u64 {
            assert_eq!(ctx.embed_base(c).trace_to_base(), 2 * c % 5);
        }
        // F_p-linear on random pairs.
        let mut rng = rand::rngs::StdRng::seed_from_u64(14);
        for _ in 0..100 {
            let x = ctx.element(rng.gen_range(0..25)).unwrap();
            let y = ctx.element(rng.gen_range(0..25)).unwrap();
            assert_eq!((x + y).trace_to_base(), (x.trace_to_base() + y.trace_to_base()) % 5);
        }
        // Balanced: each value of F_5 hit exactly q/p = 5 times.
        for t in 0..5u64 {
            let hits = ctx.elements().filter(|x| x.trace_to_base() == t).count();
            assert_eq!(hits, 5, "trace value {t}");
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let base = FieldContext::build(5, 1).unwrap();
        let ext = FieldContext::build(5, 2).unwrap();
        for u in 0..5u64 {
            for v in 0..5u64 {
                let sum = (base.embed_base(u) + base.embed_base(v)).index();
                let prod = (base.embed_base(u) * base.embed_base(v)).index();
                assert_eq!(ext.embed_base(u) + ext.embed_base(v), ext.embed_base(sum));
                assert_eq!(ext.embed_base(u) * ext.embed_base(v), ext.embed_base(prod));
            }
        }
    }

    #[test]
    #[should_panic(expected = "different contexts")]
    fn mixed_contexts_never_combine() {
        let a = FieldContext::build(13, 1).unwrap();
        let b = FieldContext::build(13, 1).unwrap();
        let _ = a.one() + b.one();
    }

    #[test]
    fn element_index_bounds() {
        let ctx = FieldContext::build(13, 1).unwrap();
        assert!(ctx.element(12).is_ok());
        assert_eq!(ctx.element(13), Err(Error::IndexOutOfRange { index: 13, q: 13 }));
        assert_eq!(ctx.from_int(-1).index(), 12);
        assert_eq!(ctx.from_int(1728).index(), 1728 % 13);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(169), Some((13, 2)));
        assert_eq!(prime_power(121), Some((11, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(1024), Some((2, 10)));
    }

    proptest! {
        // Field axioms in F_25, exercised through the packed-index encoding.
        #[test]
        fn f25_ring_axioms(a in 0u64..25, b in 0u64..25, c in 0u64..25) {
            let ctx = FieldContext::build(5, 2).unwrap();
            let (x, y, z) = (
                ctx.element(a).unwrap(),
                ctx.element(b).unwrap(),
                ctx.element(c).unwrap(),
            );
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!((x + y) - y, x);
        }
    }
}
