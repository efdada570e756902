use thiserror::Error;

/// Everything that can go wrong below the CLI layer. Hypothesis violations
/// carry enough context to name the failed precondition in a diagnostic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotPrime(u64),
    #[error("q = {q} exceeds the configured maximum {max}")]
    TooLarge { q: u64, max: u64 },
    #[error("no irreducible modulus of degree {e} over F_{p} (search bug)")]
    NoIrreducible { p: u64, e: u32 },
    #[error("element {index} does not generate the multiplicative group")]
    NotAGenerator { index: u64 },
    #[error("index {index} out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete log of zero is undefined")]
    LogOfZero,
    #[error("the additive-character expansion requires a nonzero argument")]
    ZeroArgument,
    #[error("q = {q} does not satisfy q ≡ 1 (mod {modulus})")]
    BadModulus { q: u64, modulus: u64 },
    #[error("transformation argument x = {x} lies outside the allowed domain")]
    BadArgument { x: u64 },
    #[error("singular curve: discriminant −16(4a³ + 27b²) is zero")]
    SingularCurve,
    #[error("q = {q} ≢ 1 (mod 12), required by the trace formulas")]
    BadFieldCongruence { q: u64 },
    #[error("a = 0 gives j(E) = 0, excluded by the coefficient-form trace formula")]
    JInvariantZero,
    #[error("b = 0 gives j(E) = 1728, excluded by the coefficient-form trace formula")]
    JInvariant1728,
    #[error("j(E) = {j} is 0 or 1728, excluded by the j-invariant trace formula")]
    JInvariantExcluded { j: u64 },
    #[error("rounding residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    RoundingFailure { residual: f64, tolerance: f64 },
    #[error("a(E/F_p²) + 2p = {0} is not a perfect square")]
    NotAPerfectSquare(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
