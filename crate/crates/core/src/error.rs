use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors across the crate. `InvariantViolation` is reserved for conditions
/// the underlying theory rules out; seeing one means a bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be positive")]
    ZeroInput,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power (or is < 2)")]
    NotPrimePower(u64),

    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: u64, b: u64 },

    #[error("lift-the-exponent hypothesis failed: {ell} does not divide {m} - 1")]
    LteNotDividing { ell: u64, m: u64 },

    #[error("lift-the-exponent hypothesis failed: base {m} must be odd when ell = 2")]
    LteEvenBase { m: u64 },

    #[error("lift-the-exponent undefined: {m}^d - 1 vanishes (base must be >= 2)")]
    LteDegenerateBase { m: u64 },

    #[error("coset with leader {leader} is not equal-difference modulo {modulus}")]
    NotEqualDifference { leader: u64, modulus: u64 },

    #[error("exponent {t} does not divide the coset size {tau}")]
    ExponentNotDivisor { t: u64, tau: u64 },

    #[error("exponent {t} is not a multiple of the coarsest equal-difference exponent {coarsest}")]
    ExponentNotMultiple { t: u64, coarsest: u64 },

    #[error("decompositions have different parent cosets")]
    MismatchedParents,

    #[error("blocks do not partition the coset (overlapping: {overlapping:?}, missing: {missing:?})")]
    NotAPartition {
        overlapping: Vec<u64>,
        missing: Vec<u64>,
    },

    #[error("coset size {tau} exceeds the enumeration cap {cap}")]
    CapExceeded { tau: u64, cap: u64 },

    #[error("splitting field F_{p}^{degree} exceeds the configured size guard")]
    SizeGuard { p: u64, degree: u64 },

    #[error("extension degree {degree} exceeds the configured cap {cap}")]
    DegreeGuard { degree: u64, cap: u64 },

    #[error("concrete field paths require prime q; {q} is a proper prime power")]
    NonPrimeBase { q: u64 },

    #[error("root of unity has modulus {got}, expected {expected}")]
    RootModulusMismatch { expected: u64, got: u64 },

    #[error("characteristic mismatch: {a} vs {b}")]
    CharacteristicMismatch { a: u64, b: u64 },

    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Exit-code class used by the command-line tool: 2 input, 3 resource
    /// guard, 4 internal invariant.
    pub fn exit_class(&self) -> u8 {
        match self {
            Error::SizeGuard { .. } | Error::DegreeGuard { .. } => 3,
            Error::InvariantViolation(_) | Error::Overflow(_) => 4,
            _ => 2,
        }
    }
}
