use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^61")]
    ModulusTooLarge(u64),
    #[error("operation requires an odd modulus")]
    EvenModulus,
    #[error("operation requires an odd argument")]
    EvenArgument,
    #[error("residue has no inverse modulo p")]
    NotInvertible,
    #[error("extension elements disagree on p or d")]
    BasisMismatch,
    #[error("congruence class of the coefficient is not covered")]
    UnsupportedCongruenceClass,
    #[error("coefficient vanishes modulo p")]
    DegenerateCoefficient,
    #[error("input exceeds the brute-force scale limit")]
    OracleScaleExceeded,
    #[error("points lie on different curves")]
    CurveMismatch,
    #[error("point does not satisfy the curve equation")]
    NotOnCurve,
    #[error("exhaustive search found no generator")]
    NotFound,
    #[error("n = a is the excluded index value")]
    ExcludedValue,
    #[error("index outside the admissible range")]
    OutOfRange,
    #[error("tau must equal 1/|a| for period extraction")]
    UnsupportedTau,
    #[error("Im(tau) must be positive")]
    NonConvergentTau,
    #[error("curve coefficient a must be nonzero with |a| <= 2^31")]
    InvalidCoefficient,
}

pub type Result<T> = std::result::Result<T, Error>;
