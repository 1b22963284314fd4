use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} exceeds the supported range (2^64)")]
    TooLarge(String),

    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),

    #[error("form {0} is not primitive (gcd of coefficients is {1}); use ScaledForm")]
    Imprimitive(String, String),

    #[error("invalid discriminant {0}: {1}")]
    InvalidDiscriminant(String, &'static str),

    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(String, String),

    #[error("class number h({0}) = {1} is even; square roots in the class group are not unique")]
    EvenClassNumber(String, usize),

    #[error(
        "discriminant {0} is not fundamental (conductor {1}); class-field operations are \
         restricted to maximal orders because for non-maximal orders the form class group \
         differs from the Galois group of the Hilbert class field"
    )]
    NotFundamental(String, String),

    #[error("{value} is not locally represented by {form} (obstruction at {place})")]
    NotLocallyRepresented {
        form: String,
        value: String,
        place: String,
    },

    #[error("prime {0} divides {1}")]
    PrimeDividesDiscriminant(String, String),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("p = 2 is outside the odd-prime hypothesis")]
    EvenPrime,

    #[error(
        "prime {0} divides the discriminant of the class polynomial of {1} (non-generic prime)"
    )]
    NonGenericPrime(u64, String),

    #[error(
        "class polynomial of {0} failed to round within tolerance (last attempt at {1} digits)"
    )]
    PrecisionExhausted(String, u32),

    #[error("requested {0} digits exceeds the configured cap of {1}")]
    PrecisionInfeasible(u32, u32),

    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn parse(input: &str, why: impl Into<String>) -> Self {
        Error::Parse(input.to_string(), why.into())
    }
}
