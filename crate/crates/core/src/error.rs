use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime field modulus")]
    NotPrime(u64),
    #[error("operands live in different fields (p={0} vs p={1})")]
    FieldMismatch(u64, u64),
    #[error("coefficient {value} is not a residue mod {p}")]
    ResidueOutOfRange { value: u64, p: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("element is not invertible modulo the given polynomial")]
    NotInvertible,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("irreducibility is undefined for constant polynomials")]
    ConstantPolynomial,
    #[error("CRT moduli are not pairwise coprime (indices {0} and {1})")]
    NonCoprimeModuli(usize, usize),
    #[error("CRT needs at least one modulus")]
    EmptyModuli,
    #[error("expected {expected} residues, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("cannot produce {wanted} distinct irreducibles of degree {degree} over GF({p}); only {available} exist")]
    InfeasibleDegrees {
        p: u64,
        degree: usize,
        wanted: usize,
        available: String,
    },
    #[error("public exponent {e} is not coprime to phi = {phi}")]
    IncompatibleExponent { e: String, phi: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("block of degree {degree} does not fit modulus of degree {limit}")]
    BlockTooLarge { degree: isize, limit: usize },
    #[error("modulus of degree {0} cannot carry a single byte per block")]
    CapacityTooSmall(usize),
    #[error("malformed padding: {0}")]
    Padding(String),
    #[error("ciphertext (p={ct_p}, n={ct_n}) does not match key (p={key_p}, n={key_n})")]
    KeyMismatch {
        ct_p: u64,
        ct_n: usize,
        key_p: u64,
        key_n: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format version {0:?}")]
    Version(String),
    #[error("key invariant violated: {0}")]
    InvariantViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
