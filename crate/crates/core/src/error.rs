use thiserror::Error;

/// Errors raised by the a-adic operations.
///
/// Domain errors (everything except [`AdicError::InvalidSpec`] and
/// [`AdicError::Parse`]) map to CLI exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdicError {
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("invalid supernatural number: {0}")]
    InvalidSupernatural(String),
    #[error("{0} is not in N (denominator exceeds the negative tail)")]
    NotInN(String),
    #[error("{0} is not in N* (denominator exceeds the dual negative tail)")]
    NotInNStar(String),
    #[error("{0} is not in S (a prime factor lies outside P)")]
    NotInS(String),
    #[error("ideal {0} is not in the lattice U")]
    NotInLattice(String),
    #[error("ideal {inner} is not contained in {outer}")]
    NotNested { outer: String, inner: String },
    #[error("insufficient precision: need digits below {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("operands are defined over different sequences")]
    SpecMismatch,
    #[error("pairing case mismatch: {0}")]
    BadCase(String),
    #[error("digit {digit} at index {index} is out of range for radix {radix}")]
    DigitOutOfRange { index: i64, digit: u64, radix: u64 },
    #[error("the subgroup H is trivial")]
    TrivialH,
    #[error("no integral element s > 1 found in H within the search box")]
    NoContraction,
    #[error("P is empty")]
    EmptyP,
    #[error("target lies outside the representable sequence class: {0}")]
    OutOfRepresentableClass(String),
    #[error("invalid surgery: {0}")]
    InvalidSurgery(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AdicError>;
