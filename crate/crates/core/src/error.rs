use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descent composition of an empty label sequence")]
    EmptyChain,
    #[error("function is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("the identity permutation does not determine an interval")]
    IdentityInput,
    #[error("interval is empty")]
    EmptyInterval,
    #[error("affine permutation {0} is not 0-grassmannian")]
    NotGrassmannian(String),
    #[error("partition {partition} is not a {modulus}-core (cell with hook {modulus})")]
    NotACore { partition: String, modulus: usize },
    #[error("affine permutations have different k ({0} vs {1})")]
    KMismatch(usize, usize),
    #[error("pair ({a},{b}) is not a reflection for k={k}: need 0 < b-a <= k")]
    BadPair { a: i64, b: i64, k: usize },
    #[error("enumeration exceeded the cap of {0} items")]
    CapExceeded(usize),
    #[error("Pieri degree {m} out of range 1..={k}")]
    MOutOfRange { m: usize, k: usize },
    #[error("letters do not match the side conditions of relation {0}")]
    PatternMismatch(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid affine window: {0}")]
    InvalidWindow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("k={k} is below the smallest admissible value {min}")]
    KTooSmall { k: usize, min: usize },
    #[error("embedding produced a non-grassmannian window {0}")]
    NotGrassmannianResult(String),
}
