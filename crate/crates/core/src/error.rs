use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("every coordinate is zero")]
    AllZeroCoordinates,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate point: index {second} repeats index {first}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("wrong ambient dimension: expected P^{expected}, got P^{found}")]
    WrongAmbientDimension { expected: usize, found: usize },

    #[error("subset search over {size} points exceeds the cap of {cap}")]
    SearchCapExceeded { size: usize, cap: usize },

    #[error("point is not a singular point of the hypersurface")]
    NotSingular,

    #[error("node test is undefined in characteristic two")]
    CharacteristicTwo,

    #[error("enumeration of {points} points exceeds the scan budget of {budget}")]
    BudgetExceeded { points: u128, budget: u128 },

    #[error("degenerate line configuration: {0}")]
    DegenerateLineConfiguration(String),

    #[error("no generic projection found after {attempts} draws: {reason}")]
    GenericityFailure { attempts: usize, reason: String },

    #[error("random draw retries exhausted")]
    RetriesExhausted,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("value is not representable in the target field: {0}")]
    NotRepresentable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
