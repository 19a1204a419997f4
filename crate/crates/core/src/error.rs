use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rational function has a pole at t = {0}")]
    PoleAtPoint(String),
    #[error("series shape mismatch: {0}")]
    DimensionMismatch(String),
    #[error("series constant term must be {expected}, found {found}")]
    WrongConstantTerm { expected: String, found: String },
    #[error("half-integer exponent {twice}/2 cannot be finalized")]
    OddHalfExponent { twice: i64 },
    #[error("type has empty support")]
    ZeroType,
    #[error("invalid type entry: {0}")]
    InvalidType(String),
    #[error("multipartition sizes {sizes:?} do not match dimension vector {dims:?}")]
    SizeMismatch { sizes: Vec<usize>, dims: Vec<usize> },
    #[error("dimension vector {0:?} is not indivisible")]
    NotIndivisible(Vec<usize>),
    #[error("no generic element over F_{q}: subvector {failing:?} always pairs to zero")]
    NoGenericElement { q: u32, failing: Vec<usize> },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("route mismatch for {what}: {left} != {right}")]
    RouteMismatch {
        what: String,
        left: String,
        right: String,
    },
    #[error("{what} is not a polynomial with integer coefficients: {value}")]
    NonPolynomial { what: String, value: String },
    #[error("{what} has a negative coefficient: {value}")]
    Negativity { what: String, value: String },
    #[error("q = {q} is inadmissible: need {n} | q - 1")]
    InadmissibleQ { q: u32, n: usize },
    #[error("unsupported field size q = {0}")]
    UnsupportedField(u32),
    #[error("enumeration budget exceeded: order {order} > budget {budget}")]
    BudgetExceeded { order: String, budget: u64 },
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Bad input or configuration, as opposed to a failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::InvalidQuiver(_)
                | Error::DimensionMismatch(_)
                | Error::SizeMismatch { .. }
                | Error::NotIndivisible(_)
                | Error::NoGenericElement { .. }
                | Error::InadmissibleQ { .. }
                | Error::UnsupportedField(_)
                | Error::BudgetExceeded { .. }
        )
    }
}
