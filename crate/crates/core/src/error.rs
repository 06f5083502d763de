use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("subgroup is not maximal")]
    NotMaximal,
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: String, cap: u64 },
    #[error("group is not soluble")]
    NotSoluble,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("search budget of {budget} trials exhausted without a witness")]
    SearchExhausted { budget: u64 },
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("unknown group descriptor {0:?}")]
    UnknownGroup(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
