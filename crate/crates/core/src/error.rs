use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("vector fields live on different coordinates: [{0}] vs [{1}]")]
    CoordinateMismatch(String, String),
    #[error("jet order cap {cap} exceeded creating `{coord}`")]
    OrderCap { coord: String, cap: u32 },
    #[error("jet order cap must be at least 3, got {0}")]
    InvalidCap(u32),
    #[error("coefficient `{0}` depends on t; the class only allows f(x,u), g(x,u)")]
    DependsOnTime(String),
    #[error("commutator [{0}, {1}] does not lie in the span of the basis")]
    NonClosure(String, String),
    #[error("basis is linearly dependent at `{0}`")]
    LinearDependence(String),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("operator outside the restricted shape: {0}")]
    Shape(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
