use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1}")]
    IncompatibleOrders(u32, u32),
    #[error("cyclotomic order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: u32, cap: u32 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the defining polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("the shift h0 must be nonzero")]
    ZeroShift,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("codomain degree bound {bound} cannot hold an image of degree {degree}")]
    CodomainTooSmall { bound: usize, degree: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no stabilization up to D = {max} (observations {schedule:?})")]
    NoStabilization {
        max: usize,
        schedule: Vec<(usize, usize)>,
    },
    #[error("ad-series did not terminate within {0} iterations")]
    AdSeriesCap(usize),
    #[error("rho = {0} does not satisfy a(rho - h) = (-1)^n a(h)")]
    InvalidRho(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("assembled maps do not form a complex: {0}")]
    NotAComplex(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("induced map is not an involution of the quotient: {0}")]
    NotAnInvolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
