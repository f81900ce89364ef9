use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid chain parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("size guard violated: {0}")]
    Guard(String),
    #[error("series has a nonzero constant term and cannot be inverted geometrically")]
    NonInvertibleSeries,
    #[error("series truncated at order {have}, need at least {needed}")]
    TruncationTooLow { needed: usize, have: usize },
    #[error("normalization pole hit at u = {0}")]
    Pole(String),
    #[error("leg mismatch: {0}")]
    LegMismatch(String),
    #[error("eigenvalues remain degenerate after {0} randomized attempts")]
    Degenerate(usize),
    #[error("interpolation residual {residual:.3e} exceeds tolerance {tol:.1e} ({what})")]
    Interpolation {
        what: String,
        residual: f64,
        tol: f64,
    },
    #[error("normalization depends on the eigenstate at level {k}: spread {spread:.3e}")]
    Normalization { k: usize, spread: f64 },
    #[error("family does not contain T_{0}")]
    MissingEntry(i64),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("Q is not real analytic (max |Im| = {0:.3e})")]
    NotRealAnalytic(f64),
    #[error("no Q solution of degree {degree}: residual {residual:.3e}")]
    NoSolution { degree: usize, residual: f64 },
    #[error("null space of dimension {0} at the selected degree")]
    DegenerateNullSpace(usize),
    #[error("singular root: {0}")]
    SingularRoot(String),
    #[error("division remainder {0:.3e} exceeds tolerance")]
    Remainder(f64),
    #[error("Newton Jacobian is singular")]
    SingularJacobian,
    #[error("Newton iteration cap {iterations} hit with residual {residual:.3e}")]
    NoConvergence { iterations: usize, residual: f64 },
}
