use thiserror::Error;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order {0}")]
    InvalidOrder(usize),
    #[error("jets are expanded at different centers")]
    CenterMismatch,
    #[error("division by a jet whose constant term has modulus {0:e}")]
    DivisionBySingularJet(f64),
    #[error("derivative order {requested} exceeds jet order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("Blaschke zero {0} is not inside the unit disk")]
    ZeroOutsideDisk(num_complex::Complex64),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("rigid case: parameter {0} is unimodular, the disk degenerates to a point")]
    RigidCase(&'static str),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("missing data: {0}")]
    MissingData(&'static str),
    #[error("|f'(0)| = {0} is not below 1")]
    InvalidDerivative(f64),
    #[error("|g(z)| = {0} is not below 1")]
    NotASelfMapValue(f64),
    #[error("envelope frame is degenerate (|K| = {0:e})")]
    DegenerateFrame(f64),
    #[error("no sign change bracketing t_theta (eta = {eta}, theta = {theta})")]
    SolverBracketFailure { eta: num_complex::Complex64, theta: f64 },
    #[error("traced boundary is not convex (defect {0:e})")]
    ConvexityViolation(f64),
    #[error("resolution {got} is below the minimum {min}")]
    ResolutionTooSmall { got: usize, min: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
