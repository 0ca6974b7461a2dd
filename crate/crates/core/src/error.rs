use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{quantity} out of domain: {value}")]
    Domain { quantity: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("singular denominator in the {0} steady-state amplitude")]
    Singular(&'static str),

    #[error("steady-state fixed point did not converge after {iterations} iterations (last relative change {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("drift matrix is unstable (max Re λ = {max_real_part:e})")]
    Unstable { max_real_part: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid sweep: {0}")]
    Sweep(String),
}
