use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter fell outside its validated domain.
    #[error("parameter `{name}` = {value} violates {constraint}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The requested Fock cutoff cannot hold the state to the requested
    /// tail tolerance.
    #[error(
        "fock cutoff n_max = {n_max} leaves truncation tail {tail:.3e} > tolerance {tol:.3e}"
    )]
    CutoffTooSmall { n_max: usize, tail: f64, tol: f64 },

    /// Probability leaked past the truncated basis beyond tolerance while
    /// building a heralded resource.
    #[error("truncation overflow: {leaked:.3e} of probability lies past n_max = {n_max} (tolerance {tol:.3e})")]
    TruncationOverflow { n_max: usize, leaked: f64, tol: f64 },

    /// The characteristic-function quadrature did not settle within its
    /// doubling budget.
    #[error(
        "quadrature did not converge: best value {value:.12e}, error estimate {estimate:.3e} > {tol:.3e}"
    )]
    QuadratureNonConvergence { value: f64, estimate: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::InvalidParam {
            name,
            value,
            constraint,
        }
    }
}
