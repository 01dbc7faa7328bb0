use thiserror::Error;

pub type Result<T, E = FsmError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum FsmError {
    #[error("point {x} lies outside the interval [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("derivative order {0} is not supported (maximum total order is 2)")]
    DerivativeOrder(usize),

    #[error("invalid source model: {0}")]
    InvalidSource(String),

    #[error("quadrature did not converge after the maximum number of refinements (estimated error {estimate:.3e})")]
    QuadratureNonConvergence { estimate: f64 },

    #[error("source model cannot be interpolated pointwise: {0}")]
    UnsupportedInterpolation(&'static str),

    #[error("resonant Fourier mode (m = {m}, n = {n}): the mode block of the operator is singular")]
    ResonantMode { m: usize, n: usize },

    #[error("source has a nonzero mean component ({mean:.6e}) but Pe*Da = 0, so the mean mode is singular")]
    SingularMeanMode { mean: f64 },

    #[error("ill-conditioned {what}: condition estimate {cond:.3e}")]
    IllConditioned { what: &'static str, cond: f64 },

    #[error("rank-deficient boundary assembly: numerical rank {rank} of {cols} unknowns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("finite-difference grid too coarse for central differencing: need at least {required} nodes per axis (have {have})")]
    FdStability { required: usize, have: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl FsmError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        FsmError::Config(msg.into())
    }
}
