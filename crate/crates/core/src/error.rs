use thiserror::Error;

/// Errors raised while building or evaluating a scenario.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid probability {0}: must lie in [0, 1]")]
    InvalidProbability(f64),

    #[error("unnormalized distribution: sum of squared amplitudes is {0}")]
    UnnormalizedDistribution(f64),

    #[error(
        "invalid amplitude {value} at index {index}: amplitudes must be finite and non-negative"
    )]
    InvalidAmplitude { index: usize, value: f64 },

    #[error("empty distribution: at least one amplitude is required")]
    EmptyDistribution,

    #[error("binomial state needs M >= 1")]
    InvalidBinomialSize,

    #[error("invalid coupling {name} = {value}: {reason}")]
    InvalidCoupling {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("empty time grid: need t_end > t_start >= 0 and at least 2 points (got [{t_start}, {t_end}] with {points} points)")]
    EmptyTimeGrid {
        t_start: f64,
        t_end: f64,
        points: usize,
    },

    #[error("time series must be strictly increasing in t")]
    NonIncreasingTime,

    #[error("time series has {times} times but {values} values")]
    LengthMismatch { times: usize, values: usize },

    #[error("excitation index {0} is below -1")]
    InvalidExcitationIndex(i64),

    #[error("negative discriminant D^2 = {0} at excitation index {1}")]
    NegativeDiscriminant(f64, i64),

    #[error("oscillator truncation n_max = {n_max} is too small: need at least {required}")]
    TruncationTooSmall { n_max: usize, required: usize },

    #[error("matrix dimensions do not match: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("Hamiltonian is not Hermitian (asymmetry {0:e})")]
    NonHermitian(f64),

    #[error("no samples inside the requested window")]
    WindowEmpty,

    #[error("time grid is not uniform")]
    NonuniformGrid,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
