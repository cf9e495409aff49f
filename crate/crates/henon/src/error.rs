/// Error type shared by all modules.
///
/// Numeric payloads are carried as `f64` regardless of the scalar the
/// computation ran in; they exist for diagnostics, not further arithmetic.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension N must be >= 3, got {0}")]
    DimensionTooSmall(u32),

    #[error("alpha must be >= 0, got {0}")]
    NegativeAlpha(f64),

    #[error("harmonic multiplicity out of supported range: N + k = {0} > 60")]
    MultiplicityRange(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("grid too coarse: {nodes} nodes where at least {required} are needed")]
    GridTooCoarse { nodes: usize, required: usize },

    #[error("eigenvalue bisection failed to converge after {0} iterations")]
    BisectionStalled(usize),

    #[error("inverse iteration produced a degenerate eigenvector")]
    InverseIterationFailed,

    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e}")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64 },

    #[error("quotient of the zero function is undefined")]
    ZeroFunction,

    #[error("decay window contains a zero value at r = {0}")]
    ZeroInWindow(f64),

    #[error("decay window mixes signs; the log-log fit is undefined")]
    MixedSignsInWindow,

    #[error("decay window [{lo}, {hi}] contains fewer than two grid nodes")]
    WindowTooNarrow { lo: f64, hi: f64 },

    #[error("nonpositive denominator {value} at (s, t) = ({s}, {t})")]
    NonpositiveDenominator { value: f64, s: f64, t: f64 },

    #[error("exponent p = {p} outside the admissible range (1, {sup})")]
    ExponentRange { p: f64, sup: f64 },

    #[error("no zero crossing of the shooting solution before s = {0:e}")]
    NoZeroCrossing(f64),

    #[error("no sign change of the residual in the maximal bracket ({lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("residual is not strictly decreasing across the bracket near alpha = {0}")]
    NotDecreasing(f64),

    #[error("root finder stalled: bracket [{lo}, {hi}], residual {residual:e}")]
    RootStalled { lo: f64, hi: f64, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
