//! Error taxonomy shared by the library.
//!
//! Variants map onto the CLI exit codes: validation failures (2), numerical stage
//! failures (3), configuration / I/O problems (4).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the analytic domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// The 2×2 boundary system is singular (λ is a bound state).
    #[error("singular boundary system at λ = {0}")]
    SingularSystem(num_complex::Complex<f64>),

    /// Exceptional point where a scattering-function denominator vanishes.
    #[error("division by zero in {what} at λ = {lambda}")]
    DivisionByZero {
        what: &'static str,
        lambda: num_complex::Complex<f64>,
    },

    /// Requested eigenfunction at a point that is not a bound state.
    #[error("not a bound state: |b(λ)| = {b_abs:.3e} at λ = {lambda}")]
    NotABoundState {
        lambda: num_complex::Complex<f64>,
        b_abs: f64,
    },

    /// Scattering-data validation failed; the report lists every violated relation.
    #[error("scattering data validation failed:\n{0}")]
    Validation(String),

    /// Cauchy-kernel evaluation requested inside the contour guard band.
    #[error("evaluation point {0} is too close to the contour")]
    TooCloseToContour(num_complex::Complex<f64>),

    /// Winding of a boundary coefficient does not close; rational modification missing.
    #[error("nonzero index on line {line}: total unwrapped phase {phase:.3e}")]
    IndexNonZero { line: usize, phase: f64 },

    /// θ frame placed on the contour.
    #[error("θ point {0} lies on the contour")]
    ThetaOnContour(num_complex::Complex<f64>),

    /// M(0) too small to define α.
    #[error("degenerate M: |M(0)| = {0:.3e}")]
    DegenerateM(f64),

    /// Recovered N(λ) negative beyond tolerance.
    #[error("N(λ) negative beyond tolerance: N({lambda}) = {value:.3e}")]
    NegativeN { lambda: f64, value: f64 },

    /// Analytic-continuation fit residual above the gate.
    #[error("continuation unstable: fit residual {0:.3e}")]
    ContinuationUnstable(f64),

    /// Wedge Dirichlet stage failed to reproduce its own boundary data.
    #[error("wedge solve failed: boundary residual {0:.3e}")]
    WedgeSolveFail(f64),

    /// Inverse Laplace transform diagnostics exceeded tolerance.
    #[error("inverse Laplace unstable: {0}")]
    LaplaceInversionUnstable(String),

    /// Tail of the recovered potential carries negative energy (oscillating artifact).
    #[error("negative tail energy in recovered potential: {0:.3e}")]
    NegativeTailEnergy(f64),

    /// Root bracketing failed.
    #[error("root bracketing failed on [{lo}, {hi}]: {msg}")]
    Bracketing { lo: f64, hi: f64, msg: String },

    /// Bad run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// CLI exit code classification.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 2,
            Error::Config(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 4,
            _ => 3,
        }
    }
}
