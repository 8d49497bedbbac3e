use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("time shift {shift} pushes the effective support [{lo}, {hi}] outside the grid extent {extent}")]
    ShiftExceedsGrid { shift: f64, lo: f64, hi: f64, extent: f64 },

    #[error("dilation by {factor} pushes the effective support outside the grid extent {extent}")]
    DilationExceedsGrid { factor: f64, extent: f64 },

    #[error("fractional Fourier angle {angle} is too close to a multiple of pi for the quadrature kernel")]
    SingularAngle { angle: f64 },

    #[error("Hermite expansion with {terms} terms leaves relative energy {residual:e} unresolved")]
    TruncationTooCoarse { terms: usize, residual: f64 },

    #[error("matrix with determinant {det} cannot be factored as rotation * chirp * dilation")]
    NotUnimodular { det: f64 },

    #[error("generator lattice is not a sublattice of the target lattice: {0}")]
    NotASublattice(String),

    #[error("singular matrix (determinant {det})")]
    SingularMatrix { det: f64 },

    #[error("cannot certify decay of window: {0}")]
    UnboundedWindow(String),

    #[error("no Fourier transform available for window: {0}")]
    PoissonUnavailable(String),

    #[error("point set cannot be reduced to a union of cosets of the integer lattice: {0}")]
    IrreducibleSet(String),

    #[error("window is not evaluable in closed form: {0}")]
    NotClosedForm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
