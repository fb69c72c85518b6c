use alloc::boxed::Box;
use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |H - H^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error(
        "Jacobi eigensolver did not converge for {dim}x{dim} matrix \
         (|H|_F = {norm:e}, off-diagonal = {off_diagonal:e}) after {sweeps} sweeps"
    )]
    NoConvergence {
        dim: usize,
        norm: f64,
        off_diagonal: f64,
        sweeps: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("malformed matrix: {len} entries do not form a square matrix")]
    NotSquare { len: usize },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("alpha = {alpha} overflows exp(alpha/s_c) for s_c = {s_c}; maximum admissible alpha is {max_alpha}")]
    AlphaOverflow { alpha: f64, s_c: f64, max_alpha: f64 },

    #[error("ground level is degenerate (gap = {gap:e})")]
    DegenerateGround { gap: f64 },

    #[error("non-finite {what} at t = {t}")]
    NonFinite { what: &'static str, t: f64 },

    #[error("schedule `{schedule}` cannot drive model `{model}`")]
    IncompatibleSchedule {
        schedule: &'static str,
        model: &'static str,
    },

    #[error("gap minimum lies on the boundary at s = {s} (gap = {gap}); no interior avoided crossing")]
    BoundaryMinimum { s: f64, gap: f64 },

    #[error("unknown {what} `{name}`")]
    UnknownName { what: &'static str, name: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{what} must be strictly ascending")]
    NotAscending { what: &'static str },

    #[error("evolution failed for schedule `{schedule}` at T = {total_time}: {source}")]
    Evolution {
        schedule: String,
        total_time: f64,
        source: Box<Error>,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if value.is_finite() && value >= min && value <= max {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}
