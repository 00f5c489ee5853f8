use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator `{label}` is not square: {rows} x {cols}")]
    NotSquare {
        label: String,
        rows: usize,
        cols: usize,
    },

    #[error("operator `{label}` is not symmetric at ({row}, {col})")]
    NotSymmetric {
        label: String,
        row: usize,
        col: usize,
    },

    #[error("operator `{label}` has a non-finite entry at ({row}, {col})")]
    NonFinite {
        label: String,
        row: usize,
        col: usize,
    },

    #[error("eigendecomposition of `{label}` did not converge within {iterations} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence {
        label: String,
        iterations: usize,
        residual: f64,
    },

    #[error("spectrum of `{label}` fails its {check} check: residual {residual:e} exceeds {limit:e}")]
    SpectralResidual {
        label: String,
        check: &'static str,
        residual: f64,
        limit: f64,
    },

    #[error("dimension mismatch: operator has dimension {operator}, state has dimension {state}")]
    DimensionMismatch { operator: usize, state: usize },

    #[error("state norm drifted by {drift:e} (limit {limit:e})")]
    NormDrift { drift: f64, limit: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid barbell: {0}")]
    InvalidBarbell(String),

    #[error("graph text, line {line}: {message}")]
    GraphFormat { line: usize, message: String },

    #[error("spin system of {n} spins exceeds the cap of {cap}")]
    TooManySpins { n: usize, cap: usize },

    #[error("Hamiltonian couples the single-excitation sector to other sectors (|H| = {leak:e} at row {row}, column {col})")]
    SectorLeak { leak: f64, row: usize, col: usize },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("peak window [{start}, {end}] contains no samples")]
    EmptyWindow { start: f64, end: f64 },

    #[error("root finding failed: {0}")]
    RootFinding(String),
}

impl Error {
    /// True for failures of the numerics themselves rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::SpectralResidual { .. }
                | Error::NormDrift { .. }
                | Error::SectorLeak { .. }
                | Error::RootFinding(_)
        )
    }
}
