use thiserror::Error;

/// Errors surfaced by the library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A function evaluated to a non-finite value at a named point.
    #[error("function `{label}` evaluated to a non-finite value at x = {x}")]
    Eval { label: String, x: f64 },

    /// A parameter was outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The spectral parameter lies at or below the growth bound of the
    /// integrated family, so the Laplace integral does not converge.
    #[error("spectral parameter error: lambda = {lambda} does not exceed the growth bound {omega}")]
    Spectral { lambda: f64, omega: f64 },

    /// An extrapolation operation needs an invertible generator but the
    /// effective growth bound omega - sigma is not negative.
    #[error("shift required: effective growth bound {omega_eff} is not negative; set sigma > omega")]
    ShiftRequired { omega_eff: f64 },

    /// Extrapolated vectors from differently shifted families were mixed.
    #[error("shift mismatch: vector built for `{expected}` used with `{found}`")]
    ShiftMismatch { expected: String, found: String },

    /// A required argument was missing or empty.
    #[error("argument error: {0}")]
    Argument(String),

    /// An unknown function or semigroup label.
    #[error("unknown label `{label}` in {field}")]
    UnknownLabel { label: String, field: String },

    /// The classification chain produced a non-monotone verdict vector.
    #[error("inconsistent classification chain for `{function}`: {details}")]
    ChainInconsistent { function: String, details: String },
}

pub type Result<T> = std::result::Result<T, Error>;
