//! Error type shared by all numerical kernels and family-specific code.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The integral provably grows without bound under interval doubling.
    #[error("integral diverges: doubled-interval contributions failed to decay geometrically")]
    Divergent,

    /// The evaluation budget was exhausted before reaching the requested tolerance.
    #[error(
        "tolerance not reached within the evaluation budget (best error estimate {best_error:e})"
    )]
    TolExceeded { best_error: f64 },

    /// The ODE step size collapsed without a blow-up signature.
    #[error("step size collapsed to {step:e} at t = {t} without a blow-up signature")]
    StepUnderflow { t: f64, step: f64 },

    /// A bracketing root solver was handed endpoints with the same sign.
    #[error("no sign change on [{lo}, {hi}]: g(lo) = {g_lo:e}, g(hi) = {g_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    /// The requested operation is not defined for this family.
    #[error("operation not supported for family {family}: {reason}")]
    UnsupportedFamily { family: String, reason: String },

    /// A parameter value lies outside the profile's domain.
    #[error("parameter {value} outside the domain (-{half_width}, {half_width})")]
    OutOfDomain { value: f64, half_width: f64 },

    /// The two potential recoveries (from v and from e) disagree beyond tolerance.
    #[error("potential recovery mismatch {mismatch:e} exceeds {tol:e} at s = {at}")]
    RecoveryMismatch { mismatch: f64, tol: f64, at: f64 },

    /// Two catenaries with equal neck parameter are the same curve.
    #[error("neck parameters coincide (a = {a}); the curves are identical")]
    IdenticalCurves { a: f64 },

    /// Invalid construction input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
