use thiserror::Error;

/// Errors surfaced by the numeric pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("jacobi parameters out of range: alpha = {alpha}, beta = {beta} (need both > -1)")]
    JacobiParams { alpha: f64, beta: f64 },

    #[error("argument {arg} = {value} out of range: {reason}")]
    OutOfRange {
        arg: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("integer argument {arg} = {value} out of range: {reason}")]
    BadInteger {
        arg: &'static str,
        value: i64,
        reason: &'static str,
    },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("Bessel series argument x = {x} outside accuracy envelope for nu = {nu} (x <= nu + 60)")]
    BesselRange { nu: f64, x: f64 },

    #[error("root refinement did not converge: {0}")]
    NoConvergence(&'static str),

    #[error("no sign-change bracket found for {0} (recurrence may be unstable; try another backend)")]
    BracketNotFound(&'static str),

    #[error("bracket unavailable: t = {t} below the smallest applicable zero")]
    BracketUnavailable { t: f64 },

    #[error("rational backend requires rational input: {0}")]
    IrrationalInput(&'static str),

    #[error("linear program {0}")]
    Lp(&'static str),

    #[error("Delsarte LP infeasible at degree {degree}: increase degree")]
    IncreaseDegree { degree: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
