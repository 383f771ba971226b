use thiserror::Error;

/// Errors raised by the library. Variant names are part of the CLI contract:
/// they are reported verbatim through [`Error::name`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("an irrational slope is required")]
    IrrationalRequired,
    #[error("no witness for exponent {p} among the first {depth} convergents")]
    NotFound { p: u32, depth: usize },
    #[error("obstructed: the mean coefficient is {value}, not zero")]
    Obstructed { value: String },
    #[error("resonant mode ({m}, {n}) carries a nonzero coefficient")]
    Resonant { m: String, n: String },
    #[error("slope is resonant: a small-divisor gap is exactly zero")]
    ResonantSlope,
    #[error("no Liouville evidence at exponent {p}")]
    NotLiouvilleEvidence { p: u32 },
    #[error("smoothness bound violated at p = {p}, t = {t}, a = {a}, j = {j}")]
    BoundViolated { p: u32, t: String, a: u32, j: u32 },
    #[error("invalid slope literal: {0}")]
    InvalidSlope(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::IrrationalRequired => "IrrationalRequired",
            Error::NotFound { .. } => "NotFound",
            Error::Obstructed { .. } => "Obstructed",
            Error::Resonant { .. } => "Resonant",
            Error::ResonantSlope => "ResonantSlope",
            Error::NotLiouvilleEvidence { .. } => "NotLiouvilleEvidence",
            Error::BoundViolated { .. } => "BoundViolated",
            Error::InvalidSlope(_) => "InvalidSlope",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Witness data of the error, for structured reports.
    pub fn data(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            Error::PrecisionExhausted(msg) | Error::InvalidSlope(msg) | Error::InvalidInput(msg) => {
                json!({ "message": msg })
            }
            Error::IrrationalRequired | Error::ResonantSlope => json!({}),
            Error::NotFound { p, depth } => json!({ "p": p, "depth": depth }),
            Error::Obstructed { value } => json!({ "value": value }),
            Error::Resonant { m, n } => json!({ "m": m, "n": n }),
            Error::NotLiouvilleEvidence { p } => json!({ "p": p }),
            Error::BoundViolated { p, t, a, j } => json!({ "p": p, "t": t, "a": a, "j": j }),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
