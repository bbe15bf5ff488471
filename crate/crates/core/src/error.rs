//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// No parameter tuple within the search bound satisfies the invariants.
    #[error("no feasible (p, q, eps0, c) within search bound {bound} for a={a}, b={b}, s={s} ({mode} mode)")]
    Infeasible {
        a: f64,
        b: f64,
        s: f64,
        mode: &'static str,
        bound: u32,
    },

    /// A construction product would exceed the configured size cap.
    #[error("size overflow in {what}: {requested} exceeds cap {cap}")]
    SizeOverflow {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("word length {got} does not match pattern length {expected}")]
    LengthMismatch { expected: u64, got: u64 },

    #[error("segment length {len} is shorter than required {required}")]
    SegmentTooShort { len: u64, required: u64 },

    /// A segment does not cover the index range a metric or evaluation needs.
    #[error("segment does not cover required index range [{lo}, {hi}]")]
    CoverageError { lo: i64, hi: i64 },

    /// A segment does not cover the coefficient window requested for synthesis.
    #[error("segment does not cover coefficient window [{lo}, {hi}]")]
    WindowMismatch { lo: i64, hi: i64 },

    /// The kernel's continuum band would leave the admissible interval.
    #[error("kernel band [{band_lo}, {band_hi}] exceeds admissible [{lo}, {hi}]")]
    BandOverflow {
        band_lo: f64,
        band_hi: f64,
        lo: f64,
        hi: f64,
    },

    #[error("sample step {step} violates the Nyquist margin for max frequency {band_max} (need step < {limit})")]
    NyquistViolation {
        step: f64,
        band_max: f64,
        limit: f64,
    },

    /// The sampling theorem's hypothesis 2·a·d < 1 fails; the check refuses to run.
    #[error("sampling hypothesis violated: 2*{half_band}*{step} = {product} >= 1")]
    HypothesisViolation {
        half_band: f64,
        step: f64,
        product: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
