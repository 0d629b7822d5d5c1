use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} oscillators")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid resonance {p}:{q}: {reason}")]
    InvalidResonance { p: u32, q: u32, reason: String },

    #[error("invalid oscillator count n = {0} (need n >= 2)")]
    InvalidDimension(usize),

    #[error("invalid frequencies: {0}")]
    InvalidFrequencies(String),

    #[error("energy h0 = {h0} is below the admissible threshold {threshold}")]
    InfeasibleEnergy { h0: f64, threshold: f64 },

    #[error("at least {min} samples are required, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("duplicate term: {0}")]
    DuplicateTerm(String),

    #[error("no basis states carry label {0:?} under the given caps")]
    EmptyBlock(Vec<i64>),
}

pub type Result<T> = std::result::Result<T, Error>;
