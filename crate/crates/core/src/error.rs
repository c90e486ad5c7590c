use thiserror::Error;

use crate::qstate::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state: {}", join(.0))]
    InvalidState(Vec<Diagnostic>),

    #[error("complex coherence: entry ({row}, {col}) has imaginary part {imag:e}")]
    ComplexCoherence { row: usize, col: usize, imag: f64 },

    #[error("non-X reduction: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NonXReduction { row: usize, col: usize, magnitude: f64 },

    #[error("expected a {expected}x{expected} state, got {actual}x{actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("coefficient out of range: log argument {term} = {value:e}")]
    CoefficientOutOfRange { term: &'static str, value: f64 },

    #[error("domain error: {name} must be positive and finite, got {value}")]
    Domain { name: &'static str, value: f64 },

    #[error("bracket failure: no sign change of {quantity} for T/omega in [{lo:e}, {hi:e}]")]
    BracketFailure { quantity: &'static str, lo: f64, hi: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("eigen solver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl serde::Serialize for Error {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
