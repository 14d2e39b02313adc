use thiserror::Error;

/// Errors surfaced by state constructors and propagators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("truncated basis too small: discarded probability mass {lost:e} exceeds tail tolerance {tol:e}")]
    TruncationTooSmall { lost: f64, tol: f64 },
    #[error("top-hat window [{lo}, {hi}] exits the Fock basis range [0, {n_max}]")]
    WindowOutOfRange { lo: i64, hi: i64, n_max: usize },
    #[error("state has fewer than 2 consecutive nonzero amplitudes; relative phase undefined")]
    DegenerateState,
    #[error("operation requires resonance: omega = {omega}, omega_a = {omega_a}")]
    NotResonant { omega: f64, omega_a: f64 },
    #[error("field has zero mean photon number; attractor time undefined")]
    VacuumField,
    #[error("cat basis states are not near-orthogonal: |overlap| = {overlap}")]
    BasisNotOrthogonal { overlap: f64 },
    #[error("basis mismatch: states live on different Fock truncations ({left} vs {right})")]
    BasisMismatch { left: usize, right: usize },
    #[error("amplitudes do not form a normalizable state")]
    ZeroNorm,
}

pub type Result<V> = std::result::Result<V, Error>;
