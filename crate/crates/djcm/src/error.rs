use thiserror::Error;

#[derive(Debug, Error)]
pub enum DjcmError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("the analytic pipeline requires zero detuning, got delta = {0}")]
    NonzeroDetuning(f64),

    #[error("amplitudes do not match scenario {scenario}: {reason}")]
    ScenarioMismatch { scenario: &'static str, reason: String },

    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("Jacobi eigensolver failed to converge: off-diagonal norm {offdiag:.3e} after {sweeps} sweeps")]
    EigenNonConvergence { offdiag: f64, sweeps: usize },

    #[error("Poisson cutoff {cutoff} leaves tail mass {tail:.3e} > 1e-10; use cutoff >= {suggested}")]
    CutoffTooSmall { cutoff: usize, tail: f64, suggested: usize },
}
