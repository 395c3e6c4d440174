//! System parameters and per-block Hamiltonians.
//!
//! The double Jaynes-Cummings Hamiltonian conserves the excitation number
//! `N_i = n_i + (atom excited)` at each site, so the dynamics closes in
//! 4-dimensional sectors labeled by a Fock pair `(n_A, n_B)`. The fixed basis
//! ordering inside a block is
//!
//! ```text
//! e1 = |0_A 0_B; n_A+1, n_B+1>
//! e2 = |0_A 1_B; n_A+1, n_B  >
//! e3 = |1_A 0_B; n_A,   n_B+1>
//! e4 = |1_A 1_B; n_A,   n_B  >
//! ```
//!
//! Units are hbar = 1; all frequencies are angular.

use crate::eig::{jacobi_eigh, SymEig};
use crate::error::DjcmError;
use crate::Mat4;

/// Which Bell pair the initial state is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Superposition of Phi+ and Psi+.
    I,
    /// Superposition of Phi- and Psi-.
    II,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scenario::I => write!(f, "I"),
            Scenario::II => write!(f, "II"),
        }
    }
}

/// Physical constants of the two sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega_a: f64,
    pub omega_b: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub delta: f64,
    pub scenario: Scenario,
}

impl SystemParams {
    pub fn new(
        omega_a: f64,
        omega_b: f64,
        g_a: f64,
        g_b: f64,
        delta: f64,
        scenario: Scenario,
    ) -> Result<Self, DjcmError> {
        if !(omega_a > 0.0) || !(omega_b > 0.0) {
            return Err(DjcmError::InvalidParams(format!(
                "mode frequencies must be positive, got omega_A = {omega_a}, omega_B = {omega_b}"
            )));
        }
        if !(g_a >= 0.0) || !(g_b >= 0.0) {
            return Err(DjcmError::InvalidParams(format!(
                "couplings must be nonnegative, got g_A = {g_a}, g_B = {g_b}"
            )));
        }
        if !delta.is_finite() {
            return Err(DjcmError::InvalidParams(format!("detuning must be finite, got {delta}")));
        }
        Ok(Self { omega_a, omega_b, g_a, g_b, delta, scenario })
    }

    /// Constructor for the analytic (closed-form) pipeline, which is only
    /// valid on resonance.
    pub fn resonant(
        omega_a: f64,
        omega_b: f64,
        g_a: f64,
        g_b: f64,
        scenario: Scenario,
    ) -> Result<Self, DjcmError> {
        Self::new(omega_a, omega_b, g_a, g_b, 0.0, scenario)
    }

    /// Rejects nonzero detuning; the closed-form propagator and the paper's
    /// analytic amplitudes assume resonance.
    pub fn require_resonant(&self) -> Result<(), DjcmError> {
        if self.delta != 0.0 {
            return Err(DjcmError::NonzeroDetuning(self.delta));
        }
        Ok(())
    }
}

/// Fock pair labeling an excitation-conserving 4-dimensional sector.
///
/// The per-site excitation numbers of the block are `N_A = n_a + 1` and
/// `N_B = n_b + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockIndex {
    pub n_a: u32,
    pub n_b: u32,
}

impl BlockIndex {
    pub fn new(n_a: u32, n_b: u32) -> Self {
        Self { n_a, n_b }
    }
}

/// Which free-Hamiltonian diagonal to attach to a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalConvention {
    /// The four diagonal elements exactly as printed in the source model,
    /// which are not constant within a block even on resonance. Kept for
    /// auditing.
    PaperPrinted,
    /// `N_A w_A + N_B w_B + (delta/2) * (sigma_z^A + sigma_z^B)` per basis
    /// state; constant across the block at zero detuning, so it contributes
    /// only a global phase there.
    ExcitationConserving,
}

impl std::fmt::Display for DiagonalConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagonalConvention::PaperPrinted => write!(f, "paper_printed"),
            DiagonalConvention::ExcitationConserving => write!(f, "excitation_conserving"),
        }
    }
}

/// One excitation-conserving sector of the full Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct BlockHamiltonian {
    /// Symmetric coupling part; nonzero only at the single-flip positions.
    pub interaction: Mat4,
    /// Free diagonal in the `ExcitationConserving` convention.
    pub diagonal: [f64; 4],
    pub omega_rabi_a: f64,
    pub omega_rabi_b: f64,
    /// `(n_A + 1/2) w_A + (n_B + 1/2) w_B`, the block's free energy offset.
    pub free_offset: f64,
}

/// Spectrum of a block, eigenvalues ascending, eigenvectors as columns.
#[derive(Debug, Clone, Copy)]
pub struct Spectrum {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: Mat4,
    pub free_offset: f64,
}

/// Rabi frequency `g * sqrt(n + 1)` of one site in the `n`-photon block.
pub fn rabi_frequency(g: f64, n: u32) -> f64 {
    g * ((n as f64) + 1.0).sqrt()
}

/// Builds the 4x4 block Hamiltonian for the sector `(n_A, n_B)`.
///
/// The interaction part couples e1-e2, e3-e4 with `Omega_B/2` (a B-side flip)
/// and e1-e3, e2-e4 with `Omega_A/2` (an A-side flip); equivalently it is
/// `Omega_A/2 (X (x) I) + Omega_B/2 (I (x) X)` in the e1..e4 ordering.
pub fn interaction_block(params: &SystemParams, block: BlockIndex) -> BlockHamiltonian {
    let om_a = rabi_frequency(params.g_a, block.n_a);
    let om_b = rabi_frequency(params.g_b, block.n_b);
    let ha = 0.5 * om_a;
    let hb = 0.5 * om_b;
    let interaction = [
        [0.0, hb, ha, 0.0],
        [hb, 0.0, 0.0, ha],
        [ha, 0.0, 0.0, hb],
        [0.0, ha, hb, 0.0],
    ];
    BlockHamiltonian {
        interaction,
        diagonal: free_diagonal(params, block, DiagonalConvention::ExcitationConserving),
        omega_rabi_a: om_a,
        omega_rabi_b: om_b,
        free_offset: ((block.n_a as f64) + 0.5) * params.omega_a
            + ((block.n_b as f64) + 0.5) * params.omega_b,
    }
}

/// Free-Hamiltonian diagonal of a block under the requested convention.
pub fn free_diagonal(
    params: &SystemParams,
    block: BlockIndex,
    convention: DiagonalConvention,
) -> [f64; 4] {
    let na = block.n_a as f64;
    let nb = block.n_b as f64;
    let (wa, wb) = (params.omega_a, params.omega_b);
    match convention {
        DiagonalConvention::PaperPrinted => [
            na * wa + nb * wb + (1.0 + na) * wa + (1.0 + nb) * wb,
            (1.0 + na) * wa + nb * wb,
            na * wa + (1.0 + nb) * wb,
            na * wa + nb * wb,
        ],
        DiagonalConvention::ExcitationConserving => {
            let base = (na + 1.0) * wa + (nb + 1.0) * wb;
            // sigma_z sums over (atom_A, atom_B) for e1..e4: -2, 0, 0, +2.
            [
                base - params.delta,
                base,
                base,
                base + params.delta,
            ]
        }
    }
}

/// Diagonalizes the block, optionally including its free diagonal.
///
/// Without the diagonal the eigenvalues are the interaction spectrum
/// `{+-(Omega_A +- Omega_B)/2}`; the solver computes them numerically rather
/// than assuming that pattern.
pub fn block_spectrum(h: &BlockHamiltonian, include_diagonal: bool) -> Result<Spectrum, DjcmError> {
    let mut m = h.interaction;
    if include_diagonal {
        for i in 0..4 {
            m[i][i] += h.diagonal[i];
        }
    }
    let SymEig { eigenvalues, vectors } = jacobi_eigh(&m)?;
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
        free_offset: h.free_offset,
    })
}
