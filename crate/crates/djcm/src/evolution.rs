//! Bell-superposition initial states and their exact evolution.
//!
//! Inside a block the interaction splits into two commuting single-flip
//! terms, so the propagator factorizes into two 2x2 rotations. That product
//! form serves as an independent oracle for the spectral propagator built
//! from the numeric diagonalization.

use num_complex::Complex64;

use crate::error::DjcmError;
use crate::model::{block_spectrum, BlockHamiltonian, BlockIndex, Scenario};
use crate::{CMat4, CVec4};

const NORM_TOL: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Bell-basis weights of the initial state.
///
/// Scenario-I states live on the (Phi+, Psi+) pair (`c00`, `c01`);
/// Scenario-II states on the (Phi-, Psi-) pair (`c10`, `c11`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialAmplitudes {
    pub c00: Complex64,
    pub c01: Complex64,
    pub c10: Complex64,
    pub c11: Complex64,
}

impl InitialAmplitudes {
    pub fn new(
        c00: Complex64,
        c01: Complex64,
        c10: Complex64,
        c11: Complex64,
    ) -> Result<Self, DjcmError> {
        let norm_sq = c00.norm_sqr() + c01.norm_sqr() + c10.norm_sqr() + c11.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(DjcmError::NotNormalized((norm_sq.sqrt() - 1.0).abs()));
        }
        Ok(Self { c00, c01, c10, c11 })
    }

    pub fn scenario_i(c00: Complex64, c01: Complex64) -> Result<Self, DjcmError> {
        Self::new(c00, c01, c(0.0), c(0.0))
    }

    pub fn scenario_ii(c10: Complex64, c11: Complex64) -> Result<Self, DjcmError> {
        Self::new(c(0.0), c(0.0), c10, c11)
    }

    /// `(cos theta, sin theta)` on the scenario's Bell pair.
    pub fn from_theta(scenario: Scenario, theta: f64) -> Self {
        let (cs, sn) = (c(theta.cos()), c(theta.sin()));
        match scenario {
            Scenario::I => Self { c00: cs, c01: sn, c10: c(0.0), c11: c(0.0) },
            Scenario::II => Self { c00: c(0.0), c01: c(0.0), c10: cs, c11: sn },
        }
    }

    pub fn validate_for(&self, scenario: Scenario) -> Result<(), DjcmError> {
        let (off_a, off_b, name) = match scenario {
            Scenario::I => (self.c10, self.c11, "I"),
            Scenario::II => (self.c00, self.c01, "II"),
        };
        if off_a.norm() > NORM_TOL || off_b.norm() > NORM_TOL {
            return Err(DjcmError::ScenarioMismatch {
                scenario: name,
                reason: "amplitudes on the other Bell pair must vanish".into(),
            });
        }
        Ok(())
    }

    /// The pair of amplitudes active in the given scenario, ordered
    /// (Phi-type, Psi-type).
    pub fn active_pair(&self, scenario: Scenario) -> (Complex64, Complex64) {
        match scenario {
            Scenario::I => (self.c00, self.c01),
            Scenario::II => (self.c10, self.c11),
        }
    }
}

/// Four complex amplitudes over the ordered block basis e1..e4.
#[derive(Debug, Clone, Copy)]
pub struct BlockState {
    pub amplitudes: CVec4,
    pub block: BlockIndex,
    pub time: f64,
}

impl BlockState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Time-dependent Bell-pair weights, (Phi-type, Psi-type).
#[derive(Debug, Clone, Copy)]
pub struct BellAmplitudes {
    pub cbar_phi: Complex64,
    pub cbar_psi: Complex64,
}

/// 4x4 Hermitian matrix over the bare block components, with elements as
/// printed in the source model: `rho_ij = conj(psi_i) * psi_j` for the
/// unnormalized Bell vector `(cbar_phi, cbar_psi, cbar_psi, cbar_phi)`.
/// Its trace is twice the Bell-pair weight of the input.
#[derive(Debug, Clone, Copy)]
pub struct BellDensityMatrix {
    pub rho: CMat4,
}

/// Projects the scenario's Bell superposition onto one `(n_A, n_B)` block.
///
/// Scenario-I gives `(c01, c00, c00, c01)/sqrt(2)` over e1..e4; Scenario-II
/// gives `(c11, c10, -c10, -c11)/sqrt(2)`.
pub fn initial_block_state(
    scenario: Scenario,
    amps: &InitialAmplitudes,
    block: BlockIndex,
) -> Result<BlockState, DjcmError> {
    amps.validate_for(scenario)?;
    let r = c(std::f64::consts::FRAC_1_SQRT_2);
    let amplitudes = match scenario {
        Scenario::I => [amps.c01 * r, amps.c00 * r, amps.c00 * r, amps.c01 * r],
        Scenario::II => [amps.c11 * r, amps.c10 * r, -amps.c10 * r, -amps.c11 * r],
    };
    Ok(BlockState { amplitudes, block, time: 0.0 })
}

fn apply(u: &CMat4, v: &CVec4) -> CVec4 {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for i in 0..4 {
        for k in 0..4 {
            out[i] += u[i][k] * v[k];
        }
    }
    out
}

/// Interaction-picture propagation by the spectral decomposition of the
/// block: `U = V exp(-i lambda t) V^t`.
pub fn propagate(
    state: &BlockState,
    h: &BlockHamiltonian,
    t: f64,
) -> Result<BlockState, DjcmError> {
    let spec = block_spectrum(h, false)?;
    let v = spec.eigenvectors;
    // project onto eigenbasis, phase, project back
    let mut coeffs = [Complex64::new(0.0, 0.0); 4];
    for k in 0..4 {
        for i in 0..4 {
            coeffs[k] += c(v[i][k]) * state.amplitudes[i];
        }
        coeffs[k] *= Complex64::new(0.0, -spec.eigenvalues[k] * t).exp();
    }
    let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
    for i in 0..4 {
        for k in 0..4 {
            amplitudes[i] += c(v[i][k]) * coeffs[k];
        }
    }
    Ok(BlockState { amplitudes, block: state.block, time: state.time + t })
}

/// Full-Hamiltonian propagation with an explicit free diagonal attached,
/// for auditing phase conventions. At zero detuning with the
/// excitation-conserving diagonal this differs from [`propagate`] only by a
/// global phase.
pub fn propagate_with_diagonal(
    state: &BlockState,
    h: &BlockHamiltonian,
    diagonal: &[f64; 4],
    t: f64,
) -> Result<BlockState, DjcmError> {
    let mut full = *h;
    for i in 0..4 {
        full.interaction[i][i] += diagonal[i];
    }
    propagate(state, &full, t)
}

/// Closed-form block propagator: the product of the two commuting
/// single-flip rotations, `[cos(W_A t/2) I - i sin(W_A t/2) X]` on the
/// A-flip slot times the analogous B factor, in the e1..e4 ordering.
pub fn propagator_product_form(omega_rabi_a: f64, omega_rabi_b: f64, t: f64) -> CMat4 {
    let (ca, sa) = ((0.5 * omega_rabi_a * t).cos(), (0.5 * omega_rabi_a * t).sin());
    let (cb, sb) = ((0.5 * omega_rabi_b * t).cos(), (0.5 * omega_rabi_b * t).sin());
    let ra = [[c(ca), Complex64::new(0.0, -sa)], [Complex64::new(0.0, -sa), c(ca)]];
    let rb = [[c(cb), Complex64::new(0.0, -sb)], [Complex64::new(0.0, -sb), c(cb)]];
    // e-index = 2*a + b, a = A-flip slot, b = B-flip slot
    let mut u = [[Complex64::new(0.0, 0.0); 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for ap in 0..2 {
                for bp in 0..2 {
                    u[2 * a + b][2 * ap + bp] = ra[a][ap] * rb[b][bp];
                }
            }
        }
    }
    u
}

/// Applies the product-form propagator to a state. Equivalent to
/// [`propagate`] on resonance; used as its independent oracle and as the
/// cheap path in ensemble sums.
pub fn propagate_product_form(state: &BlockState, h: &BlockHamiltonian, t: f64) -> BlockState {
    let u = propagator_product_form(h.omega_rabi_a, h.omega_rabi_b, t);
    BlockState {
        amplitudes: apply(&u, &state.amplitudes),
        block: state.block,
        time: state.time + t,
    }
}

/// Extracts the scenario's Bell-pair weights from an evolved block state:
/// `cbar_phi = (v2 +- v3)/sqrt(2)`, `cbar_psi = (v1 +- v4)/sqrt(2)` with the
/// upper signs for Scenario-I.
pub fn bell_components(state: &BlockState, scenario: Scenario) -> BellAmplitudes {
    let r = c(std::f64::consts::FRAC_1_SQRT_2);
    let [v1, v2, v3, v4] = state.amplitudes;
    match scenario {
        Scenario::I => BellAmplitudes { cbar_phi: (v2 + v3) * r, cbar_psi: (v1 + v4) * r },
        Scenario::II => BellAmplitudes { cbar_phi: (v2 - v3) * r, cbar_psi: (v1 - v4) * r },
    }
}

/// Closed-form Bell-pair amplitudes: a half-angle rotation at the summed
/// Rabi frequency,
/// `cbar_phi(t) = c_phi cos(S t/2) - i c_psi sin(S t/2)` with
/// `S = Omega_A + Omega_B`, and the same with the roles swapped for
/// `cbar_psi`. Scenario-II uses its own amplitude pair in the same form.
pub fn paper_amplitudes(
    amps: &InitialAmplitudes,
    scenario: Scenario,
    omega_rabi_a: f64,
    omega_rabi_b: f64,
    t: f64,
) -> BellAmplitudes {
    let (c_phi, c_psi) = amps.active_pair(scenario);
    let half = 0.5 * (omega_rabi_a + omega_rabi_b) * t;
    let (cs, sn) = (half.cos(), half.sin());
    BellAmplitudes {
        cbar_phi: c_phi * c(cs) - Complex64::new(0.0, 1.0) * c_psi * c(sn),
        cbar_psi: c_psi * c(cs) - Complex64::new(0.0, 1.0) * c_phi * c(sn),
    }
}

/// Assembles the Bell-basis density matrix element-by-element:
/// `rho_ij = conj(psi_i) psi_j` for `psi = (cbar_phi, cbar_psi, cbar_psi,
/// cbar_phi)`. Only the real parts of the initial amplitudes enter; the
/// printed form assumes real initial amplitudes.
pub fn paper_density_matrix(
    amps: &InitialAmplitudes,
    scenario: Scenario,
    omega_rabi_a: f64,
    omega_rabi_b: f64,
    t: f64,
) -> BellDensityMatrix {
    let (c_phi0, c_psi0) = amps.active_pair(scenario);
    let real_amps = InitialAmplitudes {
        c00: c(c_phi0.re),
        c01: c(c_psi0.re),
        c10: c(0.0),
        c11: c(0.0),
    };
    let bell = paper_amplitudes(&real_amps, Scenario::I, omega_rabi_a, omega_rabi_b, t);
    let psi = [bell.cbar_phi, bell.cbar_psi, bell.cbar_psi, bell.cbar_phi];
    let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rho[i][j] = psi[i].conj() * psi[j];
        }
    }
    BellDensityMatrix { rho }
}
