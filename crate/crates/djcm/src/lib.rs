//! Exact dynamics of the double Jaynes-Cummings model: two noninteracting
//! atom-cavity pairs prepared in superpositions of Bell states.
//!
//! The total Hamiltonian conserves the excitation number at each site, so the
//! dynamics closes in 4-dimensional blocks labeled by a pair of Fock quantum
//! numbers. Each block is diagonalized exactly and propagated in closed form;
//! no time stepping is involved.
//!
//! Modules:
//! - [`model`]: system parameters, block Hamiltonians, and their spectra.
//! - [`dressed`]: the six-angle orthogonal parameterization of the dressed
//!   transformation, its consistency audit, and a numeric diagonalizer.
//! - [`evolution`]: Bell-superposition initial states, exact propagation, and
//!   the closed-form Bell-basis amplitudes and density matrix.
//! - [`measure`]: reduced single-atom states and population inversion under
//!   two explicitly labeled conventions.
//! - [`ensemble`]: Poisson-weighted coherent-state ensembles and
//!   collapse/revival time extraction.

pub mod dressed;
pub mod eig;
pub mod ensemble;
pub mod error;
pub mod evolution;
pub mod measure;
pub mod model;

pub use error::DjcmError;
pub use model::{
    block_spectrum, free_diagonal, interaction_block, rabi_frequency, BlockHamiltonian,
    BlockIndex, DiagonalConvention, Scenario, Spectrum, SystemParams,
};

/// 4x4 real matrix, row-major.
pub type Mat4 = [[f64; 4]; 4];
/// 4x4 complex matrix, row-major.
pub type CMat4 = [[num_complex::Complex64; 4]; 4];
/// 4-component complex amplitude vector.
pub type CVec4 = [num_complex::Complex64; 4];

pub(crate) fn frobenius(m: &Mat4) -> f64 {
    m.iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub(crate) fn transpose(m: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[j][i];
        }
    }
    out
}
