//! The formula-audit report: hard numeric checks of everything the exact
//! pipeline relies on, plus informational residuals for the printed
//! dressed-transformation formulas.
//!
//! All sweeps use fixed deterministic parameter grids so repeated runs
//! produce byte-identical reports.

use num_complex::Complex64;
use serde::Serialize;

use djcm::dressed::{build_transform, consistency_residual, numeric_diagonalizer, paper_angles};
use djcm::evolution::{
    bell_components, initial_block_state, paper_amplitudes, paper_density_matrix, propagate,
    propagator_product_form, InitialAmplitudes,
};
use djcm::measure::{inversion_exact, inversion_paper};
use djcm::model::{
    block_spectrum, free_diagonal, interaction_block, BlockIndex, DiagonalConvention, Scenario,
    SystemParams,
};

use crate::config::CliError;

const HARD_TOL: f64 = 1e-12;

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub value: f64,
    pub threshold: Option<f64>,
    pub status: String,
}

impl CheckRecord {
    fn hard(name: &str, inputs: &str, value: f64) -> Self {
        let status = if value <= HARD_TOL { "pass" } else { "fail" };
        CheckRecord {
            name: name.into(),
            inputs: inputs.into(),
            value,
            threshold: Some(HARD_TOL),
            status: status.into(),
        }
    }

    fn informational(name: &str, inputs: &str, value: f64) -> Self {
        CheckRecord {
            name: name.into(),
            inputs: inputs.into(),
            value,
            threshold: None,
            status: "informational".into(),
        }
    }
}

fn coupling_grid() -> Vec<(f64, f64)> {
    let gs = [0.25, 0.7, 1.0, 1.9, 3.3, 5.0];
    let mut out = Vec::new();
    for &ga in &gs {
        for &gb in &gs {
            out.push((ga, gb));
        }
    }
    out
}

fn fock_grid() -> Vec<(u32, u32)> {
    let ns = [0, 1, 2, 7, 23, 50];
    let mut out = Vec::new();
    for &na in &ns {
        for &nb in &ns {
            out.push((na, nb));
        }
    }
    out
}

fn theta_grid() -> Vec<f64> {
    vec![0.0, 0.19, std::f64::consts::FRAC_PI_6, std::f64::consts::FRAC_PI_4, 1.1, 1.5]
}

fn time_samples() -> Vec<f64> {
    vec![0.0, 0.37, 1.0, 2.9, 7.13, 19.4, 55.5, 100.0]
}

fn params(g_a: f64, g_b: f64, scenario: Scenario) -> SystemParams {
    SystemParams::resonant(1.0, 1.0, g_a, g_b, scenario).unwrap()
}

fn eigenvalue_pattern_check() -> Result<CheckRecord, CliError> {
    let mut worst = 0.0f64;
    for &(ga, gb) in &coupling_grid() {
        for &(na, nb) in &fock_grid() {
            let h = interaction_block(&params(ga, gb, Scenario::I), BlockIndex::new(na, nb));
            let spec = block_spectrum(&h, false)?;
            let sum = 0.5 * (h.omega_rabi_a + h.omega_rabi_b);
            let diff = 0.5 * (h.omega_rabi_a - h.omega_rabi_b).abs();
            for (lam, want) in spec.eigenvalues.iter().zip([-sum, -diff, diff, sum]) {
                worst = worst.max((lam - want).abs());
            }
        }
    }
    Ok(CheckRecord::hard(
        "eigenvalue_pattern",
        "g in {0.25..5} x Fock in {0..50}, eigenvalues vs {+-(W_A+-W_B)/2}",
        worst,
    ))
}

fn product_form_oracle_check() -> Result<CheckRecord, CliError> {
    let mut worst = 0.0f64;
    for &(ga, gb) in &coupling_grid() {
        let h = interaction_block(&params(ga, gb, Scenario::I), BlockIndex::new(0, 0));
        for &t in &time_samples() {
            let u = propagator_product_form(h.omega_rabi_a, h.omega_rabi_b, t);
            for k in 0..4 {
                let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
                amplitudes[k] = Complex64::new(1.0, 0.0);
                let s0 = djcm::evolution::BlockState {
                    amplitudes,
                    block: BlockIndex::new(0, 0),
                    time: 0.0,
                };
                let s1 = propagate(&s0, &h, t)?;
                for i in 0..4 {
                    worst = worst.max((s1.amplitudes[i] - u[i][k]).norm());
                }
            }
        }
    }
    Ok(CheckRecord::hard(
        "product_form_oracle",
        "spectral vs closed-form product propagator, entrywise",
        worst,
    ))
}

fn unitarity_checks() -> Result<(CheckRecord, CheckRecord), CliError> {
    let mut worst_norm = 0.0f64;
    let mut worst_group = 0.0f64;
    for &theta in &theta_grid() {
        let amps = InitialAmplitudes::from_theta(Scenario::I, theta);
        let h = interaction_block(&params(1.0, 1.0, Scenario::I), BlockIndex::new(0, 0));
        let s0 = initial_block_state(Scenario::I, &amps, BlockIndex::new(0, 0))?;
        for &t in &time_samples() {
            let s = propagate(&s0, &h, t)?;
            worst_norm = worst_norm.max((s.norm() - 1.0).abs());
            let t1 = 0.37 * t;
            let t2 = t - t1;
            let split = propagate(&propagate(&s0, &h, t1)?, &h, t2)?;
            for k in 0..4 {
                worst_group = worst_group.max((s.amplitudes[k] - split.amplitudes[k]).norm());
            }
        }
    }
    Ok((
        CheckRecord::hard("norm_conservation", "t in [0, 100/g]", worst_norm),
        CheckRecord::hard("group_property", "U(t1+t2) vs U(t2) U(t1), t in [0, 100/g]", worst_group),
    ))
}

fn bell_form_check() -> Result<CheckRecord, CliError> {
    let mut worst = 0.0f64;
    for &theta in &theta_grid() {
        for &(ga, gb) in &coupling_grid() {
            for scenario in [Scenario::I, Scenario::II] {
                let amps = InitialAmplitudes::from_theta(scenario, theta);
                let h = interaction_block(&params(ga, gb, scenario), BlockIndex::new(1, 2));
                let s0 = initial_block_state(scenario, &amps, BlockIndex::new(1, 2))?;
                let v = propagate(&s0, &h, 7.7)?.amplitudes;
                let (d1, d2) = match scenario {
                    Scenario::I => ((v[0] - v[3]).norm(), (v[1] - v[2]).norm()),
                    Scenario::II => ((v[0] + v[3]).norm(), (v[1] + v[2]).norm()),
                };
                worst = worst.max(d1).max(d2);
            }
        }
    }
    Ok(CheckRecord::hard(
        "bell_form_preservation",
        "(x,y,y,x) for Scenario-I, (x,y,-y,-x) for Scenario-II",
        worst,
    ))
}

fn analytic_vs_exact_check() -> Result<CheckRecord, CliError> {
    let mut worst = 0.0f64;
    for &theta in &theta_grid() {
        for &(ga, gb) in &coupling_grid() {
            let amps = InitialAmplitudes::from_theta(Scenario::I, theta);
            let h = interaction_block(&params(ga, gb, Scenario::I), BlockIndex::new(0, 0));
            let s0 = initial_block_state(Scenario::I, &amps, BlockIndex::new(0, 0))?;
            for &t in &time_samples() {
                let exact = bell_components(&propagate(&s0, &h, t)?, Scenario::I);
                let closed =
                    paper_amplitudes(&amps, Scenario::I, h.omega_rabi_a, h.omega_rabi_b, t);
                worst = worst.max((exact.cbar_phi - closed.cbar_phi).norm());
                worst = worst.max((exact.cbar_psi - closed.cbar_psi).norm());
            }
        }
    }
    Ok(CheckRecord::hard(
        "analytic_vs_exact_amplitudes",
        "half-angle closed form vs Bell components of exact evolution",
        worst,
    ))
}

fn density_matrix_check() -> CheckRecord {
    let mut worst = 0.0f64;
    for &theta in &theta_grid() {
        for &(ga, gb) in &coupling_grid() {
            let amps = InitialAmplitudes::from_theta(Scenario::I, theta);
            for &t in &time_samples() {
                let rho = paper_density_matrix(&amps, Scenario::I, ga, gb, t).rho;
                let b = paper_amplitudes(&amps, Scenario::I, ga, gb, t);
                let psi = [b.cbar_phi, b.cbar_psi, b.cbar_psi, b.cbar_phi];
                for i in 0..4 {
                    for j in 0..4 {
                        worst = worst.max((rho[i][j] - psi[i].conj() * psi[j]).norm());
                    }
                }
            }
        }
    }
    CheckRecord::hard(
        "density_matrix_outer_product",
        "printed element formulas vs outer product of closed-form state",
        worst,
    )
}

fn exact_inversion_theorem_check() -> Result<CheckRecord, CliError> {
    let mut worst = 0.0f64;
    for &theta in &theta_grid() {
        for &(ga, gb) in &coupling_grid() {
            for scenario in [Scenario::I, Scenario::II] {
                let amps = InitialAmplitudes::from_theta(scenario, theta);
                let h = interaction_block(&params(ga, gb, scenario), BlockIndex::new(2, 1));
                let s0 = initial_block_state(scenario, &amps, BlockIndex::new(2, 1))?;
                for &t in &time_samples() {
                    let w = inversion_exact(&propagate(&s0, &h, t)?);
                    worst = worst.max(w.w_a.abs()).max(w.w_b.abs());
                }
            }
        }
    }
    Ok(CheckRecord::hard(
        "exact_inversion_theorem",
        "partial-trace inversion along Bell-superposition trajectories; constant 0, unlike the \
         oscillating published figures, which follow the Bell-imbalance convention",
        worst,
    ))
}

fn scenario_mirror_check() -> CheckRecord {
    let mut worst = 0.0f64;
    for &theta in &theta_grid() {
        for &(ga, gb) in &coupling_grid() {
            let amps_i = InitialAmplitudes::from_theta(Scenario::I, theta);
            let amps_ii = InitialAmplitudes::from_theta(Scenario::II, theta);
            let h = interaction_block(&params(ga, gb, Scenario::I), BlockIndex::new(0, 0));
            for &t in &time_samples() {
                let wi = inversion_paper(&amps_i, Scenario::I, h.omega_rabi_a, h.omega_rabi_b, t);
                let wii =
                    inversion_paper(&amps_ii, Scenario::II, h.omega_rabi_a, h.omega_rabi_b, t);
                worst = worst.max((wi.w_a - wii.w_a).abs()).max((wi.w_b - wii.w_b).abs());
            }
        }
    }
    CheckRecord::hard(
        "scenario_ii_mirror",
        "paper-convention series under c10<->c00, c11<->c01",
        worst,
    )
}

fn numeric_diagonalizer_check() -> Result<CheckRecord, CliError> {
    let mut worst = 0.0f64;
    for &(ga, gb) in &coupling_grid() {
        for &(na, nb) in &fock_grid() {
            let h = interaction_block(&params(ga, gb, Scenario::I), BlockIndex::new(na, nb));
            let t = numeric_diagonalizer(&h)?;
            let (off, _) = consistency_residual(&t, &h);
            worst = worst.max(off).max(t.orthogonality_residual);
        }
    }
    Ok(CheckRecord::hard(
        "numeric_diagonalizer_consistency",
        "off-diagonal norm of T H T^t and orthogonality defect over all blocks",
        worst,
    ))
}

fn printed_transform_checks() -> (CheckRecord, CheckRecord) {
    let t = build_transform(&paper_angles());
    let h = interaction_block(&params(1.0, 1.0, Scenario::I), BlockIndex::new(0, 0));
    let (off, _) = consistency_residual(&t, &h);
    (
        CheckRecord::informational(
            "printed_transform_orthogonality",
            "published six-angle entries at the published angle values, ||T T^t - I||_F",
            t.orthogonality_residual,
        ),
        CheckRecord::informational(
            "printed_transform_consistency",
            "off-diagonal norm of T H T^t against the W_A = W_B = 1 interaction block",
            off,
        ),
    )
}

fn diagonal_convention_check() -> CheckRecord {
    // spread of the printed diagonal within the vacuum block; the
    // excitation-conserving convention is constant there
    let p = params(1.0, 1.0, Scenario::I);
    let printed = free_diagonal(&p, BlockIndex::new(0, 0), DiagonalConvention::PaperPrinted);
    let conserving =
        free_diagonal(&p, BlockIndex::new(0, 0), DiagonalConvention::ExcitationConserving);
    let mut max_diff = 0.0f64;
    for k in 0..4 {
        max_diff = max_diff.max((printed[k] - conserving[k]).abs());
    }
    CheckRecord::informational(
        "printed_vs_conserving_diagonal",
        "max element difference between the two diagonal conventions, vacuum block, w=1",
        max_diff,
    )
}

pub fn run_verify() -> Result<(Vec<CheckRecord>, bool), CliError> {
    let mut checks = Vec::new();
    checks.push(eigenvalue_pattern_check()?);
    checks.push(product_form_oracle_check()?);
    let (norm, group) = unitarity_checks()?;
    checks.push(norm);
    checks.push(group);
    checks.push(bell_form_check()?);
    checks.push(analytic_vs_exact_check()?);
    checks.push(density_matrix_check());
    checks.push(exact_inversion_theorem_check()?);
    checks.push(scenario_mirror_check());
    checks.push(numeric_diagonalizer_check()?);
    let (orth, cons) = printed_transform_checks();
    checks.push(orth);
    checks.push(cons);
    checks.push(diagonal_convention_check());
    let all_pass = checks.iter().all(|c| c.status != "fail");
    Ok((checks, all_pass))
}
