//! Poisson-weighted photon-number ensembles for coherent-state preparations,
//! and extraction of collapse and revival times from the resulting inversion
//! series.
//!
//! The coherent amplitude printed in the source model,
//! `e^{-|alpha|^2} alpha^n / sqrt(n!)`, is not normalized; the weights used
//! here are the Poisson probabilities `p_n = e^{-|alpha|^2} |alpha|^{2n} / n!`
//! renormalized after truncation.

use crate::error::DjcmError;
use crate::evolution::{initial_block_state, propagate_product_form, InitialAmplitudes};
use crate::measure::{inversion_exact, inversion_paper, InversionConvention};
use crate::model::{interaction_block, BlockIndex, SystemParams};

const TAIL_TOL: f64 = 1e-10;

/// How the two cavities' photon numbers are tied together in the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeCoupling {
    /// One Poisson index shared by both cavities: blocks `(n, n)` weighted
    /// `p_n`. With `g_A = g_B` the per-block frequency is `2 g sqrt(n+1)`,
    /// the single-JCM distribution that yields the quoted collapse and
    /// revival times.
    TwinDiagonal,
    /// Independent Poisson indices: blocks `(n_A, n_B)` weighted
    /// `p_{n_A} p_{n_B}`. Broader frequency spread, shorter collapse.
    IndependentProduct,
}

impl std::fmt::Display for ModeCoupling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModeCoupling::TwinDiagonal => write!(f, "twin"),
            ModeCoupling::IndependentProduct => write!(f, "product"),
        }
    }
}

/// Which Bell amplitude carries the coherent weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherentCase {
    /// Phi-type amplitude populated, Psi-type zero.
    CaseI,
    /// Psi-type amplitude populated, Phi-type zero.
    CaseII,
}

impl std::fmt::Display for CoherentCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoherentCase::CaseI => write!(f, "I"),
            CoherentCase::CaseII => write!(f, "II"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CoherentConfig {
    /// Mean photon number `|alpha|^2`.
    pub alpha_sq: f64,
    /// Largest photon number included in the ensemble sum.
    pub cutoff: usize,
    pub mode_coupling: ModeCoupling,
    pub case: CoherentCase,
}

impl CoherentConfig {
    pub fn new(
        alpha_sq: f64,
        cutoff: usize,
        mode_coupling: ModeCoupling,
        case: CoherentCase,
    ) -> Result<Self, DjcmError> {
        if !(alpha_sq > 0.0) {
            return Err(DjcmError::InvalidParams(format!(
                "mean photon number must be positive, got {alpha_sq}"
            )));
        }
        Ok(Self { alpha_sq, cutoff, mode_coupling, case })
    }

    /// `ceil(|alpha|^2 + 10 sqrt(|alpha|^2) + 10)`, far enough into the
    /// Poisson tail for the 1e-10 mass rule.
    pub fn default_cutoff(alpha_sq: f64) -> usize {
        (alpha_sq + 10.0 * alpha_sq.sqrt() + 10.0).ceil() as usize
    }
}

/// Time grid with per-site inversion signals.
#[derive(Debug, Clone)]
pub struct InversionSeries {
    pub times: Vec<f64>,
    pub w_a: Vec<f64>,
    pub w_b: Vec<f64>,
    pub convention: InversionConvention,
}

/// Detected and predicted collapse/revival times.
#[derive(Debug, Clone, Copy)]
pub struct RevivalAnalysis {
    /// Earliest time at which the running envelope of `|W|` drops below
    /// `e^{-1}` of its initial value; `None` if the envelope never decays.
    pub t_collapse_est: Option<f64>,
    /// Location of the largest `|W|` in the window `[0.5, 1.5] * t_r_pred`;
    /// `None` if no collapse precedes it or the maximum sits on the window
    /// boundary.
    pub t_revival_est: Option<f64>,
    /// `sqrt(2) / g`.
    pub t_collapse_pred: f64,
    /// `2 pi |alpha| / g`.
    pub t_revival_pred: f64,
    /// Width of the sliding envelope window, one Rabi period at the mean
    /// photon number.
    pub envelope_window: f64,
}

/// Truncated, renormalized Poisson weights for mean `alpha_sq`, computed in
/// log space. Fails if the truncated tail mass exceeds 1e-10.
pub fn poisson_weights(alpha_sq: f64, cutoff: usize) -> Result<Vec<f64>, DjcmError> {
    if !(alpha_sq > 0.0) {
        return Err(DjcmError::InvalidParams(format!(
            "mean photon number must be positive, got {alpha_sq}"
        )));
    }
    let ln_mean = alpha_sq.ln();
    let mut ln_factorial = 0.0;
    let mut weights = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff {
        if n > 0 {
            ln_factorial += (n as f64).ln();
        }
        weights.push((-alpha_sq + (n as f64) * ln_mean - ln_factorial).exp());
    }
    let mass: f64 = weights.iter().sum();
    let tail = 1.0 - mass;
    if tail > TAIL_TOL {
        return Err(DjcmError::CutoffTooSmall {
            cutoff,
            tail,
            suggested: CoherentConfig::default_cutoff(alpha_sq).max(cutoff + 1),
        });
    }
    for w in weights.iter_mut() {
        *w /= mass;
    }
    Ok(weights)
}

fn accumulate_block(
    params: &SystemParams,
    block: BlockIndex,
    amps: &InitialAmplitudes,
    times: &[f64],
    convention: InversionConvention,
    weight: f64,
    w_a: &mut [f64],
    w_b: &mut [f64],
) {
    let h = interaction_block(params, block);
    match convention {
        InversionConvention::PaperBell => {
            for (k, &t) in times.iter().enumerate() {
                let w = inversion_paper(amps, params.scenario, h.omega_rabi_a, h.omega_rabi_b, t);
                w_a[k] += weight * w.w_a;
                w_b[k] += weight * w.w_b;
            }
        }
        InversionConvention::Exact => {
            let s0 = initial_block_state(params.scenario, amps, block)
                .expect("amplitudes validated by caller");
            for (k, &t) in times.iter().enumerate() {
                let w = inversion_exact(&propagate_product_form(&s0, &h, t));
                w_a[k] += weight * w.w_a;
                w_b[k] += weight * w.w_b;
            }
        }
    }
}

/// Poisson-weighted inversion series.
///
/// Case-I puts the whole weight on the Phi-type amplitude of the scenario's
/// Bell pair, Case-II on the Psi-type one. The double sum runs in a fixed
/// order (outer `n_A`, inner `n_B`, both ascending) so results are bitwise
/// reproducible.
pub fn ensemble_inversion(
    params: &SystemParams,
    config: &CoherentConfig,
    times: &[f64],
    convention: InversionConvention,
) -> Result<InversionSeries, DjcmError> {
    params.require_resonant()?;
    let weights = poisson_weights(config.alpha_sq, config.cutoff)?;
    let theta = match config.case {
        CoherentCase::CaseI => 0.0,
        CoherentCase::CaseII => std::f64::consts::FRAC_PI_2,
    };
    let amps = InitialAmplitudes::from_theta(params.scenario, theta);

    let mut w_a = vec![0.0; times.len()];
    let mut w_b = vec![0.0; times.len()];
    match config.mode_coupling {
        ModeCoupling::TwinDiagonal => {
            for (n, &p) in weights.iter().enumerate() {
                let block = BlockIndex::new(n as u32, n as u32);
                accumulate_block(params, block, &amps, times, convention, p, &mut w_a, &mut w_b);
            }
        }
        ModeCoupling::IndependentProduct => {
            for (na, &pa) in weights.iter().enumerate() {
                for (nb, &pb) in weights.iter().enumerate() {
                    let block = BlockIndex::new(na as u32, nb as u32);
                    accumulate_block(
                        params, block, &amps, times, convention, pa * pb, &mut w_a, &mut w_b,
                    );
                }
            }
        }
    }
    Ok(InversionSeries { times: times.to_vec(), w_a, w_b, convention })
}

/// Locates collapse and revival in an inversion series.
///
/// The envelope is the running maximum of `|W_A|` over a sliding window one
/// Rabi period `2 pi / (2 g sqrt(|alpha|^2 + 1))` wide; collapse is the
/// earliest time it falls below `e^{-1} |W_A(0)|`. The revival estimate is
/// the argmax of `|W_A|` over `[0.5, 1.5]` times the predicted revival time,
/// reported only when a collapse was found and the maximum is interior to
/// the window.
pub fn detect_collapse_revival(
    series: &InversionSeries,
    g: f64,
    alpha_sq: f64,
) -> RevivalAnalysis {
    let t_collapse_pred = 2.0f64.sqrt() / g;
    let t_revival_pred = 2.0 * std::f64::consts::PI * alpha_sq.sqrt() / g;
    let envelope_window = 2.0 * std::f64::consts::PI / (2.0 * g * (alpha_sq + 1.0).sqrt());

    let n = series.times.len();
    if n < 2 {
        return RevivalAnalysis {
            t_collapse_est: None,
            t_revival_est: None,
            t_collapse_pred,
            t_revival_pred,
            envelope_window,
        };
    }
    let dt = series.times[1] - series.times[0];
    let half_window = ((0.5 * envelope_window / dt).round() as usize).max(1);

    let abs_w: Vec<f64> = series.w_a.iter().map(|w| w.abs()).collect();
    let threshold = std::f64::consts::E.recip() * abs_w[0];

    let mut t_collapse_est = None;
    if threshold > 0.0 {
        for i in 0..n {
            let lo = i.saturating_sub(half_window);
            let hi = (i + half_window + 1).min(n);
            let envelope = abs_w[lo..hi].iter().cloned().fold(0.0f64, f64::max);
            if envelope < threshold {
                t_collapse_est = Some(series.times[i]);
                break;
            }
        }
    }

    let mut t_revival_est = None;
    if t_collapse_est.is_some() {
        let lo_t = 0.5 * t_revival_pred;
        let hi_t = 1.5 * t_revival_pred;
        let window: Vec<usize> =
            (0..n).filter(|&i| series.times[i] >= lo_t && series.times[i] <= hi_t).collect();
        if window.len() > 2 {
            let best = *window
                .iter()
                .max_by(|&&a, &&b| abs_w[a].partial_cmp(&abs_w[b]).unwrap())
                .unwrap();
            // interior maximum only
            if best != window[0] && best != *window.last().unwrap() {
                t_revival_est = Some(series.times[best]);
            }
        }
    }

    RevivalAnalysis {
        t_collapse_est,
        t_revival_est,
        t_collapse_pred,
        t_revival_pred,
        envelope_window,
    }
}

/// Uniform grid of `samples` points covering `[0, t_max]`, endpoint included.
pub fn time_grid(t_max: f64, samples: usize) -> Vec<f64> {
    let denom = (samples.max(2) - 1) as f64;
    (0..samples.max(2)).map(|k| t_max * (k as f64) / denom).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Scenario;

    fn params() -> SystemParams {
        SystemParams::resonant(1.0, 1.0, 1.0, 1.0, Scenario::I).unwrap()
    }

    #[test]
    fn weights_sum_to_one_and_have_correct_mean() {
        let w = poisson_weights(20.0, 80).unwrap();
        let sum: f64 = w.iter().sum();
        assert!((sum - 1.0).abs() < 1e-14);
        let mean: f64 = w.iter().enumerate().map(|(n, p)| (n as f64) * p).sum();
        assert!((mean - 20.0).abs() < 1e-8);
    }

    #[test]
    fn vacuum_weight_value() {
        let w = poisson_weights(20.0, 80).unwrap();
        assert!((w[0] - (-20.0f64).exp()).abs() < 1e-18);
        assert!((w[0] - 2.061e-9).abs() < 1e-11);
    }

    #[test]
    fn too_small_cutoff_rejected_with_suggestion() {
        match poisson_weights(20.0, 25) {
            Err(DjcmError::CutoffTooSmall { suggested, .. }) => {
                assert!(poisson_weights(20.0, suggested).is_ok());
            }
            other => panic!("expected CutoffTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn default_cutoff_passes_tail_rule() {
        for alpha_sq in [0.5, 1.0, 5.0, 20.0, 50.0] {
            let cutoff = CoherentConfig::default_cutoff(alpha_sq);
            assert!(poisson_weights(alpha_sq, cutoff).is_ok());
        }
    }

    #[test]
    fn zero_coupling_gives_constant_series() {
        let p = SystemParams::resonant(1.0, 1.0, 0.0, 0.0, Scenario::I).unwrap();
        let cfg = CoherentConfig::new(5.0, 40, ModeCoupling::TwinDiagonal, CoherentCase::CaseI)
            .unwrap();
        let times = time_grid(10.0, 100);
        let s = ensemble_inversion(&p, &cfg, &times, InversionConvention::PaperBell).unwrap();
        for &w in &s.w_a {
            assert!((w - s.w_a[0]).abs() < 1e-14);
        }
        assert!((s.w_a[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn twin_diagonal_matches_standard_jcm_series() {
        let cfg = CoherentConfig::new(5.0, 40, ModeCoupling::TwinDiagonal, CoherentCase::CaseI)
            .unwrap();
        let times = time_grid(20.0, 500);
        let s = ensemble_inversion(&params(), &cfg, &times, InversionConvention::PaperBell)
            .unwrap();
        let w = poisson_weights(5.0, 40).unwrap();
        for (k, &t) in times.iter().enumerate() {
            let expect: f64 = w
                .iter()
                .enumerate()
                .map(|(n, p)| p * (2.0 * ((n as f64) + 1.0).sqrt() * t).cos())
                .sum();
            assert!((s.w_a[k] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_convention_ensemble_is_zero() {
        for coupling in [ModeCoupling::TwinDiagonal, ModeCoupling::IndependentProduct] {
            let cfg = CoherentConfig::new(3.0, 30, coupling, CoherentCase::CaseI).unwrap();
            let times = time_grid(10.0, 50);
            let s = ensemble_inversion(&params(), &cfg, &times, InversionConvention::Exact)
                .unwrap();
            for &w in s.w_a.iter().chain(s.w_b.iter()) {
                assert!(w.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn case_signs_at_time_zero() {
        let times = time_grid(1.0, 10);
        for (case, sign) in [(CoherentCase::CaseI, 1.0), (CoherentCase::CaseII, -1.0)] {
            let cfg = CoherentConfig::new(5.0, 40, ModeCoupling::TwinDiagonal, case).unwrap();
            let s = ensemble_inversion(&params(), &cfg, &times, InversionConvention::PaperBell)
                .unwrap();
            assert!((s.w_a[0] - sign).abs() < 1e-12);
        }
    }

    #[test]
    fn cases_agree_up_to_sign() {
        let times = time_grid(30.0, 1000);
        let mk = |case| {
            let cfg = CoherentConfig::new(5.0, 40, ModeCoupling::TwinDiagonal, case).unwrap();
            ensemble_inversion(&params(), &cfg, &times, InversionConvention::PaperBell).unwrap()
        };
        let s1 = mk(CoherentCase::CaseI);
        let s2 = mk(CoherentCase::CaseII);
        for k in 0..times.len() {
            assert!((s1.w_a[k] + s2.w_a[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_cosine_has_no_collapse_or_revival() {
        let times = time_grid(50.0, 5000);
        let w_a: Vec<f64> = times.iter().map(|t| (2.0 * t).cos()).collect();
        let w_b: Vec<f64> = w_a.iter().map(|w| -w).collect();
        let series =
            InversionSeries { times, w_a, w_b, convention: InversionConvention::PaperBell };
        let r = detect_collapse_revival(&series, 1.0, 20.0);
        assert!(r.t_collapse_est.is_none());
        assert!(r.t_revival_est.is_none());
    }

    #[test]
    fn collapse_and_revival_near_predictions() {
        let cfg = CoherentConfig::new(
            20.0,
            CoherentConfig::default_cutoff(20.0),
            ModeCoupling::TwinDiagonal,
            CoherentCase::CaseI,
        )
        .unwrap();
        let times = time_grid(50.0, 20000);
        let s = ensemble_inversion(&params(), &cfg, &times, InversionConvention::PaperBell)
            .unwrap();
        let r = detect_collapse_revival(&s, 1.0, 20.0);
        let tc = r.t_collapse_est.unwrap();
        let tr = r.t_revival_est.unwrap();
        assert!((tc - r.t_collapse_pred).abs() / r.t_collapse_pred < 0.30);
        assert!((tr - r.t_revival_pred).abs() / r.t_revival_pred < 0.10);
    }

    #[test]
    fn estimates_stable_under_grid_refinement() {
        let cfg = CoherentConfig::new(
            20.0,
            CoherentConfig::default_cutoff(20.0),
            ModeCoupling::TwinDiagonal,
            CoherentCase::CaseI,
        )
        .unwrap();
        let coarse_times = time_grid(50.0, 5000);
        let fine_times = time_grid(50.0, 10000);
        let coarse_dt = coarse_times[1] - coarse_times[0];
        let sc = ensemble_inversion(&params(), &cfg, &coarse_times, InversionConvention::PaperBell)
            .unwrap();
        let sf = ensemble_inversion(&params(), &cfg, &fine_times, InversionConvention::PaperBell)
            .unwrap();
        let rc = detect_collapse_revival(&sc, 1.0, 20.0);
        let rf = detect_collapse_revival(&sf, 1.0, 20.0);
        assert!((rc.t_collapse_est.unwrap() - rf.t_collapse_est.unwrap()).abs() < coarse_dt);
        assert!((rc.t_revival_est.unwrap() - rf.t_revival_est.unwrap()).abs() < coarse_dt);
    }
}
