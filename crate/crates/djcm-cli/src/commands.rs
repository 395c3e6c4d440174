use serde::Serialize;

use djcm::ensemble::{detect_collapse_revival, ensemble_inversion, time_grid};
use djcm::evolution::{initial_block_state, propagate, InitialAmplitudes};
use djcm::measure::{inversion_exact, inversion_paper, InversionConvention};
use djcm::model::{
    block_spectrum, free_diagonal, interaction_block, BlockIndex, DiagonalConvention,
};

use crate::config::{fmt, Cli, CliError, Command, Defaults, FormatArg, Opts, RunConfig};
use crate::output::{csv_header, csv_row, write_out};
use crate::verify::run_verify;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(opts) => {
            let cfg = resolve_for(&opts, 20.0, 2001)?;
            cmd_spectrum(&cfg)
        }
        Command::Rabi(opts) => {
            let cfg = resolve_for(&opts, 20.0, 2001)?;
            cmd_rabi(&cfg)
        }
        Command::Revival(opts) => {
            let cfg = resolve_for(&opts, 50.0, 20000)?;
            cmd_revival(&cfg)
        }
        Command::Verify(opts) => {
            let cfg = resolve_for(&opts, 20.0, 2001)?;
            cmd_verify(&cfg)
        }
    }
}

fn resolve_for(opts: &Opts, t_max: f64, samples: usize) -> Result<RunConfig, CliError> {
    crate::config::resolve(opts, Defaults { t_max, samples })
}

#[derive(Serialize)]
struct SpectrumRow {
    n_a: u32,
    n_b: u32,
    variant: String,
    eigenvalues: [f64; 4],
}

fn cmd_spectrum(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.system_params()?;
    let blocks: Vec<BlockIndex> = match cfg.n_max {
        Some(n_max) => {
            let mut v = Vec::new();
            for na in 0..=n_max {
                for nb in 0..=n_max {
                    v.push(BlockIndex::new(na, nb));
                }
            }
            v
        }
        None => vec![BlockIndex::new(cfg.n_a, cfg.n_b)],
    };

    let mut rows = Vec::new();
    for block in blocks {
        let h = interaction_block(&params, block);
        let spec = block_spectrum(&h, false)?;
        rows.push(SpectrumRow {
            n_a: block.n_a,
            n_b: block.n_b,
            variant: "interaction".into(),
            eigenvalues: spec.eigenvalues,
        });
        for convention in
            [DiagonalConvention::ExcitationConserving, DiagonalConvention::PaperPrinted]
        {
            let mut hd = h;
            hd.diagonal = free_diagonal(&params, block, convention);
            let spec = block_spectrum(&hd, true)?;
            rows.push(SpectrumRow {
                n_a: block.n_a,
                n_b: block.n_b,
                variant: format!("interaction+{convention}"),
                eigenvalues: spec.eigenvalues,
            });
        }
    }

    match cfg.format {
        FormatArg::Json => {
            let text = serde_json::to_string_pretty(&rows)? + "\n";
            write_out(cfg.out.as_deref(), &text)
        }
        FormatArg::Csv => {
            let mut text = csv_header(&cfg.header_lines("spectrum"));
            text.push_str("n_a,n_b,variant,e1,e2,e3,e4\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.n_a,
                    r.n_b,
                    r.variant,
                    fmt(r.eigenvalues[0]),
                    fmt(r.eigenvalues[1]),
                    fmt(r.eigenvalues[2]),
                    fmt(r.eigenvalues[3]),
                ));
            }
            write_out(cfg.out.as_deref(), &text)
        }
    }
}

#[derive(Serialize)]
struct SeriesColumns {
    t: Vec<f64>,
    w_a_paper: Vec<f64>,
    w_b_paper: Vec<f64>,
    w_a_exact: Vec<f64>,
    w_b_exact: Vec<f64>,
}

fn cmd_rabi(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.system_params()?;
    params.require_resonant()?;
    let block = BlockIndex::new(cfg.n_a, cfg.n_b);
    let h = interaction_block(&params, block);
    let amps = InitialAmplitudes::from_theta(cfg.scenario, cfg.theta);
    let s0 = initial_block_state(cfg.scenario, &amps, block)?;
    let times = time_grid(cfg.t_max, cfg.samples);

    let mut cols = SeriesColumns {
        t: times.clone(),
        w_a_paper: Vec::with_capacity(times.len()),
        w_b_paper: Vec::with_capacity(times.len()),
        w_a_exact: Vec::with_capacity(times.len()),
        w_b_exact: Vec::with_capacity(times.len()),
    };
    for &t in &times {
        let wp = inversion_paper(&amps, cfg.scenario, h.omega_rabi_a, h.omega_rabi_b, t);
        let we = inversion_exact(&propagate(&s0, &h, t)?);
        cols.w_a_paper.push(wp.w_a);
        cols.w_b_paper.push(wp.w_b);
        cols.w_a_exact.push(we.w_a);
        cols.w_b_exact.push(we.w_b);
    }
    emit_series(cfg, "rabi", &[], cols)
}

#[derive(Serialize)]
struct RevivalSummary {
    t_collapse_est: Option<f64>,
    t_revival_est: Option<f64>,
    t_collapse_pred: f64,
    t_revival_pred: f64,
    convention: String,
    weighting: String,
}

fn cmd_revival(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.system_params()?;
    params.require_resonant()?;
    let coherent = cfg.coherent_config()?;
    let times = time_grid(cfg.t_max, cfg.samples);

    let paper = ensemble_inversion(&params, &coherent, &times, InversionConvention::PaperBell)?;
    let exact = ensemble_inversion(&params, &coherent, &times, InversionConvention::Exact)?;
    let analysis = detect_collapse_revival(&paper, cfg.g_a, cfg.alpha_sq);

    let summary = RevivalSummary {
        t_collapse_est: analysis.t_collapse_est,
        t_revival_est: analysis.t_revival_est,
        t_collapse_pred: analysis.t_collapse_pred,
        t_revival_pred: analysis.t_revival_pred,
        convention: InversionConvention::PaperBell.to_string(),
        weighting: coherent.mode_coupling.to_string(),
    };

    let cols = SeriesColumns {
        t: times,
        w_a_paper: paper.w_a,
        w_b_paper: paper.w_b,
        w_a_exact: exact.w_a,
        w_b_exact: exact.w_b,
    };

    match cfg.format {
        FormatArg::Json => {
            #[derive(Serialize)]
            struct RevivalJson {
                summary: RevivalSummary,
                series: SeriesColumns,
            }
            let text =
                serde_json::to_string_pretty(&RevivalJson { summary, series: cols })? + "\n";
            write_out(cfg.out.as_deref(), &text)
        }
        FormatArg::Csv => {
            let mut extra = Vec::new();
            extra.push(match summary.t_collapse_est {
                Some(t) => format!("t_collapse_est={}", fmt(t)),
                None => "t_collapse_est=absent".into(),
            });
            extra.push(match summary.t_revival_est {
                Some(t) => format!("t_revival_est={}", fmt(t)),
                None => "t_revival_est=absent".into(),
            });
            extra.push(format!("t_collapse_pred={}", fmt(summary.t_collapse_pred)));
            extra.push(format!("t_revival_pred={}", fmt(summary.t_revival_pred)));
            extra.push(format!("convention={}", summary.convention));
            emit_series(cfg, "revival", &extra, cols)
        }
    }
}

fn emit_series(
    cfg: &RunConfig,
    subcommand: &str,
    extra_header: &[String],
    cols: SeriesColumns,
) -> Result<(), CliError> {
    match cfg.format {
        FormatArg::Json => {
            let text = serde_json::to_string_pretty(&cols)? + "\n";
            write_out(cfg.out.as_deref(), &text)
        }
        FormatArg::Csv => {
            let mut lines = cfg.header_lines(subcommand);
            lines.extend_from_slice(extra_header);
            let mut text = csv_header(&lines);
            text.push_str("t,W_A_paper,W_B_paper,W_A_exact,W_B_exact\n");
            for k in 0..cols.t.len() {
                text.push_str(&csv_row(&[
                    cols.t[k],
                    cols.w_a_paper[k],
                    cols.w_b_paper[k],
                    cols.w_a_exact[k],
                    cols.w_b_exact[k],
                ]));
            }
            write_out(cfg.out.as_deref(), &text)
        }
    }
}

fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let (checks, all_pass) = run_verify()?;
    match cfg.format {
        FormatArg::Json => {
            let text = serde_json::to_string_pretty(&checks)? + "\n";
            write_out(cfg.out.as_deref(), &text)?;
        }
        FormatArg::Csv => {
            let mut text = String::from("name,value,threshold,status\n");
            for c in &checks {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    c.name,
                    fmt(c.value),
                    c.threshold.map(fmt).unwrap_or_else(|| "recorded".into()),
                    c.status,
                ));
            }
            write_out(cfg.out.as_deref(), &text)?;
        }
    }
    if !all_pass {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| c.status == "fail")
            .map(|c| c.name.as_str())
            .collect();
        return Err(format!("verification failed: {}", failed.join(", ")).into());
    }
    Ok(())
}
