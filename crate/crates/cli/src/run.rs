use std::io::Write;

use secjam_core::channel::{realize, trial_rng, ChannelParams, ChannelState, Geometry};
use secjam_core::design::{
    design_power_min, design_rate_max, DesignMode, DesignOutcome, PowerMinProblem,
    RateMaxProblem,
};
use secjam_core::sim::{format_sig9, render_csv, run_sweep, stream_id, write_csv};
use secjam_core::units::{dbm_to_mw, mw_to_dbm};

use crate::args::{CliConfig, Command};
use crate::verify::run_verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Executes a parsed invocation, writing results to `out` and diagnostics
/// to `err`. Returns the process exit status.
pub fn run(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "secjam: {e}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match cfg.command {
        Command::DesignRateMax | Command::DesignPowerMin => design(cfg, out, err),
        Command::Sweep => sweep(cfg, out, err),
        Command::Verify => {
            let ok = run_verify(cfg, out)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn draw_channel(cfg: &CliConfig) -> secjam_core::Result<ChannelState> {
    let n = cfg.design_antennas();
    let geom = Geometry::new(cfg.d_sd, cfg.d_sr, cfg.d_se)?;
    let params = ChannelParams::new(cfg.alpha, dbm_to_mw(cfg.sigma2_dbm), n)?
        .with_min_distance(cfg.min_distance)?;
    realize(&geom, &params, &mut trial_rng(cfg.seed, stream_id(0, n, 0)))
}

fn design(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let csi = match draw_channel(cfg) {
        Ok(csi) => csi,
        Err(e) => {
            writeln!(err, "secjam: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let (title, constraint, outcome) = if cfg.command == Command::DesignRateMax {
        let problem = RateMaxProblem::new(csi, dbm_to_mw(cfg.p0_dbm));
        let outcome = problem.map(|p| design_rate_max(&p));
        ("secrecy-rate maximization", format!("budget P0 = {} dBm", cfg.p0_dbm), outcome)
    } else {
        let problem = PowerMinProblem::new(csi, cfg.rs0);
        let outcome = problem.map(|p| design_power_min(&p));
        ("transmit-power minimization", format!("target Rs0 = {} bits/s/Hz", cfg.rs0), outcome)
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            writeln!(err, "secjam: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };

    print_block(cfg, title, &constraint, &outcome, out)?;
    Ok(if outcome.mode == DesignMode::Infeasible {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn print_block(
    cfg: &CliConfig,
    title: &str,
    constraint: &str,
    o: &DesignOutcome,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let dbm = |mw: f64| {
        if mw > 0.0 {
            format!(" ({} dBm)", format_sig9(mw_to_dbm(mw)))
        } else {
            String::new()
        }
    };
    writeln!(out, "{title}")?;
    writeln!(
        out,
        "  geometry       d_SD = {} m, d_SR = {} m, d_SE = {} m, alpha = {}",
        cfg.d_sd, cfg.d_sr, cfg.d_se, cfg.alpha
    )?;
    writeln!(out, "  relay antennas {}", cfg.design_antennas())?;
    writeln!(out, "  noise          {} dBm, seed {}", cfg.sigma2_dbm, cfg.seed)?;
    writeln!(out, "  constraint     {constraint}")?;
    writeln!(out, "  mode           {}", o.mode)?;
    writeln!(out, "  source power   {} mW{}", format_sig9(o.ps), dbm(o.ps))?;
    writeln!(out, "  jamming power  {} mW{}", format_sig9(o.pj), dbm(o.pj))?;
    writeln!(out, "  total power    {} mW{}", format_sig9(o.total_power), dbm(o.total_power))?;
    writeln!(out, "  secrecy rate   {} bits/s/Hz", format_sig9(o.secrecy_rate))?;
    if cfg.verbose {
        for (i, w) in o.w.iter().enumerate() {
            let sign = if w.im.is_sign_negative() { '-' } else { '+' };
            writeln!(out, "  w[{i}]           {} {sign} {}j", format_sig9(w.re), format_sig9(w.im.abs()))?;
        }
    }
    writeln!(out)?;
    writeln!(out, "mode={}", o.mode)?;
    writeln!(out, "ps_mw={}", format_sig9(o.ps))?;
    writeln!(out, "pj_mw={}", format_sig9(o.pj))?;
    writeln!(out, "secrecy_rate={}", format_sig9(o.secrecy_rate))?;
    writeln!(out, "total_power_mw={}", format_sig9(o.total_power))
}

fn sweep(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let rows = match run_sweep(&cfg.sweep_config()) {
        Ok(rows) => rows,
        Err(e) => {
            writeln!(err, "secjam: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match &cfg.out {
        Some(path) => match write_csv(&rows, path, cfg.verbose) {
            Ok(()) => {
                if cfg.verbose {
                    writeln!(err, "wrote {} rows to {}", rows.len(), path.display())?;
                }
                Ok(EXIT_OK)
            }
            Err(e) => {
                writeln!(err, "secjam: {e}")?;
                Ok(EXIT_FAILURE)
            }
        },
        None => {
            out.write_all(render_csv(&rows, cfg.verbose).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}
