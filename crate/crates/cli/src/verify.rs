use std::io::Write;

use secjam_core::channel::{realize, trial_rng, ChannelParams, ChannelState, Geometry};
use secjam_core::cvec::{hermitian_inner, norm_sq};
use secjam_core::design::{
    design_power_min, design_rate_max, direct_transmission_rate, secrecy_rate_unclamped,
    DesignMode, PowerMinProblem, RateMaxProblem,
};
use secjam_core::oracle::{
    grid_best_ps_powermin, grid_best_ps_ratemax, nulling_optimum, subspace_weight_search,
    GridSpec, DEFAULT_GRID_POINTS,
};
use secjam_core::sim::stream_id;
use secjam_core::units::dbm_to_mw;

use crate::args::CliConfig;

const SUBSPACE_SAMPLES: usize = 1_000;

#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    failed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

struct Checks {
    ratemax_vs_grid: Tally,
    ratemax_vs_direct: Tally,
    nulling: Tally,
    budget: Tally,
    powermin_vs_grid: Tally,
    powermin_target: Tally,
    subspace: Tally,
}

/// Runs every oracle comparison over `cfg.trials` realizations for each
/// eavesdropper distance and antenna count. Returns whether all passed.
pub fn run_verify(cfg: &CliConfig, out: &mut dyn Write) -> std::io::Result<bool> {
    let p0 = dbm_to_mw(cfg.p0_dbm);
    let mut checks = Checks {
        ratemax_vs_grid: Tally::default(),
        ratemax_vs_direct: Tally::default(),
        nulling: Tally::default(),
        budget: Tally::default(),
        powermin_vs_grid: Tally::default(),
        powermin_target: Tally::default(),
        subspace: Tally::default(),
    };

    for (d_idx, d_se) in cfg.d_se_range.values().into_iter().enumerate() {
        let geom = Geometry::new(cfg.d_sd, cfg.d_sr, d_se).expect("validated geometry");
        for &n in &cfg.antenna_counts {
            let params = ChannelParams::new(cfg.alpha, dbm_to_mw(cfg.sigma2_dbm), n)
                .and_then(|p| p.with_min_distance(cfg.min_distance))
                .expect("validated parameters");
            for trial in 0..cfg.trials {
                let mut rng = trial_rng(cfg.seed, stream_id(d_idx, n, trial));
                let Ok(csi) = realize(&geom, &params, &mut rng) else {
                    continue;
                };
                let tag = || format!("d_SE={d_se} N={n} trial={trial}");
                check_rate_max(&csi, p0, &mut checks, &tag);
                check_power_min(&csi, cfg.rs0, &mut checks, &tag);
                if n >= 2 {
                    let pj = p0 / 2.0;
                    if let (Ok(found), Ok(opt)) = (
                        subspace_weight_search(&csi, pj, SUBSPACE_SAMPLES, &mut rng),
                        nulling_optimum(&csi, pj),
                    ) {
                        checks.subspace.record(found <= opt * (1.0 + 1e-9), || {
                            format!("{}: search {found:e} above optimum {opt:e}", tag())
                        });
                    }
                }
            }
        }
    }

    let mut all_ok = true;
    for (name, tally) in [
        ("rate-max design vs grid search", &checks.ratemax_vs_grid),
        ("rate-max design vs direct transmission", &checks.ratemax_vs_direct),
        ("jamming nulls the destination", &checks.nulling),
        ("rate-max spends the whole budget", &checks.budget),
        ("power-min design vs grid search", &checks.powermin_vs_grid),
        ("power-min meets the rate target", &checks.powermin_target),
        ("random nulling weights vs optimum", &checks.subspace),
    ] {
        let status = if tally.failed == 0 { "ok" } else { "FAILED" };
        writeln!(out, "{status:>6}  {name} ({}/{} passed)", tally.checked - tally.failed, tally.checked)?;
        if let Some(detail) = &tally.first_failure {
            writeln!(out, "        first failure: {detail}")?;
        }
        all_ok &= tally.failed == 0;
    }
    Ok(all_ok)
}

fn check_rate_max(csi: &ChannelState, p0: f64, checks: &mut Checks, tag: &dyn Fn() -> String) {
    let Ok(problem) = RateMaxProblem::new(csi.clone(), p0) else {
        return;
    };
    let out = design_rate_max(&problem);
    let grid = GridSpec::rate_max(p0, DEFAULT_GRID_POINTS).expect("positive budget");
    if let Ok((_, grid_rate)) = grid_best_ps_ratemax(csi, p0, &grid) {
        checks.ratemax_vs_grid.record(out.secrecy_rate >= grid_rate - 1e-9, || {
            format!("{}: design {} below grid {}", tag(), out.secrecy_rate, grid_rate)
        });
    }
    let dt = direct_transmission_rate(csi, p0);
    checks.ratemax_vs_direct.record(out.secrecy_rate >= dt, || {
        format!("{}: design {} below direct {}", tag(), out.secrecy_rate, dt)
    });
    if out.mode == DesignMode::CooperativeJamming {
        check_nulling(csi, &out.w, out.pj, checks, tag);
        let gap = (out.ps + out.pj - p0).abs();
        checks.budget.record(gap <= 1e-12 * p0, || {
            format!("{}: budget off by {gap:e}", tag())
        });
    }
}

fn check_power_min(csi: &ChannelState, rs0: f64, checks: &mut Checks, tag: &dyn Fn() -> String) {
    let Ok(problem) = PowerMinProblem::new(csi.clone(), rs0) else {
        return;
    };
    let out = design_power_min(&problem);
    if out.mode == DesignMode::Infeasible {
        return;
    }
    if let Ok((_, grid_total)) = GridSpec::power_min(csi, rs0, DEFAULT_GRID_POINTS)
        .and_then(|grid| grid_best_ps_powermin(csi, rs0, &grid))
    {
        checks.powermin_vs_grid.record(out.total_power <= grid_total * (1.0 + 1e-9), || {
            format!("{}: design {:e} above grid {:e}", tag(), out.total_power, grid_total)
        });
    }
    if out.mode == DesignMode::CooperativeJamming {
        check_nulling(csi, &out.w, out.pj, checks, tag);
        let rate = secrecy_rate_unclamped(csi, out.ps, &out.w).unwrap_or(f64::NAN);
        checks.powermin_target.record((rate - rs0).abs() <= 1e-9, || {
            format!("{}: achieved {rate} for target {rs0}", tag())
        });
    }
}

fn check_nulling(
    csi: &ChannelState,
    w: &secjam_core::cvec::ComplexVector,
    pj: f64,
    checks: &mut Checks,
    tag: &dyn Fn() -> String,
) {
    let leak = hermitian_inner(w, csi.h_rd()).map(|z| z.norm_sqr()).unwrap_or(f64::NAN);
    let bound = 1e-24 * pj * norm_sq(csi.h_rd());
    checks.nulling.record(leak <= bound, || {
        format!("{}: leakage {leak:e} above {bound:e}", tag())
    });
}
