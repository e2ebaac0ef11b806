//! Monte Carlo sweeps over the eavesdropper position.
//!
//! For every eavesdropper distance and relay antenna count the sweep draws
//! `trials` independent channel realizations, runs the configured design on
//! each, and averages. Each trial owns a random stream keyed by
//! `(seed, distance index, N, trial)`, so results do not depend on how trials
//! are scheduled across threads. A row with `n = 0` reports direct
//! transmission on the same realizations.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::channel::{realize, trial_rng, ChannelParams, ChannelState, Geometry};
use crate::design::{
    design_power_min, design_rate_max, direct_transmission_power, direct_transmission_rate,
    secrecy_rate_unclamped, DesignMode, PowerMinProblem, RateMaxProblem,
};
use crate::units::{dbm_to_mw, mw_to_dbm};
use crate::{Error, Result};

/// What each trial optimizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    /// Maximize the secrecy rate under a total power budget in dBm.
    RateMax { p0_dbm: f64 },
    /// Minimize total power under a secrecy-rate target in bits/s/Hz.
    PowerMin { rs0: f64 },
}

impl Objective {
    pub const DEFAULT_P0_DBM: f64 = -40.0;
    pub const DEFAULT_RS0: f64 = 1.0;
}

/// Inclusive arithmetic range `lo, lo + step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl DistanceRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let range = Self { lo, hi, step };
        range.validate()?;
        Ok(range)
    }

    /// A single distance.
    pub fn single(d: f64) -> Result<Self> {
        Self::new(d, d, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo > 0.0 && self.lo <= self.hi) {
            return Err(Error::InvalidParameter(format!(
                "distance range needs 0 < lo <= hi, got {}:{}",
                self.lo, self.hi
            )));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "distance step must be positive, got {}",
                self.step
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.lo + self.step * k as f64).collect()
    }
}

impl Default for DistanceRange {
    fn default() -> Self {
        Self {
            lo: 10.0,
            hi: 90.0,
            step: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub d_sd: f64,
    pub d_sr: f64,
    pub d_se: DistanceRange,
    pub alpha: f64,
    pub sigma2_dbm: f64,
    /// Link distances are clamped to at least this many meters.
    pub min_distance: f64,
    pub objective: Objective,
    pub antenna_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            d_sd: 50.0,
            d_sr: 25.0,
            d_se: DistanceRange::default(),
            alpha: ChannelParams::DEFAULT_ALPHA,
            sigma2_dbm: -100.0,
            min_distance: ChannelParams::DEFAULT_MIN_DISTANCE,
            objective: Objective::RateMax {
                p0_dbm: Objective::DEFAULT_P0_DBM,
            },
            antenna_counts: vec![2, 4],
            trials: 1000,
            seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        Geometry::new(self.d_sd, self.d_sr, self.d_se.lo)?;
        self.d_se.validate()?;
        self.channel_params(1)?;
        if self.trials == 0 || self.trials > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "trials must be in 1..=2^32-1, got {}",
                self.trials
            )));
        }
        if self.d_se.values().len() > u16::MAX as usize {
            return Err(Error::InvalidParameter("too many sweep points".into()));
        }
        for &n in &self.antenna_counts {
            if n == 0 || n > u16::MAX as usize {
                return Err(Error::InvalidParameter(format!(
                    "antenna count must be in 1..=65535, got {n}"
                )));
            }
        }
        match self.objective {
            Objective::RateMax { p0_dbm } if !p0_dbm.is_finite() => Err(Error::InvalidParameter(
                format!("power budget must be finite, got {p0_dbm} dBm"),
            )),
            Objective::PowerMin { rs0 } if !(rs0.is_finite() && rs0 > 0.0) => Err(
                Error::InvalidParameter(format!("secrecy-rate target must be positive, got {rs0}")),
            ),
            _ => Ok(()),
        }
    }

    fn channel_params(&self, n: usize) -> Result<ChannelParams> {
        ChannelParams::new(self.alpha, dbm_to_mw(self.sigma2_dbm), n)?
            .with_min_distance(self.min_distance)
    }
}

/// Averages for one `(d_SE, N)` pair; `n == 0` is direct transmission.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub d_se: f64,
    pub n: usize,
    /// Mean clamped secrecy rate over feasible trials.
    pub mean_secrecy_rate: f64,
    /// dBm value of the mean total power (in mW) over feasible trials.
    pub mean_total_power_dbm: f64,
    pub feasible_fraction: f64,
    pub trials: usize,
    /// Mean secrecy rate before clamping at zero.
    pub mean_unclamped_secrecy_rate: f64,
    /// Standard error of `mean_secrecy_rate`.
    pub secrecy_rate_std_error: f64,
}

/// What one trial contributes to a row.
#[derive(Debug, Clone, Copy)]
struct TrialMetrics {
    feasible: bool,
    rate: f64,
    rate_unclamped: f64,
    total_power: f64,
}

impl TrialMetrics {
    const INFEASIBLE: Self = Self {
        feasible: false,
        rate: 0.0,
        rate_unclamped: 0.0,
        total_power: 0.0,
    };
}

/// Random stream id for one trial: distance index, antenna count and trial
/// number packed into disjoint bit fields.
pub fn stream_id(d_index: usize, n: usize, trial: usize) -> u64 {
    ((d_index as u64) << 48) | ((n as u64 & 0xffff) << 32) | (trial as u64 & 0xffff_ffff)
}

fn jamming_trial(csi: &ChannelState, objective: Objective) -> TrialMetrics {
    let outcome = match objective {
        Objective::RateMax { p0_dbm } => {
            let problem = RateMaxProblem::new(csi.clone(), dbm_to_mw(p0_dbm))
                .expect("validated power budget");
            design_rate_max(&problem)
        }
        Objective::PowerMin { rs0 } => {
            let problem = PowerMinProblem::new(csi.clone(), rs0).expect("validated target");
            design_power_min(&problem)
        }
    };
    if outcome.mode == DesignMode::Infeasible {
        return TrialMetrics::INFEASIBLE;
    }
    TrialMetrics {
        feasible: true,
        rate: outcome.secrecy_rate,
        rate_unclamped: secrecy_rate_unclamped(csi, outcome.ps, &outcome.w)
            .expect("weights match channel length"),
        total_power: outcome.total_power,
    }
}

fn direct_trial(csi: &ChannelState, objective: Objective) -> TrialMetrics {
    let power = match objective {
        Objective::RateMax { p0_dbm } => Some(dbm_to_mw(p0_dbm)),
        Objective::PowerMin { rs0 } => direct_transmission_power(csi, rs0),
    };
    match power {
        Some(p) => {
            let zero = crate::cvec::ComplexVector::zeros(csi.n()).expect("n >= 1");
            TrialMetrics {
                feasible: true,
                rate: direct_transmission_rate(csi, p),
                rate_unclamped: secrecy_rate_unclamped(csi, p, &zero).expect("same length"),
                total_power: p,
            }
        }
        None => TrialMetrics::INFEASIBLE,
    }
}

/// Pairwise summation in index order; bit-identical for identical input.
fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        f64::NAN
    } else {
        pairwise_sum(xs) / xs.len() as f64
    }
}

fn aggregate(d_se: f64, n: usize, trials: &[TrialMetrics]) -> SweepRow {
    let feasible: Vec<&TrialMetrics> = trials.iter().filter(|t| t.feasible).collect();
    let rates: Vec<f64> = feasible.iter().map(|t| t.rate).collect();
    let unclamped: Vec<f64> = feasible.iter().map(|t| t.rate_unclamped).collect();
    let powers: Vec<f64> = feasible.iter().map(|t| t.total_power).collect();
    let mean_rate = mean(&rates);
    let std_error = if rates.len() > 1 {
        let dev: Vec<f64> = rates.iter().map(|r| (r - mean_rate).powi(2)).collect();
        let variance = pairwise_sum(&dev) / (rates.len() - 1) as f64;
        (variance / rates.len() as f64).sqrt()
    } else {
        0.0
    };
    SweepRow {
        d_se,
        n,
        mean_secrecy_rate: mean_rate,
        mean_total_power_dbm: mw_to_dbm(mean(&powers)),
        feasible_fraction: feasible.len() as f64 / trials.len() as f64,
        trials: trials.len(),
        mean_unclamped_secrecy_rate: mean(&unclamped),
        secrecy_rate_std_error: std_error,
    }
}

/// Runs the configured sweep. Rows are ordered by distance, then by the
/// configured antenna counts, then the direct-transmission row.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let base = Geometry::new(cfg.d_sd, cfg.d_sr, cfg.d_se.lo)?;
    let mut rows = Vec::new();
    for (d_index, d_se) in cfg.d_se.values().into_iter().enumerate() {
        let geom = base.with_eavesdropper(d_se)?;
        let mut direct: Option<Vec<TrialMetrics>> = None;
        for &n in &cfg.antenna_counts {
            let params = cfg.channel_params(n)?;
            let results = (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = trial_rng(cfg.seed, stream_id(d_index, n, trial));
                    let csi = realize(&geom, &params, &mut rng)?;
                    Ok((jamming_trial(&csi, cfg.objective), direct_trial(&csi, cfg.objective)))
                })
                .collect::<Result<Vec<_>>>()?;
            let (jam, dt): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            rows.push(aggregate(d_se, n, &jam));
            direct.get_or_insert(dt);
        }
        let direct = match direct {
            Some(dt) => dt,
            None => {
                let params = cfg.channel_params(1)?;
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|trial| {
                        let mut rng = trial_rng(cfg.seed, stream_id(d_index, 0, trial));
                        Ok(direct_trial(&realize(&geom, &params, &mut rng)?, cfg.objective))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        rows.push(aggregate(d_se, 0, &direct));
    }
    Ok(rows)
}

pub const CSV_HEADER: &str =
    "d_se_m,n_antennas,mean_secrecy_rate_bps_hz,mean_total_power_dbm,feasible_fraction,trials";
pub const CSV_DEBUG_COLUMNS: &str = "mean_unclamped_secrecy_rate_bps_hz,secrecy_rate_std_error";

/// Formats `x` with 9 significant digits, `%.9g` style: trailing zeros
/// dropped, exponent notation outside `1e-4 <= |x| < 1e9`.
pub fn format_sig9(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..9).contains(&exp) {
        format!("{}e{}", trim(mantissa), exp)
    } else {
        trim(&format!("{:.*}", (8 - exp) as usize, x))
    }
}

/// Renders rows as CSV text. `debug` appends the unclamped mean and the
/// standard error.
pub fn render_csv(rows: &[SweepRow], debug: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if debug {
        out.push(',');
        out.push_str(CSV_DEBUG_COLUMNS);
    }
    out.push('\n');
    for row in rows {
        let mut fields = vec![
            format_sig9(row.d_se),
            row.n.to_string(),
            format_sig9(row.mean_secrecy_rate),
            format_sig9(row.mean_total_power_dbm),
            format_sig9(row.feasible_fraction),
            row.trials.to_string(),
        ];
        if debug {
            fields.push(format_sig9(row.mean_unclamped_secrecy_rate));
            fields.push(format_sig9(row.secrecy_rate_std_error));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(rows: &[SweepRow], path: &Path, debug: bool) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let mut file = BufWriter::new(File::create(path).map_err(io_err)?);
    file.write_all(render_csv(rows, debug).as_bytes())
        .map_err(io_err)?;
    file.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(objective: Objective) -> SweepConfig {
        SweepConfig {
            d_se: DistanceRange::new(20.0, 60.0, 20.0).unwrap(),
            objective,
            trials: 16,
            seed: 5,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn range_values() {
        assert_eq!(DistanceRange::default().values().len(), 17);
        assert_eq!(DistanceRange::new(10.0, 20.0, 4.0).unwrap().values(), vec![10.0, 14.0, 18.0]);
        assert_eq!(DistanceRange::single(33.0).unwrap().values(), vec![33.0]);
        assert!(DistanceRange::new(10.0, 5.0, 1.0).is_err());
        assert!(DistanceRange::new(10.0, 20.0, 0.0).is_err());
    }

    #[test]
    fn stream_ids_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for d in 0..5 {
            for n in [0, 1, 2, 4] {
                for t in 0..50 {
                    assert!(seen.insert(stream_id(d, n, t)));
                }
            }
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = SweepConfig {
            trials: 1,
            ..small(Objective::RateMax { p0_dbm: -40.0 })
        };
        assert_eq!(run_sweep(&cfg).unwrap(), run_sweep(&cfg).unwrap());
    }

    #[test]
    fn row_layout() {
        let rows = run_sweep(&small(Objective::RateMax { p0_dbm: -40.0 })).unwrap();
        let labels: Vec<(f64, usize)> = rows.iter().map(|r| (r.d_se, r.n)).collect();
        assert_eq!(
            labels,
            vec![(20.0, 2), (20.0, 4), (20.0, 0), (40.0, 2), (40.0, 4), (40.0, 0), (60.0, 2), (60.0, 4), (60.0, 0)]
        );
        for r in &rows {
            assert_eq!(r.feasible_fraction, 1.0);
            assert!((r.mean_total_power_dbm + 40.0).abs() < 1e-9);
        }
    }

    #[test]
    fn direct_only_sweep() {
        let cfg = SweepConfig {
            antenna_counts: vec![],
            d_se: DistanceRange::new(20.0, 80.0, 30.0).unwrap(),
            ..small(Objective::PowerMin { rs0: 1.0 })
        };
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.n == 0));
        // one bit needs (d_SE/d_SD)^3.5 > 2, i.e. d_SE > ~60.9 m
        assert_eq!(rows[0].feasible_fraction, 0.0);
        assert!(rows[0].mean_secrecy_rate.is_nan());
        assert_eq!(rows[1].feasible_fraction, 0.0);
        assert_eq!(rows[2].feasible_fraction, 1.0);
        assert!((rows[2].mean_secrecy_rate - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_configs() {
        let base = small(Objective::RateMax { p0_dbm: -40.0 });
        assert!(run_sweep(&SweepConfig { trials: 0, ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig { antenna_counts: vec![0], ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig { alpha: -1.0, ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig { d_sd: 0.0, ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig {
            objective: Objective::PowerMin { rs0: 0.0 },
            ..base
        })
        .is_err());
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(10.0), "10");
        assert_eq!(format_sig9(0.5), "0.5");
        assert_eq!(format_sig9(-40.0), "-40");
        assert_eq!(format_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig9(123456789.4), "123456789");
        assert_eq!(format_sig9(1234567890.0), "1.23456789e9");
        assert_eq!(format_sig9(1.5e-7), "1.5e-7");
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(f64::NAN), "NaN");
        assert_eq!(format_sig9(-96.98970004336019), "-96.9897");
    }

    #[test]
    fn pairwise_sum_is_accurate() {
        let xs = vec![0.1; 1000];
        assert!((pairwise_sum(&xs) - 100.0).abs() < 1e-12);
    }
}
