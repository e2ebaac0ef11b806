use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use secjam_core::channel::ChannelParams;
use secjam_core::sim::{DistanceRange, Objective, SweepConfig};

use crate::config_file::FileConfig;
use crate::error::CliError;

pub const SEED_ENV: &str = "SECJAM_SEED";

/// Eavesdropper distance used by the single-shot designs when none is given.
pub const DEFAULT_D_SE: f64 = 30.0;
/// Realizations per (distance, antenna count) pair for `verify`.
pub const DEFAULT_VERIFY_TRIALS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    DesignRateMax,
    DesignPowerMin,
    Sweep,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ratemax,
    Powermin,
}

/// Fully resolved invocation: every field has a value after flags, config
/// file, environment and defaults have been merged.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub d_sd: f64,
    pub d_sr: f64,
    /// Single eavesdropper distance, used by the designs and as a one-point
    /// sweep when no range is given.
    pub d_se: f64,
    pub d_se_range: DistanceRange,
    pub alpha: f64,
    pub sigma2_dbm: f64,
    pub p0_dbm: f64,
    pub rs0: f64,
    pub min_distance: f64,
    pub antenna_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    pub verbose: bool,
}

impl CliConfig {
    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            d_sd: self.d_sd,
            d_sr: self.d_sr,
            d_se: self.d_se_range,
            alpha: self.alpha,
            sigma2_dbm: self.sigma2_dbm,
            min_distance: self.min_distance,
            objective: self.objective(),
            antenna_counts: self.antenna_counts.clone(),
            trials: self.trials,
            seed: self.seed,
        }
    }

    pub fn objective(&self) -> Objective {
        match self.mode {
            Mode::Ratemax => Objective::RateMax { p0_dbm: self.p0_dbm },
            Mode::Powermin => Objective::PowerMin { rs0: self.rs0 },
        }
    }

    /// Antenna count for the single-shot designs: the first `--n`.
    pub fn design_antennas(&self) -> usize {
        self.antenna_counts.first().copied().unwrap_or(2)
    }
}

#[derive(Debug, Parser)]
#[command(name = "secjam", version, about = "Cooperative jamming designs for a relay wiretap line network")]
struct RawArgs {
    #[command(subcommand)]
    command: RawCommand,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum RawCommand {
    /// Maximize the secrecy rate of one channel realization under a power budget.
    DesignRatemax,
    /// Minimize total power of one realization under a secrecy-rate target.
    DesignPowermin,
    /// Monte Carlo sweep over the eavesdropper distance, written as CSV.
    Sweep,
    /// Check the closed-form designs against brute-force searches.
    Verify,
}

#[derive(Debug, Default, clap::Args)]
pub(crate) struct Flags {
    /// Source to destination distance in meters.
    #[arg(long, global = true)]
    pub d_sd: Option<f64>,
    /// Source to relay distance in meters.
    #[arg(long, global = true)]
    pub d_sr: Option<f64>,
    /// Source to eavesdropper distance in meters.
    #[arg(long, global = true)]
    pub d_se: Option<f64>,
    /// Eavesdropper distances to sweep, as lo:hi:step.
    #[arg(long, global = true, value_parser = parse_range)]
    pub d_se_range: Option<DistanceRange>,
    /// Path-loss exponent.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Noise power in dBm.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma2_dbm: Option<f64>,
    /// Total power budget in dBm.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p0_dbm: Option<f64>,
    /// Secrecy-rate target in bits/s/Hz.
    #[arg(long, global = true)]
    pub rs0: Option<f64>,
    /// Distances below this many meters are clamped up to it.
    #[arg(long, global = true)]
    pub min_distance: Option<f64>,
    /// Relay antenna count; repeat for several.
    #[arg(long = "n", global = true, action = ArgAction::Append)]
    pub n: Vec<usize>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// RNG seed; falls back to SECJAM_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// CSV destination for `sweep`; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Sweep objective.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Print relay weights and extra CSV columns.
    #[arg(long, global = true)]
    pub verbose: bool,
}

pub(crate) fn parse_range(s: &str) -> Result<DistanceRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("expected lo:hi:step, got '{s}'"));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{t}' is not a number"))
    };
    DistanceRange::new(num(lo)?, num(hi)?, num(step)?).map_err(|e| e.to_string())
}

/// Parses `argv` (program name first), reading `SECJAM_SEED` from the
/// process environment.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var(SEED_ENV).ok())
}

pub fn parse_args_with_env<I, T>(argv: I, env_seed: Option<String>) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let raw = RawArgs::try_parse_from(argv)?;
    let file = match &raw.flags.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let command = match raw.command {
        RawCommand::DesignRatemax => Command::DesignRateMax,
        RawCommand::DesignPowermin => Command::DesignPowerMin,
        RawCommand::Sweep => Command::Sweep,
        RawCommand::Verify => Command::Verify,
    };
    resolve(command, raw.flags, file, env_seed)
}

fn resolve(
    command: Command,
    flags: Flags,
    file: FileConfig,
    env_seed: Option<String>,
) -> Result<CliConfig, CliError> {
    let defaults = SweepConfig::default();
    let f = file.flags;

    let seed = match flags.seed.or(f.seed) {
        Some(s) => s,
        None => match env_seed {
            Some(s) => s.trim().parse().map_err(|_| {
                CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got '{s}'"))
            })?,
            None => defaults.seed,
        },
    };

    let d_se = flags.d_se.or(f.d_se);
    let d_se_range = match flags.d_se_range.or(f.d_se_range) {
        Some(r) => r,
        None => match d_se {
            Some(d) => DistanceRange::single(d).map_err(|e| CliError::Usage(e.to_string()))?,
            None if command == Command::Verify => verify_distances(),
            None => defaults.d_se,
        },
    };

    let antenna_counts = if !flags.n.is_empty() {
        flags.n
    } else if !f.n.is_empty() {
        f.n
    } else {
        defaults.antenna_counts.clone()
    };

    let default_trials = if command == Command::Verify {
        DEFAULT_VERIFY_TRIALS
    } else {
        defaults.trials
    };

    let cfg = CliConfig {
        command,
        d_sd: flags.d_sd.or(f.d_sd).unwrap_or(defaults.d_sd),
        d_sr: flags.d_sr.or(f.d_sr).unwrap_or(defaults.d_sr),
        d_se: d_se.unwrap_or(DEFAULT_D_SE),
        d_se_range,
        alpha: flags.alpha.or(f.alpha).unwrap_or(defaults.alpha),
        sigma2_dbm: flags.sigma2_dbm.or(f.sigma2_dbm).unwrap_or(defaults.sigma2_dbm),
        p0_dbm: flags.p0_dbm.or(f.p0_dbm).unwrap_or(Objective::DEFAULT_P0_DBM),
        rs0: flags.rs0.or(f.rs0).unwrap_or(Objective::DEFAULT_RS0),
        min_distance: flags
            .min_distance
            .or(f.min_distance)
            .unwrap_or(ChannelParams::DEFAULT_MIN_DISTANCE),
        antenna_counts,
        trials: flags.trials.or(f.trials).unwrap_or(default_trials),
        seed,
        mode: flags.mode.or(f.mode).unwrap_or(Mode::Ratemax),
        out: flags.out.or(f.out),
        verbose: flags.verbose || f.verbose,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn verify_distances() -> DistanceRange {
    DistanceRange::new(15.0, 85.0, 17.5).expect("static range is valid")
}

fn validate(cfg: &CliConfig) -> Result<(), CliError> {
    let usage = |e: secjam_core::Error| CliError::Usage(e.to_string());
    if cfg.antenna_counts.is_empty() {
        return Err(CliError::Usage("at least one antenna count is required".into()));
    }
    // both objectives are checked so that a bad --rs0 is reported even when
    // the sweep runs in rate-max mode
    for mode in [Mode::Ratemax, Mode::Powermin] {
        let mut sweep = cfg.sweep_config();
        sweep.objective = CliConfig { mode, ..cfg.clone() }.objective();
        sweep.validate().map_err(usage)?;
    }
    secjam_core::channel::Geometry::new(cfg.d_sd, cfg.d_sr, cfg.d_se).map_err(usage)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<CliConfig, CliError> {
        parse_args_with_env(std::iter::once("secjam").chain(args.iter().copied()), None)
    }

    #[test]
    fn sweep_defaults() {
        let cfg = parse(&["sweep", "--mode", "ratemax"]).unwrap();
        assert_eq!(cfg.command, Command::Sweep);
        assert_eq!((cfg.d_sd, cfg.d_sr, cfg.alpha), (50.0, 25.0, 3.5));
        assert_eq!((cfg.sigma2_dbm, cfg.p0_dbm), (-100.0, -40.0));
        assert_eq!(cfg.d_se_range.values().len(), 17);
        assert_eq!(cfg.antenna_counts, vec![2, 4]);
        assert_eq!((cfg.trials, cfg.seed), (1000, 0));
        assert_eq!(cfg.objective(), Objective::RateMax { p0_dbm: -40.0 });
    }

    #[test]
    fn repeated_antenna_flag_keeps_order() {
        let cfg = parse(&["sweep", "--n", "4", "--n", "2"]).unwrap();
        assert_eq!(cfg.antenna_counts, vec![4, 2]);
        assert_eq!(cfg.design_antennas(), 4);
    }

    #[test]
    fn bad_number_is_usage_error() {
        let err = parse(&["design-ratemax", "--p0-dbm", "abc"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_flag_and_missing_subcommand() {
        assert_eq!(parse(&["sweep", "--bogus"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&[]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn negative_dbm_values() {
        let cfg = parse(&["design-ratemax", "--p0-dbm", "-30", "--sigma2-dbm", "-90"]).unwrap();
        assert_eq!((cfg.p0_dbm, cfg.sigma2_dbm), (-30.0, -90.0));
    }

    #[test]
    fn range_parsing() {
        let r = parse_range("10:30:10").unwrap();
        assert_eq!(r.values(), vec![10.0, 20.0, 30.0]);
        assert!(parse_range("10:30").is_err());
        assert!(parse_range("a:30:1").is_err());
        assert!(parse_range("30:10:1").is_err());
    }

    #[test]
    fn single_distance_becomes_one_point_sweep() {
        let cfg = parse(&["sweep", "--d-se", "42"]).unwrap();
        assert_eq!(cfg.d_se_range.values(), vec![42.0]);
        assert_eq!(cfg.d_se, 42.0);
    }

    #[test]
    fn seed_precedence() {
        let run = |args: &[&str], env: Option<&str>| {
            parse_args_with_env(
                std::iter::once("secjam").chain(args.iter().copied()),
                env.map(String::from),
            )
        };
        assert_eq!(run(&["sweep"], None).unwrap().seed, 0);
        assert_eq!(run(&["sweep"], Some("7")).unwrap().seed, 7);
        assert_eq!(run(&["sweep", "--seed", "9"], Some("7")).unwrap().seed, 9);
        assert_eq!(run(&["sweep"], Some("x")).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn invalid_values_rejected() {
        for args in [
            ["sweep", "--trials", "0"],
            ["sweep", "--rs0", "-1"],
            ["sweep", "--d-sd", "-5"],
            ["sweep", "--n", "0"],
        ] {
            assert_eq!(parse(&args).unwrap_err().exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn verify_has_its_own_defaults() {
        let cfg = parse(&["verify"]).unwrap();
        assert_eq!(cfg.trials, DEFAULT_VERIFY_TRIALS);
        assert_eq!(cfg.d_se_range.values(), vec![15.0, 32.5, 50.0, 67.5, 85.0]);
    }
}
