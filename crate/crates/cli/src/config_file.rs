//! Flat `key = value` configuration files.
//!
//! Keys are the long flag names with dashes replaced by underscores. Blank
//! lines and everything after `#` are ignored. `n` may be given as a
//! comma-separated list or repeated on several lines; any other key may
//! appear once.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;

use crate::args::{parse_range, Flags, Mode};
use crate::error::CliError;

#[derive(Debug, Default)]
pub(crate) struct FileConfig {
    pub flags: Flags,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::ConfigRead {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let mut flags = Flags::default();
        let mut seen = HashSet::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let err = |message: String| CliError::Config {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(format!("expected 'key = value', got '{line}'")));
            };
            let (key, value) = (key.trim(), value.trim());
            if key != "n" && !seen.insert(key.to_string()) {
                return Err(err(format!("duplicate key '{key}'")));
            }
            match key {
                "d_sd" => flags.d_sd = Some(number(value).map_err(err)?),
                "d_sr" => flags.d_sr = Some(number(value).map_err(err)?),
                "d_se" => flags.d_se = Some(number(value).map_err(err)?),
                "d_se_range" => flags.d_se_range = Some(parse_range(value).map_err(err)?),
                "alpha" => flags.alpha = Some(number(value).map_err(err)?),
                "sigma2_dbm" => flags.sigma2_dbm = Some(number(value).map_err(err)?),
                "p0_dbm" => flags.p0_dbm = Some(number(value).map_err(err)?),
                "rs0" => flags.rs0 = Some(number(value).map_err(err)?),
                "min_distance" => flags.min_distance = Some(number(value).map_err(err)?),
                "trials" => flags.trials = Some(number(value).map_err(err)?),
                "seed" => flags.seed = Some(number(value).map_err(err)?),
                "n" => {
                    for item in value.split(',') {
                        flags.n.push(number(item.trim()).map_err(err)?);
                    }
                }
                "out" => flags.out = Some(PathBuf::from(value)),
                "mode" => {
                    flags.mode = Some(
                        Mode::from_str(value, false)
                            .map_err(|_| err(format!("mode must be ratemax or powermin, got '{value}'")))?,
                    )
                }
                "verbose" => {
                    flags.verbose = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(err(format!("verbose must be true or false, got '{value}'"))),
                    }
                }
                _ => return Err(err(format!("unknown key '{key}'"))),
            }
        }
        Ok(Self { flags })
    }
}

fn number<T: FromStr>(value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("'{value}' is not a valid {}", std::any::type_name::<T>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<FileConfig, CliError> {
        FileConfig::parse(text, Path::new("test.conf"))
    }

    #[test]
    fn reads_all_keys() {
        let cfg = parse(
            "# scenario\n\
             d_sd = 60\n\
             d_sr=20 # inline comment\n\
             d_se_range = 10:20:5\n\
             p0_dbm = -35\n\
             n = 3, 5\n\
             n = 8\n\
             mode = powermin\n\
             verbose = true\n\
             seed = 12\n\
             out = sweep.csv\n",
        )
        .unwrap();
        let f = cfg.flags;
        assert_eq!((f.d_sd, f.d_sr, f.p0_dbm), (Some(60.0), Some(20.0), Some(-35.0)));
        assert_eq!(f.d_se_range.unwrap().values(), vec![10.0, 15.0, 20.0]);
        assert_eq!(f.n, vec![3, 5, 8]);
        assert_eq!(f.mode, Some(Mode::Powermin));
        assert!(f.verbose);
        assert_eq!(f.seed, Some(12));
        assert_eq!(f.out, Some(PathBuf::from("sweep.csv")));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line_of = |text: &str| match parse(text).unwrap_err() {
            CliError::Config { line, .. } => line,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(line_of("alpha = 3\nalpha = 4\n"), 2);
        assert_eq!(line_of("\n\nbogus = 1\n"), 3);
        assert_eq!(line_of("p0_dbm = abc\n"), 1);
        assert_eq!(line_of("just words\n"), 1);
        assert_eq!(line_of("config = other.conf\n"), 1);
        assert_eq!(line_of("mode = fast\n"), 1);
    }

    #[test]
    fn missing_file_is_config_error() {
        let err = FileConfig::load(Path::new("/nonexistent/secjam.conf")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
