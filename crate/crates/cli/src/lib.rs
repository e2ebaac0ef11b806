//! Command-line front end for `secjam-core`.
//!
//! `parse_args` merges flags, an optional config file, the `SECJAM_SEED`
//! environment variable and built-in defaults into a [`CliConfig`]; `run`
//! executes it and returns the exit status.

mod args;
mod config_file;
mod error;
mod run;
mod verify;

pub use args::{
    parse_args, parse_args_with_env, CliConfig, Command, Mode, DEFAULT_D_SE,
    DEFAULT_VERIFY_TRIALS, SEED_ENV,
};
pub use error::CliError;
pub use run::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
pub use verify::run_verify;
