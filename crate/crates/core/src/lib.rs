//! Cooperative jamming with a multi-antenna relay.
//!
//! A source talks to a destination while an eavesdropper listens. A trusted
//! relay with `N` antennas transmits a jamming signal that is steered into the
//! null of the relay-destination channel, so only the eavesdropper is hurt.
//! This crate computes the relay weights and the source/jammer power split in
//! closed form for two objectives:
//!
//! * maximize the secrecy rate under a total power budget
//!   ([`design::design_rate_max`]);
//! * minimize the total power under a secrecy-rate target
//!   ([`design::design_power_min`]).
//!
//! [`oracle`] holds brute-force checks for every closed form, and [`sim`]
//! runs seeded Monte Carlo sweeps over the eavesdropper position on a line
//! geometry.
//!
//! All powers are linear milliwatts inside the library; [`units`] converts at
//! the boundary.

pub mod channel;
pub mod cvec;
pub mod design;
mod error;
pub mod oracle;
pub mod sim;
pub mod units;

pub use error::{Error, Result};
