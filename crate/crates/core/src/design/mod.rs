//! Closed-form null-steering designs.
//!
//! Both designs restrict the relay weight `w` to the null space of the
//! relay-destination channel (`w†h_RD = 0`), which makes the weight direction
//! a closed form in `h_RD` and `h_RE`. What is left is a scalar problem in the
//! source power `Ps`: the objective becomes a ratio of a quadratic and a
//! linear polynomial in `Ps`, whose stationary points solve one quadratic
//! equation ([`QuadCoeffs::stationary_roots`]).

mod power_min;
mod quadratic;
mod rate_max;

pub use power_min::{
    design_power_min, direct_transmission_power, powermin_coeffs, powermin_direction,
    rho_threshold, PowerMinProblem,
};
pub use quadratic::{real_quadratic_roots, solve_power_split, QuadCoeffs};
pub use rate_max::{design_rate_max, ratemax_coeffs, ratemax_direction, RateMaxProblem};

use std::f64::consts::LN_2;

use crate::channel::ChannelState;
use crate::cvec::{hermitian_inner, norm_sq, ComplexVector};
use crate::{Error, Result};

/// Relative Gram-determinant threshold below which `h_RD` and `h_RE` are
/// treated as parallel.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignMode {
    CooperativeJamming,
    DirectTransmission,
    Infeasible,
}

impl DesignMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignMode::CooperativeJamming => "cooperative_jamming",
            DesignMode::DirectTransmission => "direct_transmission",
            DesignMode::Infeasible => "infeasible",
        }
    }
}

impl std::fmt::Display for DesignMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of either design. Powers are in mW, rates in bits/s/Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignOutcome {
    pub mode: DesignMode,
    /// Source power.
    pub ps: f64,
    /// Relay weights; all zero unless jamming.
    pub w: ComplexVector,
    /// Jamming power, `‖w‖²`.
    pub pj: f64,
    /// Secrecy rate clamped at zero.
    pub secrecy_rate: f64,
    pub total_power: f64,
}

impl DesignOutcome {
    pub(crate) fn jamming(csi: &ChannelState, ps: f64, w: ComplexVector) -> Self {
        let pj = norm_sq(&w);
        let secrecy_rate = secrecy_rate(csi, ps, &w).expect("weights match channel length");
        Self {
            mode: DesignMode::CooperativeJamming,
            ps,
            w,
            pj,
            secrecy_rate,
            total_power: ps + pj,
        }
    }

    pub(crate) fn direct(csi: &ChannelState, ps: f64) -> Self {
        Self {
            mode: DesignMode::DirectTransmission,
            ps,
            w: zero_weights(csi),
            pj: 0.0,
            secrecy_rate: direct_transmission_rate(csi, ps),
            total_power: ps,
        }
    }

    pub(crate) fn infeasible(csi: &ChannelState) -> Self {
        Self {
            mode: DesignMode::Infeasible,
            ps: 0.0,
            w: zero_weights(csi),
            pj: 0.0,
            secrecy_rate: 0.0,
            total_power: 0.0,
        }
    }
}

fn zero_weights(csi: &ChannelState) -> ComplexVector {
    ComplexVector::zeros(csi.n()).expect("channel has at least one antenna")
}

/// `log2(1 + Ps|h_SD|²/(I_d + σ²)) - log2(1 + Ps|h_SE|²/(I_e + σ²))` for
/// jamming powers `I_d`, `I_e` received at destination and eavesdropper.
fn rate_difference(csi: &ChannelState, ps: f64, jam_at_d: f64, jam_at_e: f64) -> f64 {
    let sigma2 = csi.sigma2();
    let snr_d = ps * csi.gain_sd() / (jam_at_d + sigma2);
    let snr_e = ps * csi.gain_se() / (jam_at_e + sigma2);
    (snr_d.ln_1p() - snr_e.ln_1p()) / LN_2
}

/// Secrecy rate without the `max{0, ·}` clamp.
pub fn secrecy_rate_unclamped(csi: &ChannelState, ps: f64, w: &ComplexVector) -> Result<f64> {
    if !(ps >= 0.0 && ps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "source power must be non-negative, got {ps} mW"
        )));
    }
    let jam_at_d = hermitian_inner(w, csi.h_rd())?.norm_sqr();
    let jam_at_e = hermitian_inner(w, csi.h_re())?.norm_sqr();
    Ok(rate_difference(csi, ps, jam_at_d, jam_at_e))
}

/// Secrecy rate of source power `ps` with relay weights `w`, clamped at 0.
pub fn secrecy_rate(csi: &ChannelState, ps: f64, w: &ComplexVector) -> Result<f64> {
    secrecy_rate_unclamped(csi, ps, w).map(|r| r.max(0.0))
}

/// Secrecy rate with all power `p` at the source and the relay silent.
pub fn direct_transmission_rate(csi: &ChannelState, p: f64) -> f64 {
    rate_difference(csi, p.max(0.0), 0.0, 0.0).max(0.0)
}

fn direct_transmission_rate_unclamped(csi: &ChannelState, p: f64) -> f64 {
    rate_difference(csi, p, 0.0, 0.0)
}

/// Component of `h_re` orthogonal to `h_rd`, with its squared norm. Returns
/// `DegenerateChannels` when the Gram determinant
/// `‖h_RD‖²‖h_RE‖² - |h_RD†h_RE|²` (which equals `‖h_RD‖²·‖p‖²`) falls below
/// [`DEGENERACY_TOL`] relative.
fn orthogonal_component(
    h_rd: &ComplexVector,
    h_re: &ComplexVector,
) -> Result<(ComplexVector, f64)> {
    let r = norm_sq(h_rd);
    let y = norm_sq(h_re);
    if h_rd.len() != h_re.len() {
        return Err(Error::DimensionMismatch {
            left: h_rd.len(),
            right: h_re.len(),
        });
    }
    if h_rd.len() < 2 || r == 0.0 || y == 0.0 {
        return Err(Error::DegenerateChannels);
    }
    let one = num_complex::Complex64::new(1.0, 0.0);
    // two Gram-Schmidt passes keep p†h_RD at rounding level
    let c = hermitian_inner(h_rd, h_re)?;
    let mut p = crate::cvec::axpy(one, h_re, -c / r, h_rd)?;
    let c2 = hermitian_inner(h_rd, &p)?;
    p = crate::cvec::axpy(one, &p, -c2 / r, h_rd)?;
    let p_sq = norm_sq(&p);
    if !(r * p_sq > DEGENERACY_TOL * r * y) {
        return Err(Error::DegenerateChannels);
    }
    Ok((p, p_sq))
}

/// `‖h_RD‖²‖h_RE‖² - |h_RD†h_RE|²`, evaluated without cancellation.
pub fn gram_determinant(h_rd: &ComplexVector, h_re: &ComplexVector) -> Result<f64> {
    match orthogonal_component(h_rd, h_re) {
        Ok((_, p_sq)) => Ok(norm_sq(h_rd) * p_sq),
        Err(Error::DegenerateChannels) => {
            let c = hermitian_inner(h_rd, h_re)?;
            Ok((norm_sq(h_rd) * norm_sq(h_re) - c.norm_sqr()).max(0.0))
        }
        Err(e) => Err(e),
    }
}
