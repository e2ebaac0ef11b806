//! Total-power minimization under a secrecy-rate target `Rs0`.
//!
//! For a fixed source power the cheapest null-steering weight reaching the
//! target is `w = sqrt(ρ(Ps))·v`, where `ρ(Ps)` is the jamming power the
//! eavesdropper must receive and `v` satisfies `v†h_RD = 0`, `v†h_RE = 1`.
//! Total power `Ps + ρ(Ps)·‖v‖²` is then a quadratic-over-linear ratio in
//! `Ps` whose stationary points come from the same quadratic as the rate-max
//! design.

use num_complex::Complex64;

use super::{orthogonal_component, DesignOutcome, QuadCoeffs};
use crate::channel::ChannelState;
use crate::cvec::{norm_sq, ComplexVector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerMinProblem {
    pub csi: ChannelState,
    /// Secrecy-rate target in bits/s/Hz.
    pub rs0: f64,
}

impl PowerMinProblem {
    pub fn new(csi: ChannelState, rs0: f64) -> Result<Self> {
        if !(rs0.is_finite() && rs0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "secrecy-rate target must be positive, got {rs0}"
            )));
        }
        Ok(Self { csi, rs0 })
    }
}

/// `D(Ps) = 2^(-Rs0)·(1 + Ps|h_SD|²/σ²) - 1`; the target is reachable at `ps`
/// only when this is positive.
fn reachability_margin(csi: &ChannelState, ps: f64, rs0: f64) -> f64 {
    (-rs0).exp2() * (1.0 + ps * csi.gain_sd() / csi.sigma2()) - 1.0
}

/// Jamming power the eavesdropper must receive so that source power `ps`
/// achieves exactly `rs0`: `ρ = Ps|h_SE|²/D(Ps) - σ²`. Negative values mean
/// direct transmission at `ps` already beats the target.
pub fn rho_threshold(csi: &ChannelState, ps: f64, rs0: f64) -> Result<f64> {
    let margin = reachability_margin(csi, ps, rs0);
    if !(margin > 0.0) {
        return Err(Error::InfeasiblePs { ps });
    }
    Ok(ps * csi.gain_se() / margin - csi.sigma2())
}

/// Minimum-norm direction with `v†h_RD = 0` and `v†h_RE = 1`:
///
/// `v = (-(h_RD†h_RE)·h_RD + ‖h_RD‖²·h_RE) / (‖h_RD‖²‖h_RE‖² - |h_RD†h_RE|²)`
///
/// which is `p/‖p‖²` for `p` the part of `h_RE` orthogonal to `h_RD`.
pub fn powermin_direction(h_rd: &ComplexVector, h_re: &ComplexVector) -> Result<ComplexVector> {
    let (p, p_sq) = orthogonal_component(h_rd, h_re)?;
    Ok(p.scale(Complex64::new(p_sq.recip(), 0.0)))
}

/// Coefficients of the total power `Ps + ρ(Ps)·‖v‖²`. With `t = 2^(-Rs0)`
/// and `V = ‖v‖²`:
///
/// ```text
/// e0 = -(t - 1)σ²V                        f0 = t - 1
/// e1 = t - 1 + (|h_SE|² - t|h_SD|²)V      f1 = t|h_SD|²/σ²
/// e2 = t|h_SD|²/σ²
/// ```
pub fn powermin_coeffs(csi: &ChannelState, v: &ComplexVector, rs0: f64) -> Result<QuadCoeffs> {
    if v.len() != csi.n() {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: csi.n(),
        });
    }
    let t = (-rs0).exp2();
    let vv = norm_sq(v);
    let sigma2 = csi.sigma2();
    let g_sd = csi.gain_sd();
    let g_se = csi.gain_se();
    let e0 = -(t - 1.0) * sigma2 * vv;
    let e1 = t - 1.0 + (g_se - t * g_sd) * vv;
    let e2 = t * g_sd / sigma2;
    let f0 = t - 1.0;
    let f1 = t * g_sd / sigma2;
    QuadCoeffs::new(e0, e1, e2, f0, f1)
}

/// Source power at which direct transmission hits `rs0` exactly, or `None`
/// when no source power can (`|h_SD|² ≤ 2^Rs0·|h_SE|²`):
/// `P_dt = σ²(2^Rs0 - 1) / (|h_SD|² - 2^Rs0·|h_SE|²)`.
pub fn direct_transmission_power(csi: &ChannelState, rs0: f64) -> Option<f64> {
    let k = rs0.exp2();
    let gap = csi.gain_sd() - k * csi.gain_se();
    if gap > 0.0 {
        let p = csi.sigma2() * (k - 1.0) / gap;
        p.is_finite().then_some(p)
    } else {
        None
    }
}

/// Null-steering jamming design with the least total power meeting `rs0`.
///
/// Candidates are the stationary points of the total-power ratio where
/// jamming is actually needed (`D > 0`, `ρ > 0`) plus direct transmission when
/// it can meet the target on its own. `Infeasible` when neither exists.
pub fn design_power_min(problem: &PowerMinProblem) -> DesignOutcome {
    let csi = &problem.csi;
    let rs0 = problem.rs0;
    let direct = direct_transmission_power(csi, rs0);

    let v = match powermin_direction(csi.h_rd(), csi.h_re()) {
        Ok(v) => v,
        Err(_) => {
            return match direct {
                Some(p) => DesignOutcome::direct(csi, p),
                None => DesignOutcome::infeasible(csi),
            }
        }
    };
    let coeffs = powermin_coeffs(csi, &v, rs0).expect("direction matches channel length");

    let mut best: Option<(f64, f64, ComplexVector)> = None;
    for ps in coeffs.stationary_roots() {
        if !(ps > 0.0 && ps.is_finite()) {
            continue;
        }
        let rho = match rho_threshold(csi, ps, rs0) {
            Ok(rho) if rho > 0.0 && rho.is_finite() => rho,
            _ => continue,
        };
        let w = v.scale(Complex64::new(rho.sqrt(), 0.0));
        let total = ps + norm_sq(&w);
        if best.as_ref().is_none_or(|(t, _, _)| total < *t) {
            best = Some((total, ps, w));
        }
    }

    match (best, direct) {
        (Some((total, ps, w)), Some(p_dt)) if total < p_dt => DesignOutcome::jamming(csi, ps, w),
        (Some((_, ps, w)), None) => DesignOutcome::jamming(csi, ps, w),
        (_, Some(p_dt)) => DesignOutcome::direct(csi, p_dt),
        (None, None) => DesignOutcome::infeasible(csi),
    }
}
