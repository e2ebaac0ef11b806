//! Brute-force checks for the closed-form designs.
//!
//! Each oracle searches the same restricted problem the design solves
//! analytically, by exhaustive evaluation instead of algebra: a uniform grid
//! over the source power, or random weights drawn from the nulling subspace.
//! An oracle must never beat the matching design beyond rounding, and a fine
//! enough grid should come close to it.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::ChannelState;
use crate::cvec::{hermitian_inner, norm_sq, ComplexVector};
use crate::design::{
    direct_transmission_power, gram_determinant, powermin_direction, ratemax_direction,
    rho_threshold, secrecy_rate_unclamped,
};
use crate::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 10_000;

/// `points` uniformly spaced values from `lo` to `hi`, both included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub lo: f64,
    pub hi: f64,
}

impl GridSpec {
    pub fn new(points: usize, lo: f64, hi: f64) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {points}")));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidGrid(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { points, lo, hi })
    }

    /// `(0, p0]` sampled at `p0/points, 2·p0/points, ..., p0`.
    pub fn rate_max(p0: f64, points: usize) -> Result<Self> {
        Self::new(points, p0 / points as f64, p0)
    }

    /// A grid over the reachable source powers that is guaranteed to contain
    /// the power-min optimum.
    ///
    /// The lower end is the reachability boundary `σ²(2^Rs0 - 1)/|h_SD|²`.
    /// The optimal `Ps` never exceeds the optimal total power, which is at
    /// most the total power at any feasible point; twice the boundary and the
    /// direct-transmission power both give such a bound.
    pub fn power_min(csi: &ChannelState, rs0: f64, points: usize) -> Result<Self> {
        let lo = csi.sigma2() * (rs0.exp2() - 1.0) / csi.gain_sd();
        let mut hi = total_power_at(csi, rs0, 2.0 * lo).unwrap_or(f64::INFINITY);
        if let Some(p_dt) = direct_transmission_power(csi, rs0) {
            hi = hi.min(p_dt);
        }
        if !hi.is_finite() {
            return Err(Error::InfeasiblePs { ps: 2.0 * lo });
        }
        Self::new(points, lo, hi)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points).map(move |k| {
            if k + 1 == self.points {
                self.hi
            } else {
                self.lo + step * k as f64
            }
        })
    }
}

/// Total power `Ps + max(ρ, 0)·‖v‖²` of the cheapest nulling weight meeting
/// `rs0` at source power `ps`, or `None` when `ps` cannot reach the target.
fn total_power_at(csi: &ChannelState, rs0: f64, ps: f64) -> Option<f64> {
    let rho = rho_threshold(csi, ps, rs0).ok()?;
    if rho <= 0.0 {
        return Some(ps);
    }
    let v = powermin_direction(csi.h_rd(), csi.h_re()).ok()?;
    Some(ps + rho * norm_sq(&v))
}

/// Grid search for the rate-max source power along a fixed unit direction
/// `v`. Returns the best `(Ps, rate)`; the rate is clamped at zero.
pub fn grid_best_ps_ratemax_along(
    csi: &ChannelState,
    v: &ComplexVector,
    p0: f64,
    grid: &GridSpec,
) -> Result<(f64, f64)> {
    if !(grid.lo > 0.0 && grid.hi <= p0) {
        return Err(Error::InvalidGrid(format!(
            "grid [{}, {}] must lie in (0, {p0}]",
            grid.lo, grid.hi
        )));
    }
    let mut best = (grid.lo, f64::NEG_INFINITY);
    for ps in grid.values() {
        let w = v.scale(Complex64::new((p0 - ps).max(0.0).sqrt(), 0.0));
        let rate = secrecy_rate_unclamped(csi, ps, &w)?;
        if rate > best.1 {
            best = (ps, rate);
        }
    }
    Ok((best.0, best.1.max(0.0)))
}

/// Grid search over `Ps` for the null-steering rate-max problem.
pub fn grid_best_ps_ratemax(csi: &ChannelState, p0: f64, grid: &GridSpec) -> Result<(f64, f64)> {
    let v = ratemax_direction(csi.h_rd(), csi.h_re())?;
    grid_best_ps_ratemax_along(csi, &v, p0, grid)
}

/// Grid search over `Ps` minimizing `Ps + max(ρ(Ps), 0)·‖v‖²`. Points where
/// the target is unreachable are skipped; with degenerate relay channels only
/// points that need no jamming count.
pub fn grid_best_ps_powermin(csi: &ChannelState, rs0: f64, grid: &GridSpec) -> Result<(f64, f64)> {
    let vv = powermin_direction(csi.h_rd(), csi.h_re())
        .ok()
        .map(|v| norm_sq(&v));
    let mut best: Option<(f64, f64)> = None;
    for ps in grid.values() {
        let rho = match rho_threshold(csi, ps, rs0) {
            Ok(rho) => rho,
            Err(_) => continue,
        };
        let total = if rho <= 0.0 {
            ps
        } else if let Some(vv) = vv {
            ps + rho * vv
        } else {
            continue;
        };
        if best.is_none_or(|(_, t)| total < t) {
            best = Some((ps, total));
        }
    }
    best.ok_or(Error::InfeasiblePs { ps: grid.hi })
}

/// Largest `|w†h_RE|²` among `samples` random weights with `w†h_RD = 0` and
/// `‖w‖² = pj`. Directions are complex Gaussian draws with `h_RD` projected
/// out.
pub fn subspace_weight_search<R: Rng + ?Sized>(
    csi: &ChannelState,
    pj: f64,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let h_rd = csi.h_rd();
    let r = norm_sq(h_rd);
    if csi.n() < 2 || r == 0.0 {
        return Err(Error::DegenerateChannels);
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut best = 0.0f64;
    let mut drawn = 0;
    while drawn < samples {
        let z: Vec<Complex64> = (0..csi.n())
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let mut u = ComplexVector::new(z)?;
        for _ in 0..2 {
            let c = hermitian_inner(h_rd, &u)?;
            u = crate::cvec::axpy(one, &u, -c / r, h_rd)?;
        }
        let u_sq = norm_sq(&u);
        if u_sq <= f64::EPSILON * r {
            continue;
        }
        drawn += 1;
        let w = u.scale(Complex64::new((pj / u_sq).sqrt(), 0.0));
        best = best.max(hermitian_inner(&w, csi.h_re())?.norm_sqr());
    }
    Ok(best)
}

/// `max |w†h_RE|²` over the nulling subspace with `‖w‖² = pj`, which is
/// `pj·(‖h_RD‖²‖h_RE‖² - |h_RD†h_RE|²)/‖h_RD‖²`.
pub fn nulling_optimum(csi: &ChannelState, pj: f64) -> Result<f64> {
    Ok(pj * gram_determinant(csi.h_rd(), csi.h_re())? / norm_sq(csi.h_rd()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{realize, trial_rng, ChannelParams, Geometry};
    use crate::design::{design_power_min, design_rate_max, PowerMinProblem, RateMaxProblem};

    fn v(pairs: &[(f64, f64)]) -> ComplexVector {
        ComplexVector::from_pairs(pairs).unwrap()
    }

    fn unit_csi(h_rd: &[(f64, f64)], h_re: &[(f64, f64)], g_sd: f64) -> ChannelState {
        let h_rd = v(h_rd);
        ChannelState::new(
            Complex64::new(g_sd.sqrt(), 0.0),
            Complex64::new(1.0, 0.0),
            ComplexVector::zeros(h_rd.len()).unwrap(),
            h_rd,
            v(h_re),
            1.0,
        )
        .unwrap()
    }

    fn realization(d_se: f64, n: usize, stream: u64) -> ChannelState {
        let geom = Geometry::new(50.0, 25.0, d_se).unwrap();
        let params = ChannelParams::new(3.5, 1e-10, n).unwrap();
        realize(&geom, &params, &mut trial_rng(77, stream)).unwrap()
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(1, 0.0, 1.0).is_err());
        assert!(GridSpec::new(5, 1.0, 1.0).is_err());
        let g = GridSpec::new(5, 0.0, 1.0).unwrap();
        assert_eq!(g.values().collect::<Vec<_>>(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn ratemax_grid_never_beats_design() {
        let p0 = 1e-4;
        for (i, d_se) in [15.0, 24.0, 40.0, 60.0, 85.0].into_iter().enumerate() {
            let csi = realization(d_se, 2, i as u64);
            let grid = GridSpec::rate_max(p0, 2_000).unwrap();
            let (_, grid_rate) = grid_best_ps_ratemax(&csi, p0, &grid).unwrap();
            let out = design_rate_max(&RateMaxProblem::new(csi, p0).unwrap());
            assert!(grid_rate <= out.secrecy_rate + 1e-9);
            assert!(out.secrecy_rate - grid_rate <= 1e-3);
        }
    }

    #[test]
    fn grid_through_analytic_point_is_exact() {
        // analytic optimum Ps = 0.5 sits on the grid
        let csi = unit_csi(&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0)], 1.0);
        let grid = GridSpec::rate_max(1.0, 10).unwrap();
        let (ps, rate) = grid_best_ps_ratemax(&csi, 1.0, &grid).unwrap();
        let out = design_rate_max(&RateMaxProblem::new(csi, 1.0).unwrap());
        assert_eq!(ps, 0.5);
        assert!((rate - out.secrecy_rate).abs() <= 1e-12);
    }

    #[test]
    fn useless_jamming_puts_everything_on_source() {
        // v ⟂ h_RE, so the relay cannot reach the eavesdropper
        let csi = unit_csi(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)], &[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)], 4.0);
        let dir = v(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let grid = GridSpec::rate_max(1.0, 100).unwrap();
        let (ps, _) = grid_best_ps_ratemax_along(&csi, &dir, 1.0, &grid).unwrap();
        assert_eq!(ps, 1.0);
    }

    #[test]
    fn ratemax_grid_rejects_out_of_range() {
        let csi = unit_csi(&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0)], 1.0);
        let grid = GridSpec::new(10, 0.0, 1.0).unwrap();
        assert!(grid_best_ps_ratemax(&csi, 1.0, &grid).is_err());
        let grid = GridSpec::new(10, 0.1, 2.0).unwrap();
        assert!(grid_best_ps_ratemax(&csi, 1.0, &grid).is_err());
    }

    #[test]
    fn powermin_grid_matches_worked_example() {
        let csi = unit_csi(&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0)], 1.0);
        let grid = GridSpec::power_min(&csi, 1.0, DEFAULT_GRID_POINTS).unwrap();
        let (ps, total) = grid_best_ps_powermin(&csi, 1.0, &grid).unwrap();
        let out = design_power_min(&PowerMinProblem::new(csi, 1.0).unwrap());
        assert!(total >= out.total_power * (1.0 - 1e-9));
        assert!((ps - out.ps).abs() <= (grid.hi - grid.lo) / 1e4 * 2.0);
        assert!(total - out.total_power <= 1e-6);
    }

    #[test]
    fn powermin_grid_without_jamming_need() {
        // |h_SD|² = 16, |h_SE|² = 1: target 1 bit needs no jamming
        let csi = unit_csi(&[(1.0, 0.0)], &[(1.0, 0.0)], 16.0);
        let p_dt = direct_transmission_power(&csi, 1.0).unwrap();
        let grid = GridSpec::new(1001, p_dt, 2.0 * p_dt).unwrap();
        let (ps, total) = grid_best_ps_powermin(&csi, 1.0, &grid).unwrap();
        // the first point may land a rounding error inside the jamming region
        assert!(ps - p_dt <= 2.0 * p_dt / 1000.0);
        assert_eq!(total, ps);
    }

    #[test]
    fn powermin_grid_empty_domain() {
        let csi = unit_csi(&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0)], 1.0);
        // D(Ps) > 0 needs Ps > 1
        let grid = GridSpec::new(10, 0.1, 0.9).unwrap();
        assert!(matches!(
            grid_best_ps_powermin(&csi, 1.0, &grid),
            Err(Error::InfeasiblePs { .. })
        ));
    }

    #[test]
    fn two_antenna_subspace_is_one_dimensional() {
        let csi = realization(30.0, 2, 4);
        let optimum = nulling_optimum(&csi, 1e-5).unwrap();
        let best = subspace_weight_search(&csi, 1e-5, 3, &mut trial_rng(1, 1)).unwrap();
        assert!((best - optimum).abs() <= 1e-9 * optimum);
    }

    #[test]
    fn four_antenna_search_approaches_optimum() {
        let csi = realization(35.0, 4, 9);
        let pj = 2e-5;
        let optimum = nulling_optimum(&csi, pj).unwrap();
        let dir = ratemax_direction(csi.h_rd(), csi.h_re()).unwrap();
        let analytic = pj * hermitian_inner(&dir, csi.h_re()).unwrap().norm_sqr();
        assert!((optimum - analytic).abs() <= 1e-12 * analytic);
        let best = subspace_weight_search(&csi, pj, 20_000, &mut trial_rng(2, 2)).unwrap();
        assert!(best <= optimum * (1.0 + 1e-9));
        assert!(best >= 0.95 * optimum);
    }

    #[test]
    fn parallel_channels_leave_nothing_to_jam() {
        let csi = unit_csi(&[(1.0, 0.0), (0.0, 1.0)], &[(2.0, 0.0), (0.0, 2.0)], 1.0);
        let best = subspace_weight_search(&csi, 1.0, 100, &mut trial_rng(3, 3)).unwrap();
        assert!(best <= 1e-20);
        assert_eq!(nulling_optimum(&csi, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn single_antenna_has_no_subspace() {
        let csi = unit_csi(&[(1.0, 0.0)], &[(1.0, 0.0)], 1.0);
        assert_eq!(
            subspace_weight_search(&csi, 1.0, 10, &mut trial_rng(0, 0)),
            Err(Error::DegenerateChannels)
        );
    }
}
