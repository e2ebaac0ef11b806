//! Line-of-sight channel realizations on a one-dimensional layout.
//!
//! The source sits at the origin; destination, relay and eavesdropper sit at
//! positive coordinates on the same line. Every link has magnitude
//! `d^(-alpha/2)` and an independent phase uniform on `[0, 2π)`. The relay
//! antennas are co-located, so the entries of a relay channel vector share
//! one magnitude and differ only in phase.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cvec::{ComplexScalar, ComplexVector};
use crate::{Error, Result};

/// Counter-based random stream used for every channel draw.
pub type TrialRng = ChaCha8Rng;

/// Stream `stream` of the generator keyed by `seed`. Distinct stream ids are
/// independent, so trials can run in any order.
pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Node positions along the line, as distances from the source in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub d_sd: f64,
    pub d_sr: f64,
    pub d_se: f64,
}

impl Geometry {
    pub fn new(d_sd: f64, d_sr: f64, d_se: f64) -> Result<Self> {
        let geom = Self { d_sd, d_sr, d_se };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        for d in [self.d_sd, self.d_sr, self.d_se] {
            if !d.is_finite() || d <= 0.0 {
                return Err(Error::NonPositiveDistance(d));
            }
        }
        Ok(())
    }

    pub fn d_rd(&self) -> f64 {
        (self.d_sd - self.d_sr).abs()
    }

    pub fn d_re(&self) -> f64 {
        (self.d_se - self.d_sr).abs()
    }

    /// Same layout with the eavesdropper moved.
    pub fn with_eavesdropper(&self, d_se: f64) -> Result<Self> {
        Self::new(self.d_sd, self.d_sr, d_se)
    }
}

impl Default for Geometry {
    /// Source-destination 50 m with the relay at the midpoint.
    fn default() -> Self {
        Self {
            d_sd: 50.0,
            d_sr: 25.0,
            d_se: 30.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Path-loss exponent.
    pub alpha: f64,
    /// Noise power in mW.
    pub sigma2: f64,
    /// Relay antenna count.
    pub n: usize,
    /// Link distances below this are evaluated at this distance. Zero makes
    /// coincident nodes an error.
    pub min_distance: f64,
}

impl ChannelParams {
    pub const DEFAULT_ALPHA: f64 = 3.5;
    pub const DEFAULT_MIN_DISTANCE: f64 = 1.0;

    pub fn new(alpha: f64, sigma2: f64, n: usize) -> Result<Self> {
        let params = Self {
            alpha,
            sigma2,
            n,
            min_distance: Self::DEFAULT_MIN_DISTANCE,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_min_distance(mut self, min_distance: f64) -> Result<Self> {
        self.min_distance = min_distance;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "path-loss exponent must be positive, got {}",
                self.alpha
            )));
        }
        if !(self.sigma2.is_finite() && self.sigma2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise power must be positive, got {} mW",
                self.sigma2
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("antenna count must be at least 1".into()));
        }
        if !(self.min_distance.is_finite() && self.min_distance >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "minimum distance must be non-negative, got {}",
                self.min_distance
            )));
        }
        Ok(())
    }
}

/// Full CSI snapshot plus the noise power.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelState {
    h_sd: ComplexScalar,
    h_se: ComplexScalar,
    // |h_SD|², |h_SE|², kept separately so they are exact functions of distance
    gain_sd: f64,
    gain_se: f64,
    h_sr: ComplexVector,
    h_rd: ComplexVector,
    h_re: ComplexVector,
    sigma2: f64,
}

impl ChannelState {
    pub fn new(
        h_sd: ComplexScalar,
        h_se: ComplexScalar,
        h_sr: ComplexVector,
        h_rd: ComplexVector,
        h_re: ComplexVector,
        sigma2: f64,
    ) -> Result<Self> {
        if !(h_sd.is_finite() && h_se.is_finite()) {
            return Err(Error::NonFinite("scalar channel"));
        }
        if !(sigma2.is_finite() && sigma2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise power must be positive, got {sigma2} mW"
            )));
        }
        let n = h_rd.len();
        for len in [h_sr.len(), h_re.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { left: n, right: len });
            }
        }
        Ok(Self {
            h_sd,
            h_se,
            gain_sd: h_sd.norm_sqr(),
            gain_se: h_se.norm_sqr(),
            h_sr,
            h_rd,
            h_re,
            sigma2,
        })
    }

    pub fn h_sd(&self) -> ComplexScalar {
        self.h_sd
    }

    pub fn h_se(&self) -> ComplexScalar {
        self.h_se
    }

    /// Source-relay channel. Not used by any design; kept for completeness.
    pub fn h_sr(&self) -> &ComplexVector {
        &self.h_sr
    }

    pub fn h_rd(&self) -> &ComplexVector {
        &self.h_rd
    }

    pub fn h_re(&self) -> &ComplexVector {
        &self.h_re
    }

    /// Noise power in mW.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Relay antenna count.
    pub fn n(&self) -> usize {
        self.h_rd.len()
    }

    /// `|h_SD|²`
    pub fn gain_sd(&self) -> f64 {
        self.gain_sd
    }

    /// `|h_SE|²`
    pub fn gain_se(&self) -> f64 {
        self.gain_se
    }

    /// Multiplies every channel by `c` and the noise power by `|c|²`.
    pub fn scaled(&self, c: ComplexScalar) -> Self {
        Self {
            h_sd: c * self.h_sd,
            h_se: c * self.h_se,
            gain_sd: c.norm_sqr() * self.gain_sd,
            gain_se: c.norm_sqr() * self.gain_se,
            h_sr: self.h_sr.scale(c),
            h_rd: self.h_rd.scale(c),
            h_re: self.h_re.scale(c),
            sigma2: c.norm_sqr() * self.sigma2,
        }
    }
}

/// One line-of-sight gain: magnitude `d^(-alpha/2)`, uniform random phase.
pub fn los_gain<R: Rng + ?Sized>(d: f64, alpha: f64, rng: &mut R) -> Result<ComplexScalar> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::NonPositiveDistance(d));
    }
    let magnitude = d.powf(-alpha / 2.0);
    let phase = rng.random::<f64>() * TAU;
    Ok(Complex64::from_polar(magnitude, phase))
}

fn link_distance(d: f64, min_distance: f64, link: &'static str) -> Result<f64> {
    let d = d.max(min_distance);
    if d <= 0.0 {
        return Err(Error::CoincidentNodes(link));
    }
    Ok(d)
}

fn los_vector<R: Rng + ?Sized>(
    d: f64,
    alpha: f64,
    n: usize,
    rng: &mut R,
) -> Result<ComplexVector> {
    let entries = (0..n)
        .map(|_| los_gain(d, alpha, rng))
        .collect::<Result<Vec<_>>>()?;
    ComplexVector::new(entries)
}

/// Draws a full CSI snapshot. Draw order is `h_SD, h_SE, h_SR, h_RD, h_RE`.
pub fn realize<R: Rng + ?Sized>(
    geom: &Geometry,
    params: &ChannelParams,
    rng: &mut R,
) -> Result<ChannelState> {
    geom.validate()?;
    params.validate()?;
    let min = params.min_distance;
    let d_sd = link_distance(geom.d_sd, min, "source-destination")?;
    let d_se = link_distance(geom.d_se, min, "source-eavesdropper")?;
    let d_sr = link_distance(geom.d_sr, min, "source-relay")?;
    let d_rd = link_distance(geom.d_rd(), min, "relay-destination")?;
    let d_re = link_distance(geom.d_re(), min, "relay-eavesdropper")?;

    let h_sd = los_gain(d_sd, params.alpha, rng)?;
    let h_se = los_gain(d_se, params.alpha, rng)?;
    let h_sr = los_vector(d_sr, params.alpha, params.n, rng)?;
    let h_rd = los_vector(d_rd, params.alpha, params.n, rng)?;
    let h_re = los_vector(d_re, params.alpha, params.n, rng)?;
    let mut csi = ChannelState::new(h_sd, h_se, h_sr, h_rd, h_re, params.sigma2)?;
    csi.gain_sd = d_sd.powf(-params.alpha);
    csi.gain_se = d_se.powf(-params.alpha);
    Ok(csi)
}
