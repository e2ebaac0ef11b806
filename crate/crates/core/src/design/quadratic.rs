use crate::{Error, Result};

/// Coefficients of the ratio `(e0 + e1·Ps + e2·Ps²) / (f0 + f1·Ps)`.
///
/// For the rate-max design the ratio is `2^Rs`; for the power-min design it
/// is the total transmit power. Units depend on which design produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCoeffs {
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub f0: f64,
    pub f1: f64,
}

impl QuadCoeffs {
    pub fn new(e0: f64, e1: f64, e2: f64, f0: f64, f1: f64) -> Result<Self> {
        let c = Self { e0, e1, e2, f0, f1 };
        if [e0, e1, e2, f0, f1].iter().all(|x| x.is_finite()) {
            Ok(c)
        } else {
            Err(Error::NonFinite("quadratic coefficients"))
        }
    }

    pub fn numerator(&self, ps: f64) -> f64 {
        self.e0 + ps * (self.e1 + ps * self.e2)
    }

    pub fn denominator(&self, ps: f64) -> f64 {
        self.f0 + self.f1 * ps
    }

    pub fn ratio(&self, ps: f64) -> f64 {
        self.numerator(ps) / self.denominator(ps)
    }

    /// Real solutions of `e2·f1·Ps² + 2·e2·f0·Ps + (e1·f0 - e0·f1) = 0`, the
    /// zeros of the ratio's derivative.
    pub fn stationary_roots(&self) -> Vec<f64> {
        // the equation is linear in the e's and in the f's separately, so each
        // group can be normalized on its own
        let e_scale = [self.e0, self.e1, self.e2]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let f_scale = [self.f0, self.f1].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if e_scale == 0.0 || f_scale == 0.0 {
            return Vec::new();
        }
        let (e0, e1, e2) = (self.e0 / e_scale, self.e1 / e_scale, self.e2 / e_scale);
        let (f0, f1) = (self.f0 / f_scale, self.f1 / f_scale);
        real_quadratic_roots(e2 * f1, 2.0 * e2 * f0, e1 * f0 - e0 * f1)
    }
}

/// Real roots of `a·x² + b·x + c = 0`, ascending.
///
/// Uses the cancellation-free pairing: `q = -(b + sign(b)·√disc)/2`, roots
/// `q/a` and `c/q`. Falls back to the linear root when `a == 0`; returns no
/// roots for the constant case.
pub fn real_quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 || !scale.is_finite() {
        return Vec::new();
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q == 0.0 {
        // b == 0 and c == 0
        vec![0.0]
    } else {
        vec![q / a, c / q]
    };
    roots.retain(|x| x.is_finite());
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Source power in `(0, p0]` maximizing the ratio, chosen from the stationary
/// roots inside the interval and the endpoint `p0`.
pub fn solve_power_split(coeffs: &QuadCoeffs, p0: f64) -> f64 {
    let mut best = p0;
    let mut best_ratio = coeffs.ratio(p0);
    for ps in coeffs.stationary_roots() {
        if !(ps > 0.0 && ps <= p0) {
            continue;
        }
        let r = coeffs.ratio(ps);
        if r.is_finite() && (!best_ratio.is_finite() || r > best_ratio) {
            best = ps;
            best_ratio = r;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(got: &[f64], want: &[f64]) -> bool {
        got.len() == want.len()
            && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= 1e-15 * w.abs().max(1.0))
    }

    #[test]
    fn roots_of_simple_quadratics() {
        let roots = real_quadratic_roots(1.0, -3.0, 2.0);
        assert!(close(&roots, &[1.0, 2.0]), "{roots:?}");
        assert_eq!(real_quadratic_roots(1.0, 0.0, 1.0), Vec::<f64>::new());
        assert_eq!(real_quadratic_roots(0.0, -4.0, 2.0), vec![0.5]);
        assert_eq!(real_quadratic_roots(0.0, 0.0, 3.0), Vec::<f64>::new());
        assert_eq!(real_quadratic_roots(2.0, 0.0, 0.0), vec![0.0]);
        assert_eq!(real_quadratic_roots(1.0, -2.0, 1.0), vec![1.0]);
    }

    #[test]
    fn small_root_without_cancellation() {
        // x² - 1e8 x + 1 has roots ~1e8 and ~1e-8
        let roots = real_quadratic_roots(1.0, -1e8, 1.0);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1e-8).abs() <= 1e-22);
        assert!((roots[1] - 1e8).abs() <= 1e-6);
    }

    #[test]
    fn linear_case_from_worked_example() {
        // e0=2, e1=1, e2=-1, f0=2, f1=0: -4·Ps + 2 = 0
        let c = QuadCoeffs::new(2.0, 1.0, -1.0, 2.0, 0.0).unwrap();
        assert_eq!(c.stationary_roots(), vec![0.5]);
        assert_eq!(c.ratio(0.5), 1.125);
        assert_eq!(c.ratio(1.0), 1.0);
        assert_eq!(solve_power_split(&c, 1.0), 0.5);
    }

    #[test]
    fn no_root_in_interval_falls_back_to_budget() {
        // ratio (1 + Ps)/1 is increasing, no stationary point
        let c = QuadCoeffs::new(1.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(solve_power_split(&c, 3.0), 3.0);
        // stationary point at Ps = 2 lies outside (0, 1]
        let c = QuadCoeffs::new(0.0, 4.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(c.stationary_roots(), vec![2.0]);
        assert_eq!(solve_power_split(&c, 1.0), 1.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(QuadCoeffs::new(f64::NAN, 0.0, 0.0, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn roots_satisfy_equation(a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64) {
            for x in real_quadratic_roots(a, b, c) {
                let residual = a * x * x + b * x + c;
                let scale = (a * x * x).abs() + (b * x).abs() + c.abs();
                prop_assert!(residual.abs() <= 1e-12 * scale.max(1e-300));
            }
        }

        // Brute-force grid never beats the selected split, for coefficients of
        // the shape the rate-max design produces.
        #[test]
        fn split_beats_grid(
            sigma2 in 0.01..10.0f64, a in 0.0..10.0f64, g_sd in 0.01..10.0f64,
            g_se in 0.01..10.0f64, p0 in 0.1..10.0f64,
        ) {
            let c = QuadCoeffs::new(
                sigma2 * (sigma2 + p0 * a),
                (g_sd * p0 - sigma2) * a + g_sd * sigma2,
                -g_sd * a,
                sigma2 * (sigma2 + p0 * a),
                sigma2 * (g_se - a),
            ).unwrap();
            let ps = solve_power_split(&c, p0);
            prop_assert!(ps > 0.0 && ps <= p0);
            // ratio(0) = 1, so when the supremum sits at Ps -> 0 every clamped
            // rate is zero anyway
            let rate = |x: f64| c.ratio(x).log2().max(0.0);
            let best = rate(ps);
            for k in 1..=2000 {
                let x = p0 * k as f64 / 2000.0;
                prop_assert!(rate(x) <= best + 1e-9);
            }
        }
    }
}
