//! Real potential q on ℝ₊ with the exponential weight condition
//! ∫ e^{2ax}|q(x)|² dx < ∞ and its autocorrelation g_q.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::interp::Spline;
use crate::{quad, C64};

/// The non-local potential: a real function on the half-axis together with
/// its admissible decay rate `decay_a` and first moment ∫ x q(x) dx.
pub struct Potential {
    source: Source,
    /// Largest a with ∫ e^{2ax}|q|² dx < ∞ that the carrier guarantees.
    pub decay_a: f64,
    /// ∫₀^∞ x q(x) dx.
    pub moment: f64,
    /// Whether |moment|² = 1 is asserted (required by the inverse pipeline).
    pub normalized: bool,
    gq_table: OnceLock<Spline>,
    ft_sq_table: OnceLock<Spline>,
}

/// Truncation radius of spectral integrals over ℝ (|q̃₁(t)|² = O(t^{−2})).
pub const FT_RANGE: f64 = 80.0;

enum Source {
    Closure(Box<dyn Fn(f64) -> f64 + Send + Sync>),
    Grid { spline: Spline, x_max: f64 },
}

impl Potential {
    /// q(x) = c xⁿ e^{−βx} with c chosen so that ∫ x q dx = 1:
    /// c = β^{n+2}/(n+1)!.
    pub fn monomial(n: u32, beta: f64) -> Self {
        assert!(beta > 0.0);
        let mut fact = 1.0;
        for j in 2..=(n + 1) {
            fact *= j as f64;
        }
        let c = beta.powi(n as i32 + 2) / fact;
        Potential {
            source: Source::Closure(Box::new(move |x: f64| c * x.powi(n as i32) * (-beta * x).exp())),
            decay_a: 0.95 * beta,
            moment: 1.0,
            normalized: true,
            gq_table: OnceLock::new(),
            ft_sq_table: OnceLock::new(),
        }
    }

    /// Closed-form potential with stated decay rate; the moment is computed.
    pub fn from_fn<F>(f: F, decay_a: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        assert!(decay_a > 0.0);
        let moment = quad::integrate_decaying(
            |x| C64::new(x * f(x), 0.0),
            decay_a,
            quad::DEFAULT_TOL,
        )
        .re;
        Potential {
            source: Source::Closure(Box::new(f)),
            decay_a,
            moment,
            normalized: (moment - 1.0).abs() < 1e-8,
            gq_table: OnceLock::new(),
            ft_sq_table: OnceLock::new(),
        }
    }

    /// Sampled potential; zero beyond the last grid point.
    pub fn from_samples(xs: Vec<f64>, qs: Vec<f64>, decay_a: f64) -> Result<Self> {
        if xs.len() < 4 {
            return Err(Error::Config("potential grid needs at least 4 samples".into()));
        }
        let x_max = *xs.last().unwrap();
        let spline = Spline::new(xs, qs);
        let moment = quad::integrate_panels(
            |x| C64::new(x * spline.eval(x), 0.0),
            0.0,
            x_max,
            (x_max.ceil() as usize).clamp(8, 4096),
            quad::DEFAULT_TOL,
        )
        .re;
        Ok(Potential {
            source: Source::Grid { spline, x_max },
            decay_a,
            moment,
            normalized: (moment - 1.0).abs() < 1e-8,
            gq_table: OnceLock::new(),
            ft_sq_table: OnceLock::new(),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        match &self.source {
            Source::Closure(f) => f(x),
            Source::Grid { spline, x_max } => {
                if x > *x_max {
                    0.0
                } else {
                    spline.eval(x)
                }
            }
        }
    }

    /// Autocorrelation g_q(s) = ∫₀^∞ q(x+s) q(x) dx by direct quadrature.
    pub fn autocorr(&self, s: f64) -> f64 {
        assert!(s >= 0.0);
        quad::integrate_decaying(
            |x| C64::new(self.eval(x + s) * self.eval(x), 0.0),
            2.0 * self.decay_a,
            quad::DEFAULT_TOL,
        )
        .re
    }

    /// Memoized g_q via a one-time table + cubic spline; this is what the
    /// m_k / m_{s_p} quadratures consume.
    pub fn gq(&self, s: f64) -> f64 {
        let table = self.gq_table.get_or_init(|| {
            let s_max = quad::decay_cutoff(self.decay_a);
            let n = 2000usize;
            let h = s_max / n as f64;
            let xs: Vec<f64> = (0..=n).map(|j| h * j as f64).collect();
            let ys: Vec<f64> = xs.iter().map(|&s| self.autocorr(s)).collect();
            Spline::new(xs, ys)
        });
        if s > table.x_max() {
            0.0
        } else {
            table.eval(s)
        }
    }

    /// Memoized |q̃₁(t)|² on the real line (even in t), tabulated once on
    /// [0, FT_RANGE]; the carrier of every principal-value integral.
    pub fn q1_sq(&self, t: f64) -> f64 {
        let table = self.ft_sq_table.get_or_init(|| {
            let n = 4000usize;
            let h = FT_RANGE / n as f64;
            let xs: Vec<f64> = (0..=n).map(|j| h * j as f64).collect();
            let ys: Vec<f64> = xs
                .iter()
                .map(|&t| {
                    let v = quad::integrate_decaying(
                        |x| (crate::I * (-t) * x).exp() * self.eval(x),
                        self.decay_a,
                        quad::DEFAULT_TOL,
                    );
                    v.norm_sqr()
                })
                .collect();
            Spline::new(xs, ys)
        });
        let t = t.abs();
        if t > table.x_max() {
            0.0
        } else {
            table.eval(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_normalization() {
        // e^{-x}: moment ∫x e^{-x} = 1 already
        let q = Potential::monomial(0, 1.0);
        assert!((q.eval(0.7) - (-0.7f64).exp()).abs() < 1e-15);
        // x e^{-x}/2: c = 1/2
        let q = Potential::monomial(1, 1.0);
        assert!((q.eval(2.0) - (-2.0f64).exp()).abs() < 1e-15);
        let m = quad::integrate_decaying(|x| C64::new(x * q.eval(x), 0.0), 0.9, 1e-12).re;
        assert!((m - 1.0).abs() < 1e-10);
    }

    #[test]
    fn autocorr_closed_forms() {
        // q = e^{-x}: g_q(s) = e^{-s}/2
        let q = Potential::monomial(0, 1.0);
        for &s in &[0.0, 0.3, 1.7, 4.0] {
            assert!((q.autocorr(s) - 0.5 * (-s).exp()).abs() < 1e-10, "s={s}");
            assert!((q.gq(s) - 0.5 * (-s).exp()).abs() < 1e-8, "spline s={s}");
        }
        // q = x e^{-x}/2: g_q(0) = ‖q‖² = (1/4)∫x²e^{-2x} = 1/16
        let q = Potential::monomial(1, 1.0);
        assert!((q.autocorr(0.0) - 1.0 / 16.0).abs() < 1e-10);
    }

    #[test]
    fn sampled_matches_closure() {
        let n = 1200;
        let h = 40.0 / n as f64;
        let xs: Vec<f64> = (0..=n).map(|j| h * j as f64).collect();
        let qs: Vec<f64> = xs.iter().map(|&x| 0.5 * x * (-x).exp()).collect();
        let q = Potential::from_samples(xs, qs, 0.9).unwrap();
        assert!((q.moment - 1.0).abs() < 1e-6);
        assert!((q.autocorr(0.0) - 1.0 / 16.0).abs() < 1e-7);
    }
}
