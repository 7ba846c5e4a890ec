//! Bound states: the dispersion relation on the real line, the root scan for
//! E_α, and the eigenfunctions attached to its nonzero points.

use super::conv::{b_coeff, q_tilde, q_tilde_star};
use super::potential::Potential;
use crate::error::{Error, Result};
use crate::{quad, C64, I};

use super::potential::FT_RANGE as PV_RANGE;

fn q1_abs2(q: &Potential, t: f64) -> f64 {
    q.q1_sq(t)
}

/// Root function of the bound-state dispersion relation on the real line:
///   D(μ) = PV ∫_ℝ |q̃₁(t)|²/(t³ − μ³) dt + 2π/α.
/// The integrand has a single real pole at t = μ.
pub fn pv_dispersion(q: &Potential, alpha: f64, mu: f64) -> Result<f64> {
    if mu == 0.0 || alpha == 0.0 {
        return Err(Error::Domain("dispersion relation needs μ ≠ 0, α ≠ 0".into()));
    }
    let mu3 = mu * mu * mu;
    let f = |t: f64| C64::new(q1_abs2(q, t) / (t * t * t - mu3), 0.0);
    let pv = quad::principal_value(f, mu, -PV_RANGE, PV_RANGE, 1e-3, 1e-9);
    Ok(pv.re + 2.0 * std::f64::consts::PI / alpha)
}

/// Sokhotski reconstruction of m₁ on the real line:
///   m₁(λ) = ½ q̃₁(λ)q̃₁*(λ) − (1/2πi) PV ∫ |q̃₁(t)|²/(t − λ) dt.
pub fn sokhotski_m1(q: &Potential, mu: f64) -> Result<C64> {
    let lam = C64::new(mu, 0.0);
    let pv = quad::principal_value(
        |t| C64::new(q1_abs2(q, t) / (t - mu), 0.0),
        mu,
        -PV_RANGE,
        PV_RANGE,
        1e-3,
        1e-9,
    );
    let half = 0.5 * q_tilde(q, 1, lam)? * q_tilde_star(q, 1, lam)?;
    Ok(half - pv / (2.0 * std::f64::consts::PI * I))
}

/// The membership filter from the enumeration of E_α:
///   q̃₁q̃₁* + ζ₂q̃₂q̃₃* + ζ₃q̃₃q̃₂* at real μ (zero iff b(μ) = b*(μ) = 0
/// together with the dispersion relation).
pub fn e_alpha_condition(q: &Potential, mu: f64) -> Result<C64> {
    let lam = C64::new(mu, 0.0);
    let qt: Vec<C64> = (1..=3).map(|k| q_tilde(q, k, lam)).collect::<Result<_>>()?;
    let qs: Vec<C64> = (1..=3).map(|k| q_tilde_star(q, k, lam)).collect::<Result<_>>()?;
    Ok(qt[0] * qs[0] + crate::ZETA2 * qt[1] * qs[2] + crate::ZETA3 * qt[2] * qs[1])
}

/// Bound states on the line bundle, represented by their real sections.
#[derive(Debug, Clone, Default)]
pub struct BoundStateSet {
    /// Positive real members z_k (full set adds ζ₂^l z_k).
    pub zk: Vec<f64>,
    /// Negative real members w_s.
    pub ws: Vec<f64>,
    /// λ = 0 always belongs to E_α.
    pub include_zero: bool,
}

impl BoundStateSet {
    /// All nonzero members on the real diameter, ascending.
    pub fn real_members(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.ws.iter().chain(self.zk.iter()).copied().collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}

/// Scan (−a/3, a/3) for roots of the dispersion relation, keep those passing
/// the membership filter (tolerance `filter_tol` relative to |q̃₁|² scale).
/// Returns the set and the rejected "dispersion-only" roots for diagnostics.
pub fn bound_states(
    alpha: f64,
    q: &Potential,
    filter_tol: f64,
) -> Result<(BoundStateSet, Vec<f64>)> {
    let mut set = BoundStateSet { zk: vec![], ws: vec![], include_zero: true };
    let mut rejected = vec![];
    if alpha == 0.0 {
        return Ok((set, rejected));
    }
    let radius = q.decay_a / 3.0;
    let n = 160usize;
    // half-step offset keeps 0 and ±radius off the grid
    let h = radius / n as f64;
    let mut candidates = vec![];
    for side in [-1.0, 1.0] {
        let mut prev: Option<(f64, f64)> = None;
        for j in 0..n {
            let mu = side * h * (j as f64 + 0.5);
            let d = pv_dispersion(q, alpha, mu)?;
            if let Some((mu0, d0)) = prev {
                if d0 * d < 0.0 {
                    candidates.push(bisect_dispersion(q, alpha, mu0, mu)?);
                }
            }
            prev = Some((mu, d));
        }
    }
    for mu in candidates {
        let cond = e_alpha_condition(q, mu)?;
        let scale = q1_abs2(q, mu).max(1e-300);
        if cond.norm() <= filter_tol * scale.max(1.0) {
            if mu > 0.0 {
                set.zk.push(mu);
            } else {
                set.ws.push(mu);
            }
        } else {
            rejected.push(mu);
        }
    }
    set.zk.sort_by(|a, b| a.partial_cmp(b).unwrap());
    set.ws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((set, rejected))
}

fn bisect_dispersion(q: &Potential, alpha: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = pv_dispersion(q, alpha, lo)?;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() < 1e-12 {
            return Ok(mid);
        }
        let fm = pv_dispersion(q, alpha, mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Eigenfunction attached to λ_m ∈ E_α∖{0} (requires b(λ_m) ≈ 0):
///   ψ₁(λ_m, x) = −αi q̃₁*(λ_m) ∫₀^∞ u²·[s₂/z²](−iλ_m u) q(x+u) du.
pub fn eigenfunction(
    alpha: f64,
    q: &Potential,
    lambda_m: C64,
    tol: f64,
) -> Result<impl Fn(f64) -> C64 + use<'_>> {
    let b = b_coeff(alpha, q, lambda_m)?;
    if b.norm() > tol {
        return Err(Error::NotABoundState { lambda: lambda_m, b_abs: b.norm() });
    }
    let c = -alpha * I * q_tilde_star(q, 1, lambda_m)?;
    Ok(move |x: f64| c * super::jost::tail_level2(q, lambda_m, x))
}

/// ⟨ψ, q⟩ for an eigenfunction candidate — used by the residual tests.
pub fn inner_with_q(q: &Potential, psi: &dyn Fn(f64) -> C64) -> C64 {
    quad::integrate_decaying(|x| psi(x) * q.eval(x), q.decay_a, quad::DEFAULT_TOL)
}
