//! Jost solutions ψ_k(λ,x) and their first two derivatives.
//!
//! ψ_k(λ,x) = b(λ)e^{iλζ_k x} − αi q̃*_{σ(k)}(λ) ∫ₓ^∞ s₂(iλ(x−t))/(iλ)² q(t) dt
//! with σ = (1→1, 2→3, 3→2). Derivatives differentiate the kernel through
//! the chain s₂ → s₁ → s₀; the boundary terms vanish since s₂(0)=s₁(0)=0.

use super::conv::{b_coeff, q_tilde_star};
use super::potential::Potential;
use crate::error::Result;
use crate::{quad, trig3, zeta, C64, I};

/// Index pairing of ψ_k with q̃*_{σ(k)}.
pub const SIGMA: [usize; 4] = [0, 1, 3, 2];

/// One evaluation of a Jost solution.
#[derive(Debug, Clone, Copy)]
pub struct JostEval {
    pub k: usize,
    pub lambda: C64,
    pub x: f64,
    pub psi: C64,
    pub dpsi: C64,
    pub ddpsi: C64,
    pub b: C64,
}

/// Perturbation integrals, substituting t = x+u:
///   level 2: ∫₀^∞ u²·[s₂/z²](−iλu) q(x+u) du  (= ∫ₓ^∞ s₂(iλ(x−t))/(iλ)² q dt)
///   level 1: −∫₀^∞ u·[s₁/z](−iλu) q(x+u) du   (its x-derivative)
///   level 0: ∫₀^∞ s₀(−iλu) q(x+u) du           (second x-derivative)
fn tail_integral(q: &Potential, lambda: C64, x: f64, level: usize) -> C64 {
    let a = q.decay_a;
    let rate = (1..=3)
        .map(|k| a - (lambda * zeta(k)).im)
        .fold(f64::INFINITY, f64::min);
    debug_assert!(rate > 0.0);
    quad::integrate_decaying(
        |u| {
            let z = -I * lambda * u;
            let kernel = match level {
                2 => (u * u) * trig3::s2_ratio(z),
                1 => -u * trig3::s1_ratio(z),
                _ => trig3::eval_s(0, z),
            };
            kernel * q.eval(x + u)
        },
        rate,
        quad::DEFAULT_TOL,
    )
}

/// Level-2 tail integral alone — the eigenfunction carrier at bound states.
pub fn tail_level2(q: &Potential, lambda: C64, x: f64) -> C64 {
    tail_integral(q, lambda, x, 2)
}

/// Jost solution ψ_k with ψ′, ψ″ at the point x, λ ∈ D_{a/3}.
pub fn jost(alpha: f64, q: &Potential, k: usize, lambda: C64, x: f64) -> Result<JostEval> {
    assert!((1..=3).contains(&k));
    assert!(x >= 0.0);
    let b = b_coeff(alpha, q, lambda)?;
    let phase = I * lambda * zeta(k);
    let e = (phase * x).exp();
    let (psi, dpsi, ddpsi) = if alpha == 0.0 {
        (e, phase * e, phase * phase * e)
    } else {
        let qs = q_tilde_star(q, SIGMA[k], lambda)?;
        let w = alpha * I * qs;
        (
            b * e - w * tail_integral(q, lambda, x, 2),
            phase * b * e - w * tail_integral(q, lambda, x, 1),
            phase * phase * b * e - w * tail_integral(q, lambda, x, 0),
        )
    };
    Ok(JostEval { k, lambda, x, psi, dpsi, ddpsi, b })
}
