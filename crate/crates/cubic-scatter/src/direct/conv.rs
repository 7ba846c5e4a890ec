//! Transforms of the potential and its autocorrelation: q̃_k, q̃_k*, the
//! convolution functions m_k and m_{s_p}, and the coefficient b(λ).

use super::potential::Potential;
use crate::error::{Error, Result};
use crate::{quad, trig3, zeta, C64, I};

fn check_rate(rate: f64, what: &str, lambda: C64) -> Result<f64> {
    if rate <= 0.0 {
        Err(Error::Domain(format!("{what} diverges at λ = {lambda}")))
    } else {
        Ok(rate)
    }
}

/// q̃_k(λ) = ∫₀^∞ e^{−iλζ_k t} q(t) dt.
pub fn q_tilde(q: &Potential, k: usize, lambda: C64) -> Result<C64> {
    let rate = check_rate(q.decay_a - (lambda * zeta(k)).im, "q̃", lambda)?;
    let phase = -I * lambda * zeta(k);
    Ok(quad::integrate_decaying(
        |t| (phase * t).exp() * q.eval(t),
        rate,
        quad::DEFAULT_TOL,
    ))
}

/// q̃_k*(λ) = conj(q̃_k(λ̄)) = ∫₀^∞ e^{iλ ζ̄_k t} q(t) dt (q real).
pub fn q_tilde_star(q: &Potential, k: usize, lambda: C64) -> Result<C64> {
    let phase = I * lambda * zeta(k).conj();
    let rate = check_rate(q.decay_a + (lambda * zeta(k).conj()).im, "q̃*", lambda)?;
    Ok(quad::integrate_decaying(
        |t| (phase * t).exp() * q.eval(t),
        rate,
        quad::DEFAULT_TOL,
    ))
}

/// Symmetric combinations q̃_{s_p}(λ) = ∫ s_p(−iλx) q(x) dx:
///   q̃_{s₀} = (q̃₁+q̃₂+q̃₃)/3, q̃_{s₁} = (ζ₁q̃₁+ζ₃q̃₂+ζ₂q̃₃)/3,
///   q̃_{s₂} = (ζ₁q̃₁+ζ₂q̃₂+ζ₃q̃₃)/3.
pub fn q_tilde_s(q: &Potential, p: usize, lambda: C64) -> Result<C64> {
    assert!(p < 3);
    let (q1, q2, q3) = (
        q_tilde(q, 1, lambda)?,
        q_tilde(q, 2, lambda)?,
        q_tilde(q, 3, lambda)?,
    );
    Ok(match p {
        0 => (q1 + q2 + q3) / 3.0,
        1 => (q1 + crate::ZETA3 * q2 + crate::ZETA2 * q3) / 3.0,
        _ => (q1 + crate::ZETA2 * q2 + crate::ZETA3 * q3) / 3.0,
    })
}

/// m_k(λ) = ∫₀^∞ e^{−iλζ_k s} g_q(s) ds.
pub fn m_conv(q: &Potential, k: usize, lambda: C64) -> Result<C64> {
    let rate = check_rate(q.decay_a - (lambda * zeta(k)).im, "m_k", lambda)?;
    let phase = -I * lambda * zeta(k);
    Ok(quad::integrate_decaying(
        |s| (phase * s).exp() * q.gq(s),
        rate,
        quad::DEFAULT_TOL,
    ))
}

/// m_{s_p}(λ) in the entire-kernel form (finite at λ = 0):
///   m_{s₀} = ∫ s₀(−iλu) g_q du,
///   m_{s₁} = −∫ u·[s₁/z](−iλu) g_q du,
///   m_{s₂} = ∫ u²·[s₂/z²](−iλu) g_q du,
/// equal to (iλ)^{−p}(1/3)Σ_k ζ_k^{−p}·… of (2.13)/(2.19) away from 0.
pub fn m_sp(q: &Potential, p: usize, lambda: C64) -> Result<C64> {
    assert!(p < 3);
    let a = q.decay_a;
    let rate = (1..=3)
        .map(|k| a - (lambda * zeta(k)).im)
        .fold(f64::INFINITY, f64::min);
    let rate = check_rate(rate, "m_sp", lambda)?;
    let f = |u: f64| -> C64 {
        let z = -I * lambda * u;
        let kernel = match p {
            0 => trig3::eval_s(0, z),
            1 => -u * trig3::s1_ratio(z),
            _ => (u * u) * trig3::s2_ratio(z),
        };
        kernel * q.gq(u)
    };
    Ok(quad::integrate_decaying(f, rate, quad::DEFAULT_TOL))
}

/// b(λ) = 1 + αi·m_{s₂}(λ), defined wherever the m_{s₂} integral converges
/// (max_k Im(λζ_k) < a — a strip around the line bundle containing D_{a/3}).
pub fn b_coeff(alpha: f64, q: &Potential, lambda: C64) -> Result<C64> {
    if alpha == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(C64::new(1.0, 0.0) + alpha * I * m_sp(q, 2, lambda)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ZETA2, ZETA3};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn star_of(f: impl Fn(C64) -> Result<C64>, lambda: C64) -> C64 {
        f(lambda.conj()).unwrap().conj()
    }

    #[test]
    fn q_tilde_closed_form() {
        // q = e^{-x}: q̃_k(λ) = 1/(1 + iλζ_k)
        let q = Potential::monomial(0, 1.0);
        let lam = c(0.17, 0.05);
        for k in 1..=3 {
            let v = q_tilde(&q, k, lam).unwrap();
            let expect = 1.0 / (c(1.0, 0.0) + I * lam * zeta(k));
            assert!((v - expect).norm() < 1e-10, "k={k}");
            // star = conjugate-reflected transform
            let vs = q_tilde_star(&q, k, lam).unwrap();
            assert!((vs - star_of(|l| q_tilde(&q, k, l), lam)).norm() < 1e-10);
        }
    }

    #[test]
    fn m_conv_closed_form_and_rotation() {
        // q = e^{-x}: m_k(λ) = 1/(2(1 + iλζ_k))
        let q = Potential::monomial(0, 1.0);
        let lam = c(0.21, 0.0);
        for k in 1..=3 {
            let v = m_conv(&q, k, lam).unwrap();
            let expect = 0.5 / (c(1.0, 0.0) + I * lam * zeta(k));
            assert!((v - expect).norm() < 1e-8, "k={k}: {v} vs {expect}");
        }
        // m₁(λζ₂) = m₂(λ), m₂(λζ₂) = m₃(λ), m₃(λζ₂) = m₁(λ)
        let q = Potential::monomial(1, 1.0);
        let lam = c(0.13, 0.04);
        for k in 1..=3 {
            let lhs = m_conv(&q, k, lam * ZETA2).unwrap();
            let rhs = m_conv(&q, k % 3 + 1, lam).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "k={k}");
        }
    }

    #[test]
    fn m_conv_plus_star_factorizes() {
        // conjugation swaps the ζ₂ and ζ₃ lines, so the star partner of m_k
        // is m_{κ(k)} with κ = (1→1, 2→3, 3→2):
        //   m₁ + m₁* = q̃₁q̃₁*,  m₂ + m₃* = q̃₂q̃₃*,  m₃ + m₂* = q̃₃q̃₂*
        let q = Potential::monomial(1, 1.0);
        const KAPPA: [usize; 4] = [0, 1, 3, 2];
        for &mu in &[0.05, 0.19, 0.28] {
            let lam = c(mu, 0.0);
            let qt: Vec<C64> = (1..=3).map(|k| q_tilde(&q, k, lam).unwrap()).collect();
            let qs: Vec<C64> = (1..=3).map(|k| q_tilde_star(&q, k, lam).unwrap()).collect();
            let pairs = [(1, qt[0] * qs[0]), (2, qt[1] * qs[2]), (3, qt[2] * qs[1])];
            for &(k, rhs) in &pairs {
                let m = m_conv(&q, k, lam).unwrap();
                let ms = star_of(|l| m_conv(&q, KAPPA[k], l), lam);
                assert!((m + ms - rhs).norm() < 1e-8, "k={k} μ={mu}");
            }
        }
    }

    #[test]
    fn m_sp_limits_and_consistency() {
        let q = Potential::monomial(1, 1.0);
        // away from 0 the entire-kernel form matches (iλ)^{-p}(1/3)Σζ_k^{-p} m_k
        let lam = c(0.11, -0.03);
        for p in 0..3usize {
            let direct = m_sp(&q, p, lam).unwrap();
            let il = I * lam;
            let mut sum = c(0.0, 0.0);
            for k in 1..=3 {
                sum += zeta(k).powi(-(p as i32)) * m_conv(&q, k, lam).unwrap();
            }
            let reference = sum / 3.0 / il.powu(p as u32);
            assert!((direct - reference).norm() < 1e-8, "p={p}: {direct} vs {reference}");
        }
        // λ = 0 limits: m_{s₀}(0) = ∫g_q, m_{s₁}(0) = −∫u g_q, m_{s₂}(0) = ∫u²g_q/2
        let g0 = m_sp(&q, 0, c(0.0, 0.0)).unwrap();
        let expect = quad::integrate_decaying(|u| c(q.gq(u), 0.0), 0.9, 1e-10);
        assert!((g0 - expect).norm() < 1e-9);
        // rotation invariance m_{s_p}(λζ₂) = m_{s_p}(λ)
        for p in 0..3usize {
            let a = m_sp(&q, p, lam).unwrap();
            let b = m_sp(&q, p, lam * ZETA2).unwrap();
            let d = m_sp(&q, p, lam * ZETA3).unwrap();
            assert!((a - b).norm() < 1e-9 && (a - d).norm() < 1e-9, "p={p}");
        }
    }

    #[test]
    fn m_sp_star_relations() {
        // with p_jk = q̃_j q̃_k*:
        //   m_{s₀}+m_{s₀}* = (1/3){p₁₁ + p₂₃ + p₃₂}
        //   m_{s₁}−m_{s₁}* = (1/3)(iλ)^{−1}{p₁₁ + ζ₃p₂₃ + ζ₂p₃₂}
        //   m_{s₂}+m_{s₂}* = (1/3)(iλ)^{−2}{p₁₁ + ζ₂p₂₃ + ζ₃p₃₂}
        // (the odd index flips sign because the kernel s₁ is odd)
        let q = Potential::monomial(1, 1.0);
        for &mu in &[0.08, 0.22] {
            let lam = c(mu, 0.0);
            let il = I * lam;
            let qt: Vec<C64> = (1..=3).map(|k| q_tilde(&q, k, lam).unwrap()).collect();
            let qs: Vec<C64> = (1..=3).map(|k| q_tilde_star(&q, k, lam).unwrap()).collect();
            let (p11, p23, p32) = (qt[0] * qs[0], qt[1] * qs[2], qt[2] * qs[1]);
            let rhs2 = (p11 + ZETA2 * p23 + ZETA3 * p32) / (3.0 * il.powu(2));
            let rhs1 = (p11 + ZETA3 * p23 + ZETA2 * p32) / (3.0 * il);
            let rhs0 = (p11 + p23 + p32) / 3.0;
            for (p, sign, rhs) in [(0usize, 1.0, rhs0), (1, -1.0, rhs1), (2, 1.0, rhs2)] {
                let m = m_sp(&q, p, lam).unwrap();
                let ms = star_of(|l| m_sp(&q, p, l), lam);
                assert!((m + sign * ms - rhs).norm() < 1e-8, "p={p} μ={mu}");
            }
        }
    }

    #[test]
    fn b_rotation_and_free_case() {
        let q = Potential::monomial(1, 1.0);
        let lam = c(0.12, 0.07);
        assert!((b_coeff(0.0, &q, lam).unwrap() - 1.0).norm() == 0.0);
        let b = b_coeff(0.3, &q, lam).unwrap();
        let br = b_coeff(0.3, &q, lam * ZETA2).unwrap();
        assert!((b - br).norm() < 1e-9);
        // past the convergence strip of m_{s₂} along the real line
        assert!(b_coeff(0.3, &q, c(1.2, 0.0)).is_err());
    }
}
