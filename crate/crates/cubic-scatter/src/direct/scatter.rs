//! Wronskians, scattering coefficients S₂/S₃, the derived functions T and U,
//! and the coefficients of the boundary value problems on the six rays.

use super::jost::{jost, JostEval};
use super::potential::Potential;
use crate::error::{Error, Result};
use crate::raygeom::{Orientation, RayLabel};
use crate::{C64, SQRT3, ZETA2, ZETA3};

/// W_{k,s}(λ) = ψ_k(λ,0)ψ′_s(λ,0) − ψ_s(λ,0)ψ′_k(λ,0).
pub fn wronskian(ek: &JostEval, es: &JostEval) -> Result<C64> {
    if (ek.lambda - es.lambda).norm() > 1e-14 * ek.lambda.norm().max(1.0) || ek.x != es.x {
        return Err(Error::Domain("Wronskian needs both evaluations at the same (λ, x)".into()));
    }
    Ok(ek.psi * es.dpsi - es.psi * ek.dpsi)
}

/// Scattering coefficients from the boundary system at x = 0:
///   S₂ψ₂(0) + S₃ψ₃(0) = −ψ₁(0)
///   S₂ψ₂′(0) + S₃ψ₃′(0) = −ψ₁′(0) + a(λ),  a(λ) = C(λ)b(λ).
/// Returns (S₂, S₃, a).
pub fn scattering_coeffs(
    alpha: f64,
    q: &Potential,
    c_fn: &dyn Fn(C64) -> C64,
    lambda: C64,
) -> Result<(C64, C64, C64)> {
    let e1 = jost(alpha, q, 1, lambda, 0.0)?;
    let e2 = jost(alpha, q, 2, lambda, 0.0)?;
    let e3 = jost(alpha, q, 3, lambda, 0.0)?;
    let det = wronskian(&e2, &e3)?;
    let scale = e2.psi.norm() * e3.dpsi.norm() + e3.psi.norm() * e2.dpsi.norm();
    if det.norm() <= 1e-12 * scale.max(1e-300) {
        return Err(Error::SingularSystem(lambda));
    }
    let a = c_fn(lambda) * e1.b;
    let r1 = -e1.psi;
    let r2 = -e1.dpsi + a;
    let s2 = (r1 * e3.dpsi - e3.psi * r2) / det;
    let s3 = (e2.psi * r2 - r1 * e2.dpsi) / det;
    Ok((s2, s3, a))
}

/// ζ₂^r for integer r.
pub fn zeta2_pow(r: i32) -> C64 {
    ZETA2.powi(r.rem_euclid(3))
}

/// T and U from sampled scattering coefficients, for C(λζ₂) = ζ₂^r C(λ):
///   T(λ) = (S₃(λζ₂) − ζ₂^r)/(S₂(λ)ζ₂^r − 1),
///   U(λ) = ζ₃ C(λ)(S₂(λ)ζ₂^r − 1)/(√3·λ·(S₂(λ)S₃(λζ₂) − 1)).
pub fn tu_funcs(
    s2: &dyn Fn(C64) -> Result<C64>,
    s3: &dyn Fn(C64) -> Result<C64>,
    c_fn: &dyn Fn(C64) -> C64,
    r: i32,
    lambda: C64,
) -> Result<(C64, C64)> {
    let zr = zeta2_pow(r);
    let s2v = s2(lambda)?;
    let s3r = s3(lambda * ZETA2)?;
    let denom_t = s2v * zr - 1.0;
    if denom_t.norm() < 1e-13 {
        return Err(Error::DivisionByZero { what: "T", lambda });
    }
    let t = (s3r - zr) / denom_t;
    let denom_u = lambda * (s2v * s3r - 1.0) * SQRT3;
    if denom_u.norm() < 1e-13 {
        return Err(Error::DivisionByZero { what: "U", lambda });
    }
    let u = ZETA3 * c_fn(lambda) * denom_t / denom_u;
    Ok((t, u))
}

/// Coefficient of the boundary value problem on the given ray:
///   G₁(λ) = −ζ₃U(λζ₃)/T(λ) on l_{ζ1},
///   G₂(λ) = U(λζ₂)        on l_{ζ2},
///   G₃(λ) = −ζ₂U(λ)T(λ)   on l_{ζ3},
/// and Ĝ_k(λ) = G_k(λζ₂) on the incoming halves l̂_{ζk}.
pub fn boundary_coeff(
    t_fn: &dyn Fn(C64) -> Result<C64>,
    u_fn: &dyn Fn(C64) -> Result<C64>,
    ray: RayLabel,
    lambda: C64,
) -> Result<C64> {
    let arg = match ray.orientation {
        Orientation::Outgoing => lambda,
        Orientation::Incoming => lambda * ZETA2,
    };
    match ray.k {
        1 => {
            let t = t_fn(arg)?;
            if t.norm() < 1e-13 {
                return Err(Error::DivisionByZero { what: "G₁ (T=0)", lambda });
            }
            Ok(-ZETA3 * u_fn(arg * ZETA3)? / t)
        }
        2 => u_fn(arg * ZETA2),
        3 => Ok(-ZETA2 * u_fn(arg)? * t_fn(arg)?),
        _ => unreachable!(),
    }
}
