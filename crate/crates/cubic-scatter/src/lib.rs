//! Direct and inverse scattering for the operator i d³/dx³ + α⟨·,q⟩q on the half-axis.
//!
//! The library is organized around the spectral parameter λ living on the bundle of
//! three lines through the origin in directions ζ₁=1, ζ₂=e^{2πi/3}, ζ₃=e^{-2πi/3}:
//!
//! * [`trig3`] — the generalized exponentials s₀,s₁,s₂ (third-order cosh/sinh analogues),
//!   their identity algebra, zeros, and the scalar Cauchy-problem solver,
//! * [`raygeom`] — ray/line geometry, region predicates, Fourier transforms along rays,
//! * [`direct`] — the direct problem: Jost solutions, Wronskians, scattering coefficients
//!   S₂/S₃, the coefficients of the boundary value problems, bound states,
//! * [`rhsolver`] — scalar Riemann boundary-value problem on the three-line bundle,
//! * [`inverse`] — the inverse pipeline recovering α and q from scattering data,
//! * [`quad`], [`interp`] — quadrature and interpolation/fitting utilities,
//! * [`io`] — file formats for potentials, ray functions, and scattering data.

pub mod error;
pub mod interp;
pub mod quad;
pub mod trig3;
pub mod raygeom;
pub mod direct;
pub mod rhsolver;
pub mod inverse;
pub mod io;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex<f64>;

/// i as a constant.
pub const I: C64 = C64::new(0.0, 1.0);

/// ζ₁ = 1.
pub const ZETA1: C64 = C64::new(1.0, 0.0);
/// ζ₂ = (−1+i√3)/2, the primitive cube root of unity.
pub const ZETA2: C64 = C64::new(-0.5, 0.866_025_403_784_438_6);
/// ζ₃ = conj(ζ₂) = ζ₂².
pub const ZETA3: C64 = C64::new(-0.5, -0.866_025_403_784_438_6);

/// ζ_k by 1-based index.
pub fn zeta(k: usize) -> C64 {
    match k {
        1 => ZETA1,
        2 => ZETA2,
        3 => ZETA3,
        _ => panic!("cube-root index must be 1, 2 or 3"),
    }
}

pub const SQRT3: f64 = 1.732_050_807_568_877_2;
