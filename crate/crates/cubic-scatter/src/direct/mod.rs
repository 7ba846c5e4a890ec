//! The direct scattering problem: potential model and its convolution
//! functions, the coefficient b(λ), Jost solutions, Wronskians, the
//! scattering coefficients S₂/S₃ with the derived T/U functions, the
//! boundary-problem coefficients G_k, and the bound-state set E_α.

pub mod potential;
pub mod conv;
pub mod jost;
pub mod scatter;
pub mod bound;
pub mod export;

pub use bound::{bound_states, eigenfunction, pv_dispersion, BoundStateSet};
pub use conv::{b_coeff, m_conv, m_sp, q_tilde, q_tilde_s, q_tilde_star};
pub use export::{export_scattering, ScatteringData};
pub use jost::{jost, JostEval};
pub use potential::Potential;
pub use scatter::{boundary_coeff, scattering_coeffs, tu_funcs, wronskian};
