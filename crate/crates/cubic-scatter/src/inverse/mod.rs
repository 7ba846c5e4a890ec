//! Inverse pipeline: boundary values from scattering data, the trace
//! profile on the real diameter, continuation to the imaginary axis, and
//! recovery of the potential.

pub mod boundary;
pub mod model;
pub mod profile;
pub mod qrec;
pub mod validate;

pub use boundary::{ghat_line, recover_boundary, sector_zeros, BoundaryValues};
pub use model::{fit_model, ExpPoly, ModelFit, ScatterModel, Term};
pub use profile::{
    continue_to_imaginary, reconstruct_q, recover_alpha_n, AlphaN, Continuation,
    ContinuationResult, QProfile,
};
pub use validate::{validate_omega, CheckItem, OmegaReport};

pub use qrec::{
    contour_inverse_laplace, cos_tail, gaver_stehfest, q_from_f, sin_tail, wedge_harmonic,
    wedge_side_residual, FTrace, QfOpts, QfReport,
};
