//! Geometry of the three-ray bundle and the Fourier transforms along it.
//!
//! The spectral plane is organized by the directions ζ₁, ζ₂, ζ₃: outgoing
//! rays l_{ζk} = {xζ_k : x ≥ 0}, incoming rays l̂_{ζk} = {−xζ_k : x ≥ 0},
//! lines L_{ζk} = l_{ζk} ∪ l̂_{ζk}, the six open sectors S_p between
//! neighbouring rays, the admissibility half-planes ℂ_±(ζ_k, a), their
//! triangle intersections T_a / T_a*, and the disc D_{a/3} where the whole
//! direct problem lives.

use crate::error::{Error, Result};
use crate::interp::CSpline;
use crate::{quad, trig3, zeta, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// l_{ζk}: points xζ_k, x ≥ 0.
    Outgoing,
    /// l̂_{ζk}: points −xζ_k, x ≥ 0.
    Incoming,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayLabel {
    pub k: usize,
    pub orientation: Orientation,
}

impl RayLabel {
    pub fn outgoing(k: usize) -> Self {
        assert!((1..=3).contains(&k));
        RayLabel { k, orientation: Orientation::Outgoing }
    }

    pub fn incoming(k: usize) -> Self {
        assert!((1..=3).contains(&k));
        RayLabel { k, orientation: Orientation::Incoming }
    }

    /// Unit vector along the ray.
    pub fn direction(&self) -> C64 {
        match self.orientation {
            Orientation::Outgoing => zeta(self.k),
            Orientation::Incoming => -zeta(self.k),
        }
    }

    /// Multiplication by ζ₂ maps l_{ζk} to l_{ζ(k mod 3)+1}.
    pub fn rotated(&self) -> Self {
        RayLabel { k: self.k % 3 + 1, orientation: self.orientation }
    }
}

/// Regions of the spectral plane used as domain predicates.
#[derive(Debug, Clone, Copy)]
pub enum Region {
    /// ℂ₋(ζ_k, a) = {λ = ζ_k η : Im η < a} (lower) or ℂ₊(ζ_k, a) = {Im η > a}.
    HalfPlane { k: usize, a: f64, lower: bool },
    /// T_a: ν < a, ν ≥ √3μ − 2a, ν ≥ −√3μ − 2a for λ = μ + iν.
    Triangle { a: f64 },
    /// T_a* = conjugate of T_a.
    TriangleStar { a: f64 },
    /// D_r = {|λ| < r}.
    Disc { radius: f64 },
    /// Open sector S_p = {(p−1)π/3 < arg λ < pπ/3}, p = 1..6.
    Sector { p: usize },
    /// LD(k, a) = L_{ζk} ∪ D_{a/3}.
    LineDisc { k: usize, a: f64 },
}

pub fn region_contains(r: &Region, lambda: C64) -> bool {
    match *r {
        Region::HalfPlane { k, a, lower } => {
            // λ = ζ_k η  ⇔  η = λ·conj(ζ_k) (unit direction)
            let eta = lambda * zeta(k).conj();
            if lower {
                eta.im < a
            } else {
                eta.im > a
            }
        }
        Region::Triangle { a } => {
            let (mu, nu) = (lambda.re, lambda.im);
            nu < a && nu >= crate::SQRT3 * mu - 2.0 * a && nu >= -crate::SQRT3 * mu - 2.0 * a
        }
        Region::TriangleStar { a } => region_contains(&Region::Triangle { a }, lambda.conj()),
        Region::Disc { radius } => lambda.norm() < radius,
        Region::Sector { p } => {
            assert!((1..=6).contains(&p));
            if lambda.norm() == 0.0 {
                return false;
            }
            let mut arg = lambda.arg();
            if arg < 0.0 {
                arg += 2.0 * std::f64::consts::PI;
            }
            let lo = (p - 1) as f64 * std::f64::consts::FRAC_PI_3;
            let hi = p as f64 * std::f64::consts::FRAC_PI_3;
            arg > lo && arg < hi
        }
        Region::LineDisc { k, a } => {
            if lambda.norm() < a / 3.0 {
                return true;
            }
            // on the line L_{ζk}: λ·conj(ζ_k) real (within fp slack)
            let eta = lambda * zeta(k).conj();
            eta.im.abs() <= 1e-12 * eta.norm().max(1.0)
        }
    }
}

/// A complex-valued function given along a ray, parameterized by x ≥ 0 in
/// the ray direction; either sampled on a grid or by a closed-form evaluator
/// (closed form takes precedence as the oracle carrier).
pub struct RayFn {
    pub label: RayLabel,
    /// Exponential decay rate a: |f(x)| ≲ e^{−ax}.
    pub decay: Option<f64>,
    source: Source,
}

enum Source {
    Grid { xs: Vec<f64>, values: Vec<C64>, spline: CSpline },
    Closure(Box<dyn Fn(f64) -> C64 + Send + Sync>),
}

impl RayFn {
    pub fn from_fn<F>(label: RayLabel, decay: Option<f64>, f: F) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        RayFn { label, decay, source: Source::Closure(Box::new(f)) }
    }

    pub fn from_samples(label: RayLabel, decay: Option<f64>, xs: Vec<f64>, values: Vec<C64>) -> Self {
        assert_eq!(xs.len(), values.len());
        let spline = CSpline::new(xs.clone(), &values);
        RayFn { label, decay, source: Source::Grid { xs, values, spline } }
    }

    pub fn eval(&self, x: f64) -> C64 {
        match &self.source {
            Source::Closure(f) => f(x),
            Source::Grid { xs, values: _, spline } => {
                if x > *xs.last().unwrap() {
                    C64::new(0.0, 0.0) // beyond the sampled support
                } else {
                    spline.eval(x)
                }
            }
        }
    }

    pub fn grid(&self) -> Option<&[f64]> {
        match &self.source {
            Source::Grid { xs, .. } => Some(xs),
            Source::Closure(_) => None,
        }
    }

    pub fn values(&self) -> Option<&[C64]> {
        match &self.source {
            Source::Grid { values, .. } => Some(values),
            Source::Closure(_) => None,
        }
    }
}

/// Effective integrable decay rate of e^{−iλζ_k x} f(x): a − Im(λζ_k).
fn transform_rate(k: usize, decay: f64, lambda: C64) -> f64 {
    decay - (lambda * zeta(k)).im
}

/// Ray Fourier transform f̃_k(λ) = ∫₀^∞ e^{−iλζ_k x} f(xζ_k) dx.
///
/// Admissible iff Im(λζ_k) < a, i.e. λ ∈ ℂ₋(ζ_k·…) for the decay rate a of f.
pub fn ray_transform(f: &RayFn, lambda: C64) -> Result<C64> {
    let k = f.label.k;
    let a = f.decay.unwrap_or(0.0);
    let rate = transform_rate(k, a, lambda);
    if rate <= 0.0 {
        return Err(Error::Domain(format!(
            "λ = {lambda} violates Im(λζ_{k}) < {a} (Paley–Wiener)"
        )));
    }
    let phase = -I * lambda * zeta(k);
    Ok(quad::integrate_decaying(
        |x| (phase * x).exp() * f.eval(x),
        rate,
        quad::DEFAULT_TOL,
    ))
}

/// Full transform 𝓕f = Σ_k f̃_k of a triple supported on the three rays.
pub fn full_transform(fs: &[RayFn; 3], lambda: C64) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    for f in fs {
        sum += ray_transform(f, lambda)?;
    }
    Ok(sum)
}

/// Symmetric transform 3∫₀^∞ s_p(−iλx) g(x) dx — the s_p-kernel analogue of
/// the cosine/sine transforms; g lives on l_{ζ1}, λ must lie in T_a.
pub fn symmetric_transform(p: usize, g: &RayFn, lambda: C64) -> Result<C64> {
    assert!(p < 3);
    let a = g.decay.unwrap_or(0.0);
    if !region_contains(&Region::Triangle { a }, lambda) {
        return Err(Error::Domain(format!("λ = {lambda} outside T_{a}")));
    }
    // slowest decay among the three exponentials in s_p(−iλx)
    let rate = (1..=3)
        .map(|k| transform_rate(k, a, lambda))
        .fold(f64::INFINITY, f64::min);
    Ok(quad::integrate_decaying(
        |x| 3.0 * trig3::eval_s(p, -I * lambda * x) * g.eval(x),
        rate,
        quad::DEFAULT_TOL,
    ))
}

/// Components of a line-bundle function under the rotation automorphism
/// (Jf)(λ) = f(λζ₂) cyclically permuting the rays: J(f₁,f₂,f₃) = (f₃,f₁,f₂).
pub fn j_apply(f: &[Vec<C64>; 3]) -> [Vec<C64>; 3] {
    [f[2].clone(), f[0].clone(), f[1].clone()]
}

/// Projections onto the eigenspaces of J (eigenvalues ζ₁, ζ₂, ζ₃):
///   φ = (f₁+f₂+f₃)/3, ψ = (f₁+ζ₂f₂+ζ₃f₃)/3, h = (f₁+ζ₃f₂+ζ₂f₃)/3,
/// with reconstruction f₁ = φ+ψ+h, f₂ = φ+ζ₃ψ+ζ₂h, f₃ = φ+ζ₂ψ+ζ₃h.
pub fn j_decompose(f: &[Vec<C64>; 3]) -> Result<[Vec<C64>; 3]> {
    let n = f[0].len();
    if f[1].len() != n || f[2].len() != n {
        return Err(Error::Domain("j_decompose: components must share a grid".into()));
    }
    let mut phi = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let (f1, f2, f3) = (f[0][i], f[1][i], f[2][i]);
        phi.push((f1 + f2 + f3) / 3.0);
        psi.push((f1 + crate::ZETA2 * f2 + crate::ZETA3 * f3) / 3.0);
        h.push((f1 + crate::ZETA3 * f2 + crate::ZETA2 * f3) / 3.0);
    }
    Ok([phi, psi, h])
}

/// Rebuild the ray components from eigenspace parts.
pub fn j_reconstruct(parts: &[Vec<C64>; 3]) -> [Vec<C64>; 3] {
    let n = parts[0].len();
    let mut f1 = Vec::with_capacity(n);
    let mut f2 = Vec::with_capacity(n);
    let mut f3 = Vec::with_capacity(n);
    for i in 0..n {
        let (p, s, h) = (parts[0][i], parts[1][i], parts[2][i]);
        f1.push(p + s + h);
        f2.push(p + crate::ZETA3 * s + crate::ZETA2 * h);
        f3.push(p + crate::ZETA2 * s + crate::ZETA3 * h);
    }
    [f1, f2, f3]
}
