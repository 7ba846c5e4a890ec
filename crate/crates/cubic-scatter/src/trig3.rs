//! The generalized exponentials s₀, s₁, s₂ — third-order analogues of
//! cosh/sinh built from the three cube roots of unity:
//!
//!   s_p(z) = (1/3) Σ_k ζ_k^{-p} e^{zζ_k} = Σ_{n≥0} z^{3n+p}/(3n+p)!
//!
//! with the derivative chain s₀′ = s₂, s₁′ = s₀, s₂′ = s₁, together with the
//! ratios s₁(z)/z, s₂(z)/z² as entire functions of z³ (the kernels that keep
//! the λ→0 limits of the Cauchy-problem formulas finite), the real zeros of
//! s_p(−x), and the scalar Cauchy-problem solver for y''' = (iλ)³·… forcing
//! form i y''' = λ³ y + f.

use crate::quad;
use crate::{zeta, C64, I};

/// Series/exponential-formula switchover radius. Below it the Taylor partial
/// sums avoid the cancellation of the three exponentials near 0.
const SWITCH_RADIUS: f64 = 0.5;

fn series_s(p: usize, z: C64) -> C64 {
    // Σ z^{3n+p}/(3n+p)!
    let mut term = C64::new(1.0, 0.0);
    for j in 1..=p {
        term *= z / j as f64;
    }
    if p > 0 && z.norm() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let z3 = z * z * z;
    let mut sum = term;
    let mut fact_idx = p;
    for _ in 0..60 {
        term *= z3 / (((fact_idx + 1) * (fact_idx + 2) * (fact_idx + 3)) as f64);
        fact_idx += 3;
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            break;
        }
    }
    sum
}

fn exponential_s(p: usize, z: C64) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    for k in 1..=3 {
        let zk = zeta(k);
        sum += zk.powi(-(p as i32)) * (z * zk).exp();
    }
    sum / 3.0
}

/// s_p(z), p ∈ {0,1,2}.
pub fn eval_s(p: usize, z: C64) -> C64 {
    assert!(p < 3, "trig index must be 0, 1 or 2");
    if z.norm() < SWITCH_RADIUS {
        series_s(p, z)
    } else {
        exponential_s(p, z)
    }
}

/// j-th derivative of s_p: the chain s₀′=s₂, s₁′=s₀, s₂′=s₁ shifts the index
/// down by one modulo 3.
pub fn eval_s_deriv(p: usize, j: usize, z: C64) -> C64 {
    eval_s((p + 3 - j % 3) % 3, z)
}

fn series_ratio(p: usize, z: C64) -> C64 {
    // s_p(z)/z^p = Σ z^{3n} / (3n+p)!
    let z3 = z * z * z;
    let mut fact = 1.0;
    for j in 1..=p {
        fact *= j as f64;
    }
    let mut term = C64::new(1.0 / fact, 0.0);
    let mut sum = term;
    let mut idx = p;
    for _ in 0..60 {
        term *= z3 / (((idx + 1) * (idx + 2) * (idx + 3)) as f64);
        idx += 3;
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            break;
        }
    }
    sum
}

/// s₁(z)/z as an entire function of z³ (value 1 at z=0).
pub fn s1_ratio(z: C64) -> C64 {
    if z.norm() < SWITCH_RADIUS {
        series_ratio(1, z)
    } else {
        exponential_s(1, z) / z
    }
}

/// s₂(z)/z² as an entire function of z³ (value 1/2 at z=0).
pub fn s2_ratio(z: C64) -> C64 {
    if z.norm() < SWITCH_RADIUS {
        series_ratio(2, z)
    } else {
        exponential_s(2, z) / (z * z)
    }
}

/// Defining function of the real zeros: s_p(−x) = 0 for x ≥ 0 is equivalent
/// to h_p(x) = cos(√3x/2 + 2πp/3) + ½e^{−3x/2} = 0.
fn zero_eq(p: usize, x: f64) -> f64 {
    let theta = crate::SQRT3 * x / 2.0 + 2.0 * std::f64::consts::PI * p as f64 / 3.0;
    theta.cos() + 0.5 * (-1.5 * x).exp()
}

/// First `count` nonnegative roots x_p(k) of s_p(−x) = 0, ascending.
/// x₁(1) = x₂(1) = 0; for p=2 the origin is a double root of the defining
/// equation (no sign change), so it is seeded explicitly and scanning starts
/// just above 0.
pub fn zeros_s(p: usize, count: usize) -> crate::Result<Vec<f64>> {
    assert!(p < 3);
    assert!(count >= 1);
    let mut roots = Vec::with_capacity(count);
    if p == 1 || p == 2 {
        roots.push(0.0);
    }
    // asymptotic spacing of roots is 2π/√3 ≈ 3.63; scan with a quarter step
    let step = std::f64::consts::PI / (2.0 * crate::SQRT3);
    let mut x = 1e-6;
    let mut fx = zero_eq(p, x);
    let mut guard = 0usize;
    while roots.len() < count {
        guard += 1;
        if guard > 100_000 {
            return Err(crate::Error::Bracketing {
                lo: x,
                hi: x + step,
                msg: format!("zero scan for p={p} did not find {count} roots"),
            });
        }
        let x2 = x + step;
        let fx2 = zero_eq(p, x2);
        if fx == 0.0 {
            roots.push(x);
        } else if fx * fx2 < 0.0 {
            roots.push(bisect(|t| zero_eq(p, t), x, x2));
        }
        x = x2;
        fx = fx2;
    }
    roots.truncate(count);
    Ok(roots)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-13 * mid.abs().max(1.0) {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Initial data and forcing for the Cauchy problem i y''' = λ³ y + f on ℝ₊.
pub struct CauchyData<'a> {
    pub y0: C64,
    pub y1: C64,
    pub y2: C64,
    pub lambda: C64,
    pub forcing: Option<&'a dyn Fn(f64) -> C64>,
}

/// y(λ,x) = y₀s₀(iλx) + y₁·s₁(iλx)/(iλ) + y₂·s₂(iλx)/(iλ)²
///            − i ∫₀ˣ s₂(iλ(x−t))/(iλ)² f(t) dt.
///
/// The divided kernels s₁(z)/z, s₂(z)/z² make every term entire in λ, so the
/// λ→0 limit needs no special casing.
pub fn cauchy_solve(data: &CauchyData, x: f64, tol: f64) -> C64 {
    assert!(x >= 0.0);
    let il = I * data.lambda;
    let homogeneous = data.y0 * eval_s(0, il * x)
        + data.y1 * x * s1_ratio(il * x)
        + data.y2 * (x * x) * s2_ratio(il * x);
    let forced = match data.forcing {
        None => C64::new(0.0, 0.0),
        Some(f) => {
            let panels = ((x * (1.0 + data.lambda.norm())).ceil() as usize).clamp(4, 2048);
            let integral = quad::integrate_panels(
                |t| {
                    let u = x - t;
                    (u * u) * s2_ratio(il * u) * f(t)
                },
                0.0,
                x,
                panels,
                tol,
            );
            -I * integral
        }
    };
    homogeneous + forced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ZETA2, ZETA3};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn initial_data_is_kronecker() {
        // s_p^{(j)}(0) = δ_{pj}
        for p in 0..3 {
            for j in 0..3 {
                let v = eval_s_deriv(p, j, c(0.0, 0.0));
                let expect = if p == j { 1.0 } else { 0.0 };
                assert!((v - expect).norm() < 1e-15, "p={p} j={j} v={v}");
            }
        }
    }

    #[test]
    fn taylor_oracle_s1_at_1() {
        // 1 + 1/4! + 1/7! + 1/10! + … frozen partial-sum value
        let v = eval_s(1, c(1.0, 0.0));
        assert!((v.re - 1.041_865_355_098_910).abs() < 1e-13, "got {v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn switchover_consistency() {
        // series vs exponential formula agree near the switch radius
        for i in 0..24 {
            let arg = i as f64 * std::f64::consts::PI / 12.0;
            let z = C64::from_polar(0.499, arg);
            let w = C64::from_polar(0.501, arg);
            for p in 0..3 {
                let a = series_s(p, z);
                let b = exponential_s(p, z);
                assert!((a - b).norm() < 1e-14, "p={p} z={z}: {a} vs {b}");
                let a = series_s(p, w);
                let b = exponential_s(p, w);
                assert!((a - b).norm() < 1e-14, "p={p} w={w}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn conjugation_property() {
        let z = c(0.3, 0.7);
        for p in 0..3 {
            let lhs = eval_s(p, z.conj());
            let rhs = eval_s(p, z).conj();
            assert!((lhs - rhs).norm() < 1e-15);
        }
    }

    #[test]
    fn rotation_property() {
        let z = c(1.1, -0.4);
        for p in 0..3 {
            let lhs = eval_s(p, z * ZETA2);
            let rhs = ZETA2.powu(p as u32) * eval_s(p, z);
            assert!((lhs - rhs).norm() < 1e-14, "p={p}");
        }
    }

    #[test]
    fn euler_formula() {
        let z = c(0.8, 0.3);
        for k in 1..=3 {
            let zk = zeta(k);
            let lhs = (z * zk).exp();
            let rhs = eval_s(0, z) + zk * eval_s(1, z) + zk * zk * eval_s(2, z);
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn main_identity() {
        for &z in &[c(0.2, 0.1), c(-1.5, 2.0), c(3.0, -0.7)] {
            let s0 = eval_s(0, z);
            let s1 = eval_s(1, z);
            let s2 = eval_s(2, z);
            let v = s0 * s0 * s0 + s1 * s1 * s1 + s2 * s2 * s2 - 3.0 * s0 * s1 * s2;
            assert!((v - 1.0).norm() < 1e-12, "z={z}: {v}");
        }
    }

    #[test]
    fn ratio_kernels_match_definitions() {
        let z = c(0.7, -1.2);
        assert!((s1_ratio(z) - eval_s(1, z) / z).norm() < 1e-14);
        assert!((s2_ratio(z) - eval_s(2, z) / (z * z)).norm() < 1e-14);
        // entire in z³: invariant under z → ζ₂z
        assert!((s1_ratio(z * ZETA2) - s1_ratio(z)).norm() < 1e-14);
        assert!((s2_ratio(z * ZETA3) - s2_ratio(z)).norm() < 1e-14);
        assert!((s1_ratio(c(0.0, 0.0)) - 1.0).norm() < 1e-15);
        assert!((s2_ratio(c(0.0, 0.0)) - 0.5).norm() < 1e-15);
    }

    #[test]
    fn zeros_solve_their_equations_and_kill_sp() {
        for p in 0..3 {
            let roots = zeros_s(p, 6).unwrap();
            assert_eq!(roots.len(), 6);
            for (k, &x) in roots.iter().enumerate() {
                if x > 0.0 {
                    assert!(zero_eq(p, x).abs() < 1e-10, "p={p} k={k}");
                }
                // relative to the e^{x/2} envelope of s_p on the negative axis
                let v = eval_s(p, c(-x, 0.0));
                assert!(v.norm() / (0.5 * x).exp() < 1e-11, "s_{p}(-{x}) = {v}");
            }
        }
        // x₁(1) = x₂(1) = 0, x₀(1) > 0
        assert_eq!(zeros_s(1, 1).unwrap()[0], 0.0);
        assert_eq!(zeros_s(2, 1).unwrap()[0], 0.0);
        let x01 = zeros_s(0, 1).unwrap()[0];
        assert!(x01 > 1.8 && x01 < 1.9, "x₀(1) = {x01}");
    }

    #[test]
    fn zero_interlacing() {
        // merged ordering on the half-axis: x₁(k) ≤ x₂(k) ≤ x₀(k) ≤ x₁(k+1)
        let z0 = zeros_s(0, 10).unwrap();
        let z1 = zeros_s(1, 10).unwrap();
        let z2 = zeros_s(2, 10).unwrap();
        for k in 0..10 {
            assert!(z1[k] <= z2[k] + 1e-12, "k={k}: {} vs {}", z1[k], z2[k]);
            assert!(z2[k] <= z0[k] + 1e-12, "k={k}: {} vs {}", z2[k], z0[k]);
            if k + 1 < 10 {
                assert!(z0[k] <= z1[k + 1] + 1e-12, "k={k}: {} vs {}", z0[k], z1[k + 1]);
            }
        }
    }

    #[test]
    fn cauchy_solve_homogeneous_cases() {
        let lam = c(0.4, 0.1);
        let d = CauchyData { y0: c(1.0, 0.0), y1: c(0.0, 0.0), y2: c(0.0, 0.0), lambda: lam, forcing: None };
        let x = 1.3;
        assert!((cauchy_solve(&d, x, 1e-12) - eval_s(0, I * lam * x)).norm() < 1e-14);

        let d0 = CauchyData { y0: c(0.0, 0.0), y1: c(0.0, 0.0), y2: c(0.0, 0.0), lambda: lam, forcing: None };
        assert_eq!(cauchy_solve(&d0, 2.0, 1e-12), c(0.0, 0.0));

        // λ = 0 limit: s₁(iλx)/(iλ) → x
        let d1 = CauchyData { y0: c(0.0, 0.0), y1: c(1.0, 0.0), y2: c(0.0, 0.0), lambda: c(0.0, 0.0), forcing: None };
        assert!((cauchy_solve(&d1, 2.0, 1e-12) - 2.0).norm() < 1e-15);
    }

    #[test]
    fn cauchy_solve_satisfies_the_equation() {
        // residual of i y''' − λ³ y − f under central differences
        let lam = c(0.7, -0.2);
        let f = |t: f64| C64::new((-t).exp(), 0.3 * t.cos());
        let d = CauchyData { y0: c(0.5, 0.2), y1: c(-0.1, 0.0), y2: c(0.0, 0.4), lambda: lam, forcing: Some(&f) };
        let y = |x: f64| cauchy_solve(&d, x, 1e-12);
        let h = 1e-2;
        let x = 1.0;
        let y3 = (y(x + 2.0 * h) - y(x - 2.0 * h) - 2.0 * (y(x + h) - y(x - h))) / (2.0 * h * h * h);
        let residual = I * y3 - lam * lam * lam * y(x) - f(x);
        assert!(residual.norm() < 1e-3, "residual {residual}");
    }
}
