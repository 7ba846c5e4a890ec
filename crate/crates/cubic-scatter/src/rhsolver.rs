//! Sectionally holomorphic solutions of the multiplicative jump problem on
//! the three-line bundle: ψ(z) = exp{Σ_k (1/2πi)∫_{L_{ζk}} ln Ĝ_k(λ)/(λ−z) dλ},
//! with exact Cauchy integrals of the piecewise-linear logarithms, exact
//! one-sided boundary values, and rational factors absorbing the zeros that
//! bound states impose on the contour.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::{zeta, C64, I};

/// Which one-sided limit to take at a contour point; Plus is the left side
/// of the line oriented by increasing parameter, i.e. z = ζ_k(x + i0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// One full line of the bundle, λ = xζ_k, carrying the unwrapped logarithm
/// of its jump coefficient on an ascending parameter grid.
pub struct ContourLine {
    pub k: usize,
    xs: Vec<f64>,
    log_g: Vec<C64>,
    tail: f64,
    /// Coefficients of ln Ĝ(x) ≈ Σ_m c_m x^{−m} beyond the grid ends,
    /// (left of x_min, right of x_max); empty means zero.
    tail_left: Vec<C64>,
    tail_right: Vec<C64>,
}

/// Panels where |ln Ĝ| stays below this threshold are skipped.
const NEGLIGIBLE: f64 = 1e-14;

/// Number of inverse-power moments kept in the tail models.
const TAIL_ORDER: usize = 10;

/// J_m = ∫ t^{−m}/(t−w) dt over (X, ∞) for `right`, (−∞, −X) otherwise,
/// X > 0, w strictly inside (−X, X) or off the real axis. Returned for
/// m = 1..=order.
fn tail_moments(order: usize, x_end: f64, w: C64, right: bool) -> Vec<C64> {
    let xa = x_end.abs();
    let u = w / xa;
    let mut j = vec![C64::new(0.0, 0.0); order];
    if u.norm() < 0.5 {
        // J_m^± = (±1)^{m+1} Σ_p (±w)^p X^{−m−p}/(m+p) (upper sign: right)
        let ws = if right { w } else { -w };
        for m in 1..=order {
            let mut s = C64::new(0.0, 0.0);
            let mut wp = C64::new(xa.powi(-(m as i32)), 0.0);
            for p in 0..60 {
                s += wp / (m + p) as f64;
                wp *= ws / xa;
            }
            j[m - 1] = if right || m % 2 == 1 { s } else { -s };
        }
    } else if right {
        // cut of Log(1−w/X) lies on (X, ∞), matching the integral's
        j[0] = -(1.0 - u).ln() / w;
        for m in 2..=order {
            j[m - 1] = (j[m - 2] - 1.0 / ((m - 1) as f64 * xa.powi(m as i32 - 1))) / w;
        }
    } else {
        j[0] = (1.0 + u).ln() / w;
        for m in 2..=order {
            let s = if (m - 1) % 2 == 1 { -1.0 } else { 1.0 };
            j[m - 1] = (j[m - 2] + s / ((m - 1) as f64 * xa.powi(m as i32 - 1))) / w;
        }
    }
    j
}

impl ContourLine {
    /// Take logarithms, unwrap the phase from the −∞ end (anchored at ln 1 = 0),
    /// and reject data whose total phase increment signals a nonzero index.
    pub fn from_samples(k: usize, xs: Vec<f64>, g: Vec<C64>) -> Result<Self> {
        assert!((1..=3).contains(&k));
        assert!(xs.len() >= 2 && xs.len() == g.len());
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "grid must be ascending");
        let mut log_g = Vec::with_capacity(g.len());
        let mut prev_arg = 0.0_f64;
        for (j, v) in g.iter().enumerate() {
            if v.norm() < 1e-300 {
                return Err(Error::Domain(format!(
                    "jump coefficient vanishes at x = {} on line {k}",
                    xs[j]
                )));
            }
            let mut arg = v.arg();
            while arg - prev_arg > PI {
                arg -= 2.0 * PI;
            }
            while arg - prev_arg < -PI {
                arg += 2.0 * PI;
            }
            prev_arg = arg;
            log_g.push(C64::new(v.norm().ln(), arg));
        }
        let winding = log_g.last().unwrap().im - log_g[0].im;
        if winding.abs() > PI / 4.0 {
            return Err(Error::IndexNonZero { line: k, phase: winding });
        }
        let tail = log_g[0].norm().max(log_g.last().unwrap().norm());
        Ok(ContourLine { k, xs, log_g, tail, tail_left: vec![], tail_right: vec![] })
    }

    /// Attach tail models for ln Ĝ beyond the grid (inverse-power
    /// coefficients, see `tail_left`).
    pub fn set_tails(&mut self, left: Vec<C64>, right: Vec<C64>) {
        self.tail_left = left;
        self.tail_right = right;
    }

    /// ∫ ln Ĝ(t)/(t−w) dt over both tail half-lines, from the power models.
    fn tail_correction(&self, w: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (coef, right) in [(&self.tail_left, false), (&self.tail_right, true)] {
            if coef.iter().all(|c| c.norm() < NEGLIGIBLE) {
                continue;
            }
            let x_end = if right { *self.xs.last().unwrap() } else { self.xs[0] };
            let j = tail_moments(coef.len(), x_end, w, right);
            acc += coef.iter().zip(&j).map(|(c, jm)| c * jm).sum::<C64>();
        }
        acc
    }

    /// Size of ln Ĝ at the grid ends — the truncation diagnostic.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    fn h_near(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i,
            Err(i) => i,
        }
        .clamp(1, n - 1);
        self.xs[i] - self.xs[i - 1]
    }

    /// ∫_L ln Ĝ(λ)/(λ−z) dλ for z off this line, integrating the linear
    /// interpolant of ln Ĝ exactly panel by panel. In line coordinates
    /// (λ = xζ_k, w = z/ζ_k) each panel contributes
    ///   (a + b(w−x_j))·Log((x_{j+1}−w)/(x_j−w)) + b·Δx.
    pub fn cauchy(&self, z: C64) -> C64 {
        let w = z * zeta(self.k).conj();
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..self.xs.len() - 1 {
            let (f0, f1) = (self.log_g[j], self.log_g[j + 1]);
            if f0.norm() < NEGLIGIBLE && f1.norm() < NEGLIGIBLE {
                continue;
            }
            let dx = self.xs[j + 1] - self.xs[j];
            let b = (f1 - f0) / dx;
            let num = self.xs[j + 1] - w;
            let den = self.xs[j] - w;
            acc += (f0 + b * (w - self.xs[j])) * (num / den).ln() + b * dx;
        }
        acc + self.tail_correction(w)
    }

    /// One-sided boundary value of the Cauchy transform at x on this line:
    ///   Φ±(x) = ±½ f(x) + (1/2πi) PV∫ f(t)/(t−x) dt,
    /// with the principal value of the linear interpolant computed exactly.
    pub fn plemelj(&self, x: f64, side: Side) -> Result<C64> {
        let n = self.xs.len();
        let h = self.h_near(x);
        if x < self.xs[0] + 2.0 * h || x > self.xs[n - 1] - 2.0 * h {
            return Err(Error::TooCloseToContour(C64::new(x, 0.0)));
        }
        // snap onto the nearest node when indistinguishable from it; the two
        // adjacent log terms then cancel analytically
        let near = self
            .xs
            .iter()
            .position(|&t| (t - x).abs() < 1e-9 * h)
            .filter(|&m| m > 0 && m < n - 1);
        let mut pv = C64::new(0.0, 0.0);
        for j in 0..n - 1 {
            let (f0, f1) = (self.log_g[j], self.log_g[j + 1]);
            if f0.norm() < NEGLIGIBLE && f1.norm() < NEGLIGIBLE {
                continue;
            }
            let dx = self.xs[j + 1] - self.xs[j];
            let b = (f1 - f0) / dx;
            if let Some(m) = near {
                if j + 1 == m || j == m {
                    // combined: f(x_m)(ln Δ_R − ln Δ_L) handled once at j == m
                    if j == m {
                        let dl = self.xs[m] - self.xs[m - 1];
                        let dr = self.xs[m + 1] - self.xs[m];
                        pv += self.log_g[m] * (dr / dl).ln();
                    }
                    pv += b * dx;
                    continue;
                }
            }
            let ratio = ((self.xs[j + 1] - x) / (self.xs[j] - x)).abs();
            pv += (f0 + b * (x - self.xs[j])) * ratio.ln() + b * dx;
        }
        pv += self.tail_correction(C64::new(x, 0.0));
        let fx = self.interp_log(x);
        let half = match side {
            Side::Plus => fx * 0.5,
            Side::Minus => -fx * 0.5,
        };
        Ok(half + pv / (2.0 * PI * I))
    }

    fn interp_log(&self, x: f64) -> C64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.log_g[i.min(n - 1)],
            Err(i) => i.clamp(1, n - 1),
        };
        let t = (x - self.xs[i - 1]) / (self.xs[i] - self.xs[i - 1]);
        self.log_g[i - 1] * (1.0 - t) + self.log_g[i] * t
    }
}

/// Placement rule for the numerator points of the rational factors: the
/// factor absorbing a zero at ξ is (λ − cξ)/(λ − ξ) with one global
/// multiplier c. Tying θ = cξ to its zero keeps the modified coefficient
/// continuous at the origin whenever the zero family is balanced across
/// sectors (one image of each bound state per sector), which is what makes
/// the recovered solution independent of the choice of c.
#[derive(Debug, Clone, Copy)]
pub struct ThetaFrame {
    pub mult: C64,
}

impl ThetaFrame {
    pub fn standard() -> Self {
        ThetaFrame { mult: (I * PI * 7.0 / 6.0).exp() }
    }

    /// The multiplier must rotate a contour zero strictly inside a sector
    /// not adjacent to it: arg c away from multiples of π/3 and outside
    /// (−π/3, π/3).
    pub fn custom(mult: C64) -> Result<Self> {
        let a = mult.arg().rem_euclid(2.0 * PI);
        let off_rays = a.rem_euclid(PI / 3.0);
        if mult.norm() < 1e-12
            || off_rays.min(PI / 3.0 - off_rays) < 1e-6
            || !(PI / 3.0..=5.0 * PI / 3.0).contains(&a)
        {
            return Err(Error::ThetaOnContour(mult));
        }
        Ok(ThetaFrame { mult })
    }
}

/// Open sector index 1..=6 of an off-contour point (S_p spans arguments
/// ((p−1)π/3, pπ/3)).
pub fn sector_of(z: C64) -> Result<usize> {
    if z.norm() < 1e-300 {
        return Err(Error::TooCloseToContour(z));
    }
    let mut a = z.arg();
    if a < 0.0 {
        a += 2.0 * PI;
    }
    let t = a.rem_euclid(PI / 3.0);
    if t.min(PI / 3.0 - t) < 1e-9 {
        return Err(Error::TooCloseToContour(z));
    }
    Ok(((a / (PI / 3.0)).floor() as usize).min(5) + 1)
}

/// Sectors adjacent to the given half of line k: (left-of-orientation,
/// right-of-orientation) = (Plus side, Minus side).
pub fn side_sectors(k: usize, x: f64) -> (usize, usize) {
    match (k, x > 0.0) {
        (1, true) => (1, 6),
        (1, false) => (3, 4),
        (2, true) => (3, 2),
        (2, false) => (5, 6),
        (3, true) => (5, 4),
        (3, false) => (1, 2),
        _ => unreachable!(),
    }
}

/// The jump problem on the bundle with prescribed zeros on the contour.
/// Each sector's solution is ψ_j = ψ̃(z)·Π_ξ (z−ξ)/(z−cξ) over its zero list,
/// where ψ̃ solves the zero-free problem with the accordingly modified
/// coefficients.
pub struct RhProblem {
    lines: [ContourLine; 3],
    zeros: [Vec<C64>; 6],
    frame: ThetaFrame,
}

fn rho_ratio(zeros: &[Vec<C64>; 6], mult: C64, jp: usize, jm: usize, z: C64) -> C64 {
    // zeros shared by both sectors cancel exactly; contour samples may sit
    // right on such a ξ, so the cancellation must happen before division
    let mut rest_m: Vec<C64> = zeros[jm - 1].clone();
    let mut acc = C64::new(1.0, 0.0);
    for &xi in &zeros[jp - 1] {
        if let Some(pos) = rest_m.iter().position(|&o| (o - xi).norm() < 1e-12) {
            rest_m.swap_remove(pos);
        } else {
            acc *= (z - mult * xi) / (z - xi);
        }
    }
    for &xi in &rest_m {
        acc *= (z - xi) / (z - mult * xi);
    }
    acc
}

/// Large-|x| expansion of ln ρ₊/ρ₋ along line k:
///   ln[(λ−cξ)/(λ−ξ)] = Σ_m ξ^m(1−c^m)/(m λ^m), λ = xζ_k,
/// giving exact inverse-power coefficients for the tail models.
fn rho_log_tail(
    zeros: &[Vec<C64>; 6],
    mult: C64,
    jp: usize,
    jm: usize,
    k: usize,
) -> Vec<C64> {
    let zk = zeta(k);
    let mut coef = vec![C64::new(0.0, 0.0); TAIL_ORDER];
    let mut add = |xi: C64, sign: f64| {
        let mut p_xi = C64::new(1.0, 0.0);
        let mut p_cxi = C64::new(1.0, 0.0);
        let mut p_z = C64::new(1.0, 0.0);
        for m in 1..=TAIL_ORDER {
            p_xi *= xi;
            p_cxi *= mult * xi;
            p_z *= zk;
            coef[m - 1] += (p_xi - p_cxi) / (m as f64) / p_z * sign;
        }
    };
    let mut rest_m = zeros[jm - 1].clone();
    for &xi in &zeros[jp - 1] {
        if let Some(pos) = rest_m.iter().position(|&o| (o - xi).norm() < 1e-12) {
            rest_m.swap_remove(pos);
        } else {
            add(xi, 1.0);
        }
    }
    for &xi in &rest_m {
        add(xi, -1.0);
    }
    coef
}

impl RhProblem {
    /// `samples[k−1]` = (parameter grid, Ĝ_k values) on line k. `zeros[j−1]`
    /// lists the required zeros of the sector-j solution (contour points
    /// shared by two sectors appear in both lists; the origin is excluded).
    pub fn new(
        samples: [(Vec<f64>, Vec<C64>); 3],
        zeros: [Vec<C64>; 6],
        frame: ThetaFrame,
    ) -> Result<Self> {
        let none: [[Vec<C64>; 2]; 3] = Default::default();
        Self::with_raw_tails(samples, none, zeros, frame)
    }

    /// As `new`, but with declared inverse-power tail models for the raw
    /// data: `raw_tails[k−1] = [left, right]` coefficients of ln Ĝ_k beyond
    /// the grid ends. `new` assumes those tails are negligible; the slowly
    /// decaying tails of the rational modification are always added exactly.
    pub fn with_raw_tails(
        samples: [(Vec<f64>, Vec<C64>); 3],
        raw_tails: [[Vec<C64>; 2]; 3],
        zeros: [Vec<C64>; 6],
        frame: ThetaFrame,
    ) -> Result<Self> {
        for zs in zeros.iter() {
            for &xi in zs {
                if xi.norm() < 1e-12 {
                    return Err(Error::Domain(
                        "λ = 0 cannot carry a rational factor".into(),
                    ));
                }
            }
        }
        let mut lines_built = Vec::with_capacity(3);
        for ((i, (xs, g)), raw) in samples.into_iter().enumerate().zip(raw_tails) {
            let k = i + 1;
            let modified: Vec<C64> = xs
                .iter()
                .zip(g.iter())
                .map(|(&x, &gv)| {
                    let lam = x * zeta(k);
                    let (sp, sm) = side_sectors(k, x);
                    gv * rho_ratio(&zeros, frame.mult, sp, sm, lam)
                })
                .collect();
            let mut line = ContourLine::from_samples(k, xs, modified)?;
            let [raw_l, raw_r] = raw;
            let mut tails = [raw_l, raw_r];
            for (t, x) in tails.iter_mut().zip([-1.0, 1.0]) {
                let (sp, sm) = side_sectors(k, x);
                let rho = rho_log_tail(&zeros, frame.mult, sp, sm, k);
                t.resize(t.len().max(rho.len()), C64::new(0.0, 0.0));
                for (a, b) in t.iter_mut().zip(&rho) {
                    *a += b;
                }
            }
            let [left, right] = tails;
            line.set_tails(left, right);
            lines_built.push(line);
        }
        let mut it = lines_built.into_iter();
        Ok(RhProblem {
            lines: std::array::from_fn(|_| it.next().unwrap()),
            zeros,
            frame,
        })
    }

    /// 1/ρ_j — the factor restoring the prescribed zeros in sector j.
    fn rho_inv(&self, j: usize, z: C64) -> C64 {
        let mut acc = C64::new(1.0, 0.0);
        for &xi in &self.zeros[j - 1] {
            acc *= (z - xi) / (z - self.frame.mult * xi);
        }
        acc
    }

    /// Worst truncation diagnostic over the three lines.
    pub fn tail(&self) -> f64 {
        self.lines.iter().map(|l| l.tail()).fold(0.0, f64::max)
    }

    fn phi(&self, z: C64) -> C64 {
        self.lines.iter().map(|l| l.cauchy(z)).sum::<C64>() / (2.0 * PI * I)
    }

    /// Solution at an off-contour point.
    pub fn eval(&self, z: C64) -> Result<C64> {
        let j = sector_of(z)?;
        Ok(self.phi(z).exp() * self.rho_inv(j, z))
    }

    /// One-sided boundary value at λ = xζ_k: the own-line limit is exact
    /// (Plemelj); the other two lines are evaluated off-contour, so |x| must
    /// clear the origin by a couple of grid steps.
    pub fn boundary(&self, k: usize, x: f64, side: Side) -> Result<C64> {
        assert!((1..=3).contains(&k));
        let own = &self.lines[k - 1];
        if x.abs() < 2.0 * own.h_near(x) {
            return Err(Error::TooCloseToContour(x * zeta(k)));
        }
        let z = x * zeta(k);
        let mut total = own.plemelj(x, side)?;
        for l in self.lines.iter() {
            if l.k != k {
                total += l.cauchy(z) / (2.0 * PI * I);
            }
        }
        let (sp, sm) = side_sectors(k, x);
        let j = match side {
            Side::Plus => sp,
            Side::Minus => sm,
        };
        Ok(total.exp() * self.rho_inv(j, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ZETA2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// ln Ĝ = (1−x²)² on [−1,1], 0 outside; its Cauchy transform is
    /// (1/2πi)[2w³ − (10/3)w + (1−w²)²·Log((1−w)/(−1−w))].
    fn bump(x: f64) -> f64 {
        if x.abs() >= 1.0 {
            0.0
        } else {
            let t = 1.0 - x * x;
            t * t
        }
    }

    fn bump_cauchy(w: C64) -> C64 {
        let t = 1.0 - w * w;
        (w.powu(3) * 2.0 - w * (10.0 / 3.0) + t * t * ((1.0 - w) / (-1.0 - w)).ln())
            / (2.0 * PI * I)
    }

    fn grid(n: usize, half: f64) -> Vec<f64> {
        let h = 2.0 * half / n as f64;
        (0..=n).map(|j| -half + h * j as f64).collect()
    }

    fn bump_problem(frame: ThetaFrame, zeros: [Vec<C64>; 6]) -> RhProblem {
        let xs = grid(4000, 2.0);
        let g1: Vec<C64> = xs.iter().map(|&x| c(bump(x).exp(), 0.0)).collect();
        let ones = vec![c(1.0, 0.0); xs.len()];
        RhProblem::new(
            [(xs.clone(), g1), (xs.clone(), ones.clone()), (xs, ones)],
            zeros,
            frame,
        )
        .unwrap()
    }

    fn no_zeros() -> [Vec<C64>; 6] {
        Default::default()
    }

    #[test]
    fn trivial_jump_gives_identity() {
        let xs = grid(100, 1.0);
        let ones = vec![c(1.0, 0.0); xs.len()];
        let p = RhProblem::new(
            [(xs.clone(), ones.clone()), (xs.clone(), ones.clone()), (xs, ones)],
            no_zeros(),
            ThetaFrame::standard(),
        )
        .unwrap();
        for &z in &[c(0.3, 0.4), c(-0.2, -0.7), c(5.0, 1.0)] {
            assert!((p.eval(z).unwrap() - 1.0).norm() < 1e-14);
        }
        assert!(p.tail() == 0.0);
    }

    #[test]
    fn single_line_bump_matches_closed_form() {
        let p = bump_problem(ThetaFrame::standard(), no_zeros());
        // one probe point inside each sector
        for j in 0..6 {
            let z = 0.8 * (I * PI * (2.0 * j as f64 + 1.0) / 6.0).exp();
            let expect = bump_cauchy(z).exp();
            let got = p.eval(z).unwrap();
            assert!((got - expect).norm() < 1e-6, "sector {}: {got} vs {expect}", j + 1);
        }
        // far away and close to the density support
        for &z in &[c(3.0, 2.0), c(0.1, 0.02), c(-0.9, -0.05)] {
            assert!((p.eval(z).unwrap() - bump_cauchy(z).exp()).norm() < 1e-6);
        }
    }

    #[test]
    fn boundary_values_satisfy_jump_relation() {
        let p = bump_problem(ThetaFrame::standard(), no_zeros());
        for &x in &[0.3, -0.62, 0.9150001] {
            let plus = p.boundary(1, x, Side::Plus).unwrap();
            let minus = p.boundary(1, x, Side::Minus).unwrap();
            // ψ₊ = Ĝψ₋ on the line
            assert!((plus / minus - bump(x).exp()).norm() < 1e-6, "x={x}");
            // both limits match the closed form with Log → ln|·| ± iπ
            let lg = (1.0_f64 - x).abs().ln() - (1.0_f64 + x).abs().ln();
            for (side, v) in [(1.0, plus), (-1.0, minus)] {
                let t = 1.0 - x * x;
                let expect = ((2.0 * x.powi(3) - 10.0 * x / 3.0 + t * t * lg) * c(1.0, 0.0)
                    + t * t * c(0.0, side * PI))
                    / (2.0 * PI * I);
                assert!((v - expect.exp()).norm() < 1e-6, "x={x} side={side}");
            }
        }
        // other lines see the bump only through the smooth part
        let v2p = p.boundary(2, 0.4, Side::Plus).unwrap();
        let v2m = p.boundary(2, 0.4, Side::Minus).unwrap();
        assert!((v2p - v2m).norm() < 1e-9); // no jump on line 2
        assert!((v2p - bump_cauchy(0.4 * ZETA2).exp()).norm() < 1e-6);
    }

    #[test]
    fn prescribed_zero_and_theta_independence() {
        // a bound-state style zero family: ξ on the positive real ray plus
        // its rotations, one image in every sector. The jump data must carry
        // the winding these zeros impose, so build it from a known sectional
        // solution ψ_j = exp(C_bump)·Π (z−ξ)/(z−c₁ξ).
        let xi = c(0.5, 0.0);
        let zeros: [Vec<C64>; 6] = [
            vec![xi],
            vec![ZETA2 * xi],
            vec![ZETA2 * xi],
            vec![xi * ZETA2.conj()],
            vec![xi * ZETA2.conj()],
            vec![xi],
        ];
        let c1 = ThetaFrame::standard();
        let xs = grid(4000, 2.0);
        let samples = |zero_sets: &[Vec<C64>; 6]| -> [(Vec<f64>, Vec<C64>); 3] {
            std::array::from_fn(|i| {
                let k = i + 1;
                let g: Vec<C64> = xs
                    .iter()
                    .map(|&x| {
                        let raw = if k == 1 { bump(x).exp() } else { 1.0 };
                        let (sp, sm) = side_sectors(k, x);
                        // jump of the known solution: raw / (ρ₊/ρ₋)
                        raw / rho_ratio(zero_sets, c1.mult, sp, sm, x * zeta(k))
                    })
                    .collect();
                (xs.clone(), g)
            })
        };
        // the input's own log tails are −ln(ρ₊/ρ₋) of the generating frame
        let raw_tails = || -> [[Vec<C64>; 2]; 3] {
            std::array::from_fn(|i| {
                let k = i + 1;
                std::array::from_fn(|h| {
                    let x = if h == 0 { -1.0 } else { 1.0 };
                    let (sp, sm) = side_sectors(k, x);
                    rho_log_tail(&zeros, c1.mult, sp, sm, k)
                        .iter()
                        .map(|v| -v)
                        .collect()
                })
            })
        };
        let p =
            RhProblem::with_raw_tails(samples(&zeros), raw_tails(), zeros.clone(), c1)
                .unwrap();
        // matches the generating solution off the contour
        for j in 0..6 {
            let z = 0.7 * (I * PI * (2.0 * j as f64 + 1.0) / 6.0).exp();
            let expect = bump_cauchy(z).exp() * p.rho_inv(j + 1, z);
            let got = p.eval(z).unwrap();
            assert!((got - expect).norm() < 1e-6, "sector {}", j + 1);
        }
        // vanishes at ξ from both sides
        let scale = p.boundary(1, 0.9, Side::Plus).unwrap().norm();
        for side in [Side::Plus, Side::Minus] {
            let v = p.boundary(1, 0.5, side).unwrap();
            assert!(v.norm() < 1e-9 * scale.max(1.0), "{side:?}: {v}");
        }
        // a different numerator placement leaves the solution unchanged
        let alt = ThetaFrame::custom(0.8 * (I * PI * 5.0 / 6.0).exp()).unwrap();
        let q =
            RhProblem::with_raw_tails(samples(&zeros), raw_tails(), zeros.clone(), alt)
                .unwrap();
        for j in 0..6 {
            let z = 0.7 * (I * PI * (2.0 * j as f64 + 1.0) / 6.0).exp();
            let a = p.eval(z).unwrap();
            let b = q.eval(z).unwrap();
            assert!((a - b).norm() < 1e-6, "sector {}: {a} vs {b}", j + 1);
        }
    }

    #[test]
    fn winding_data_rejected() {
        // Ĝ(x) = (x−0.3i)/(x+0.3i) has index one along the real line
        let xs = grid(2000, 30.0);
        let g: Vec<C64> = xs.iter().map(|&x| (c(x, -0.3)) / (c(x, 0.3))).collect();
        let err = ContourLine::from_samples(1, xs, g);
        assert!(matches!(err, Err(Error::IndexNonZero { line: 1, .. })));
    }

    #[test]
    fn theta_placement_checked() {
        // multipliers mapping zeros onto rays or adjacent sectors are refused
        assert!(matches!(
            ThetaFrame::custom(c(0.9, 0.0)),
            Err(Error::ThetaOnContour(_))
        ));
        assert!(matches!(
            ThetaFrame::custom(0.7 * (I * PI / 3.0).exp()),
            Err(Error::ThetaOnContour(_))
        ));
        assert!(ThetaFrame::custom(0.8 * (I * PI * 5.0 / 6.0).exp()).is_ok());
        assert!(sector_of(c(0.2, 1e-12)).is_err());
        assert!(sector_of(c(0.2, 0.1)).unwrap() == 1);
        assert!(sector_of(c(-0.2, -0.1)).unwrap() == 4);
    }
}
