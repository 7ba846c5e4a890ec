//! Interpolation and fitting: C¹ cubic Hermite splines on nonuniform grids
//! (real and complex valued) and complex polynomial least squares used for
//! analytic continuation off sampled diameters.

use crate::C64;
use nalgebra::DMatrix;

/// Cubic Hermite interpolant with three-point slope estimates.
#[derive(Debug, Clone)]
pub struct Spline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ms: Vec<f64>,
}

impl Spline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(xs.len() >= 2 && xs.len() == ys.len());
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "grid must be ascending");
        let n = xs.len();
        // uniform grids with enough points get 5-point 4th-order slopes; the
        // tabulated kernels (g_q, |q̃₁|²) rely on this for ~1e-10 accuracy
        let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
        let uniform =
            n >= 5 && xs.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-10 * h);
        let mut ms = vec![0.0; n];
        if uniform {
            let c = 1.0 / (12.0 * h);
            ms[0] = c * (-25.0 * ys[0] + 48.0 * ys[1] - 36.0 * ys[2] + 16.0 * ys[3]
                - 3.0 * ys[4]);
            ms[1] =
                c * (-3.0 * ys[0] - 10.0 * ys[1] + 18.0 * ys[2] - 6.0 * ys[3] + ys[4]);
            for i in 2..n - 2 {
                ms[i] = c * (ys[i - 2] - 8.0 * ys[i - 1] + 8.0 * ys[i + 1] - ys[i + 2]);
            }
            ms[n - 2] = c * (3.0 * ys[n - 1] + 10.0 * ys[n - 2] - 18.0 * ys[n - 3]
                + 6.0 * ys[n - 4]
                - ys[n - 5]);
            ms[n - 1] = c * (25.0 * ys[n - 1] - 48.0 * ys[n - 2] + 36.0 * ys[n - 3]
                - 16.0 * ys[n - 4]
                + 3.0 * ys[n - 5]);
            return Spline { xs, ys, ms };
        }
        let d: Vec<f64> = (0..n - 1)
            .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
            .collect();
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            ms[i] = (h1 * d[i - 1] + h0 * d[i]) / (h0 + h1);
        }
        if n == 2 {
            ms[0] = d[0];
            ms[1] = d[0];
        } else {
            let h0 = xs[1] - xs[0];
            let h1 = xs[2] - xs[1];
            ms[0] = ((2.0 * h0 + h1) * d[0] - h0 * d[1]) / (h0 + h1);
            let hm = xs[n - 1] - xs[n - 2];
            let hp = xs[n - 2] - xs[n - 3];
            ms[n - 1] = ((2.0 * hm + hp) * d[n - 2] - hm * d[n - 3]) / (hm + hp);
        }
        Spline { xs, ys, ms }
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    /// Evaluate; beyond the grid the boundary cubic is extended.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.ms[i] * h, self.ms[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + m0 * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + m1 * (t3 - t2)
    }
}

/// Complex-valued spline (componentwise).
#[derive(Debug, Clone)]
pub struct CSpline {
    re: Spline,
    im: Spline,
}

impl CSpline {
    pub fn new(xs: Vec<f64>, ys: &[C64]) -> Self {
        let re = Spline::new(xs.clone(), ys.iter().map(|v| v.re).collect());
        let im = Spline::new(xs, ys.iter().map(|v| v.im).collect());
        CSpline { re, im }
    }

    pub fn x_min(&self) -> f64 {
        self.re.x_min()
    }

    pub fn x_max(&self) -> f64 {
        self.re.x_max()
    }

    pub fn eval(&self, x: f64) -> C64 {
        C64::new(self.re.eval(x), self.im.eval(x))
    }
}

/// Polynomial in the scaled variable z/scale, coefficients low-to-high.
#[derive(Debug, Clone)]
pub struct Poly {
    pub coeffs: Vec<C64>,
    pub scale: f64,
}

impl Poly {
    pub fn eval(&self, z: C64) -> C64 {
        let t = z / self.scale;
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Least-squares polynomial fit of (zs, ys) up to `degree`; `stride` = 1 fits
/// all powers, 2 fits only even or only odd powers starting at `offset`.
/// Returns the polynomial and the RMS residual on the data.
pub fn fit_poly_strided(
    zs: &[C64],
    ys: &[C64],
    degree: usize,
    offset: usize,
    stride: usize,
) -> (Poly, f64) {
    assert_eq!(zs.len(), ys.len());
    assert!(stride >= 1 && offset <= degree);
    let scale = zs.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1e-300);
    let powers: Vec<usize> = (offset..=degree).step_by(stride).collect();
    let m = zs.len();
    let n = powers.len();
    assert!(m >= n, "underdetermined fit");
    let a = DMatrix::from_fn(m, n, |i, j| (zs[i] / scale).powu(powers[j] as u32));
    let b = DMatrix::from_fn(m, 1, |i, _| ys[i]);
    let svd = a.clone().svd(true, true);
    let sol = svd.solve(&b, 1e-13).expect("svd solve");
    let resid = (&a * &sol - &b).norm() / (m as f64).sqrt();
    let mut coeffs = vec![C64::new(0.0, 0.0); degree + 1];
    for (j, &p) in powers.iter().enumerate() {
        coeffs[p] = sol[(j, 0)];
    }
    (Poly { coeffs, scale }, resid)
}

pub fn fit_poly(zs: &[C64], ys: &[C64], degree: usize) -> (Poly, f64) {
    fit_poly_strided(zs, ys, degree, 0, 1)
}

/// Barycentric rational interpolant produced by the adaptive AAA scheme;
/// support points are a subset of the data sites.
#[derive(Debug, Clone)]
pub struct Barycentric {
    support: Vec<C64>,
    fvals: Vec<C64>,
    weights: Vec<C64>,
}

impl Barycentric {
    pub fn eval(&self, z: C64) -> C64 {
        let mut num = C64::new(0.0, 0.0);
        let mut den = C64::new(0.0, 0.0);
        for ((&zj, &fj), &wj) in
            self.support.iter().zip(&self.fvals).zip(&self.weights)
        {
            let d = z - zj;
            if d.norm() < 1e-13 * (zj.norm() + 1.0) {
                return fj;
            }
            let c = wj / d;
            num += c * fj;
            den += c;
        }
        num / den
    }

    pub fn degree(&self) -> usize {
        self.support.len().saturating_sub(1)
    }
}

/// Adaptive rational least-squares fit (greedy support selection, weights
/// from the smallest singular vector of the Loewner matrix). Returns the
/// approximant and the max deviation on the data.
pub fn aaa(zs: &[C64], fs: &[C64], tol: f64, max_degree: usize) -> (Barycentric, f64) {
    assert_eq!(zs.len(), fs.len());
    assert!(zs.len() >= 3);
    let scale = fs.iter().map(|f| f.norm()).fold(0.0_f64, f64::max).max(1e-300);
    let mean = fs.iter().sum::<C64>() / fs.len() as f64;
    let mut r = Barycentric { support: vec![], fvals: vec![], weights: vec![] };
    let mut resid: Vec<f64> = fs.iter().map(|f| (f - mean).norm()).collect();
    let mut in_support = vec![false; zs.len()];
    let mut err = resid.iter().cloned().fold(0.0_f64, f64::max);
    for _ in 0..=max_degree {
        if err <= tol * scale {
            break;
        }
        let (jstar, _) = resid
            .iter()
            .enumerate()
            .filter(|(j, _)| !in_support[*j])
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .expect("data exhausted");
        in_support[jstar] = true;
        r.support.push(zs[jstar]);
        r.fvals.push(fs[jstar]);
        let rest: Vec<usize> = (0..zs.len()).filter(|&j| !in_support[j]).collect();
        if rest.len() <= r.support.len() {
            break;
        }
        let m = r.support.len();
        let a = DMatrix::from_fn(rest.len(), m, |i, j| {
            (fs[rest[i]] - r.fvals[j]) / (zs[rest[i]] - r.support[j])
        });
        let svd = a.svd(true, true);
        let (jmin, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.partial_cmp(y.1).unwrap())
            .unwrap();
        let vt = svd.v_t.as_ref().expect("svd with V");
        r.weights = (0..m).map(|j| vt[(jmin, j)].conj()).collect();
        err = 0.0;
        for (j, rs) in resid.iter_mut().enumerate() {
            if in_support[j] {
                *rs = 0.0;
            } else {
                *rs = (fs[j] - r.eval(zs[j])).norm();
                err = err.max(*rs);
            }
        }
    }
    (r, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_smooth_function() {
        let xs: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| (x * 1.3).sin() * (-0.4 * x).exp()).collect();
        let s = Spline::new(xs, ys);
        let mut max_err: f64 = 0.0;
        for i in 0..500 {
            let x = 0.01 + i as f64 * 0.0197;
            let exact = (x * 1.3).sin() * (-0.4 * x).exp();
            max_err = max_err.max((s.eval(x) - exact).abs());
        }
        assert!(max_err < 2e-5, "max err {max_err}");
    }

    #[test]
    fn poly_fit_exact_on_polynomials() {
        let zs: Vec<C64> = (0..40).map(|i| C64::new(-1.0 + i as f64 * 0.05, 0.0)).collect();
        let truth = |z: C64| z * z * z * C64::new(0.0, 2.0) - z * 1.5 + 0.25;
        let ys: Vec<C64> = zs.iter().map(|&z| truth(z)).collect();
        let (p, r) = fit_poly(&zs, &ys, 5);
        assert!(r < 1e-12);
        let z = C64::new(0.3, 0.4);
        assert!((p.eval(z) - truth(z)).norm() < 1e-11);
    }

    #[test]
    fn aaa_recovers_rational_and_extrapolates() {
        // r(z) = (z² + 2)/((z + 1)²(z − 3i)) sampled on a real interval must be
        // reproduced exactly (degree 3) and extrapolate off the axis
        let truth = |z: C64| {
            (z * z + 2.0) / ((z + 1.0) * (z + 1.0) * (z - C64::new(0.0, 3.0)))
        };
        let zs: Vec<C64> = (0..120).map(|i| C64::new(0.05 + i as f64 * 0.04, 0.0)).collect();
        let fs: Vec<C64> = zs.iter().map(|&z| truth(z)).collect();
        let (r, err) = aaa(&zs, &fs, 1e-13, 40);
        assert!(err < 1e-12, "fit err {err}");
        assert!(r.degree() <= 6);
        for z in [C64::new(1.1, 2.0), C64::new(-0.3, 0.5), C64::new(8.0, -1.0)] {
            let d = (r.eval(z) - truth(z)).norm();
            assert!(d < 1e-9, "at {z}: {d}");
        }
    }

    #[test]
    fn aaa_handles_non_rational_smooth_data() {
        let zs: Vec<C64> = (0..200).map(|i| C64::new(-3.0 + i as f64 * 0.03, 0.0)).collect();
        let fs: Vec<C64> = zs.iter().map(|&z| (-z * z).exp()).collect();
        let (r, err) = aaa(&zs, &fs, 1e-11, 60);
        assert!(err < 1e-10, "fit err {err}");
        let z = C64::new(0.37, 0.0);
        assert!((r.eval(z) - (-z * z).exp()).norm() < 1e-9);
    }

    #[test]
    fn odd_fit_stays_odd() {
        let zs: Vec<C64> = (1..30).map(|i| C64::new(i as f64 * 0.03, 0.0)).collect();
        let ys: Vec<C64> = zs.iter().map(|&z| z * 2.0 - z * z * z * 0.7).collect();
        let (p, r) = fit_poly_strided(&zs, &ys, 9, 1, 2);
        assert!(r < 1e-12);
        for k in [0, 2, 4, 6, 8] {
            assert!(p.coeffs[k].norm() < 1e-14);
        }
        let z = C64::new(0.5, 0.0);
        assert!((p.eval(z) - (p.eval(-z) * -1.0)).norm() < 1e-13);
    }
}
