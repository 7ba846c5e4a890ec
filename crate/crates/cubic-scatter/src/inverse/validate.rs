//! Self-consistency validation of exported scattering data before the
//! inverse pipeline is allowed to touch it: holomorphy of the samples along
//! the diameters, the rotation law of C, the T-product and u-unitarity
//! identities, and the structure of the real spectrum set.

use super::boundary::{t_at, u_at};
use crate::direct::export::ScatteringData;
use crate::direct::scatter::zeta2_pow;
use crate::interp::fit_poly;
use crate::C64;

#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct OmegaReport {
    pub items: Vec<CheckItem>,
}

impl OmegaReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        self.items
            .iter()
            .map(|i| {
                format!(
                    "{:<28} residual {:>12.3e}  tol {:>8.1e}  {}",
                    i.name,
                    i.residual,
                    i.tol,
                    if i.pass { "ok" } else { "FAIL" }
                )
            })
            .collect()
    }
}

fn item(name: &str, residual: f64, tol: f64) -> CheckItem {
    CheckItem { name: name.into(), residual, tol, pass: residual <= tol }
}

/// Validate a scattering-data set. Checks, in order: the sampled functions
/// are smooth along each diameter (λS₂, λS₃ and C admit low-degree
/// polynomial models — both S's carry a simple 1/λ part), C obeys its
/// rotation law, the T-product and u-unitarity identities hold away from 0,
/// and the real spectrum set has the required sign/zero structure.
pub fn validate_omega(d: &ScatteringData) -> OmegaReport {
    let mut items = Vec::new();
    let zs: Vec<C64> = d.grid.iter().map(|&x| C64::new(x, 0.0)).collect();

    // (i) holomorphy along the diameters
    for k in 1..=3usize {
        for (tag, vals, mul_lambda) in [
            ("λS₂", &d.s2[k - 1], true),
            ("λS₃", &d.s3[k - 1], true),
            ("C", &d.c[k - 1], false),
        ] {
            let ys: Vec<C64> = vals
                .iter()
                .zip(&d.grid)
                .map(|(&v, &x)| if mul_lambda { v * x } else { v })
                .collect();
            let scale = ys.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
            let (_, rms) = fit_poly(&zs, &ys, 12);
            items.push(item(
                &format!("holomorphy {tag} line {k}"),
                rms / scale.max(1e-300),
                1e-6,
            ));
        }
    }

    // (ii) rotation law C(λζ₂) = ζ₂^r C(λ) by index shift
    let zr = zeta2_pow(d.r);
    let mut rot = 0.0_f64;
    let mut c_scale = 0.0_f64;
    for k in 1..=3usize {
        for j in 0..d.grid.len() {
            rot = rot.max((d.c[k % 3][j] - zr * d.c[k - 1][j]).norm());
            c_scale = c_scale.max(d.c[k - 1][j].norm());
        }
    }
    items.push(item("rotation law of C", rot / c_scale.max(1e-300), 1e-8));

    // T-product and u-unitarity away from the removable point at 0
    let mut tprod = 0.0_f64;
    let mut uu = 0.0_f64;
    for (j, &x) in d.grid.iter().enumerate() {
        if x.abs() < 0.05 * d.a_prime {
            continue;
        }
        if let (Ok(t1), Ok(t2), Ok(t3)) = (t_at(d, 1, j), t_at(d, 2, j), t_at(d, 3, j)) {
            tprod = tprod.max((t1 * t2 * t3 + 1.0).norm());
        }
        if let Ok(u1) = u_at(d, 1, j) {
            // λ real: u*(λ) = conj u(λ)
            uu = uu.max((u1.conj() * u1 - 1.0).norm());
        }
    }
    items.push(item("T-product = −1", tprod, 1e-8));
    items.push(item("u-unitarity on ℝ", uu, 1e-8));

    // (iii) structure of the real spectrum set
    let mut bad = 0.0;
    if !d.ealpha.include_zero {
        bad += 1.0;
    }
    if d.ealpha.zk.iter().any(|&z| z <= 0.0) {
        bad += 1.0;
    }
    if d.ealpha.ws.iter().any(|&w| w >= 0.0) {
        bad += 1.0;
    }
    for v in [&d.ealpha.zk, &d.ealpha.ws] {
        let mut sorted = v.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted.windows(2).any(|w| (w[1] - w[0]).abs() < 1e-10) {
            bad += 1.0;
        }
    }
    items.push(item("spectrum-set structure", bad, 0.5));

    OmegaReport { items }
}
