//! Contour quadrature for the Fourier-type integrals defining the quantum
//! logarithm and dilogarithm.
//!
//! The contour runs along `[-T, -r]`, the upper half circle of radius `r`
//! around the origin, and `[r, T]`. The two real rays are folded onto
//! `[r, T]` and split into Gauss–Legendre panels, geometrically graded near
//! `r` and of bounded width further out.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Radius of the half circle around the origin; default `0.25·min(1, 1/ℏ)`.
    pub contour_radius: Option<f64>,
    /// Truncation `T`; default chosen from the tail bound at `tolerance/10`.
    pub truncation: Option<f64>,
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    /// Maximal panel width on the real rays; default `min(0.5, 0.5/ℏ, 4/|Re z|)`.
    pub panel_width: Option<f64>,
    /// Target absolute error.
    pub tolerance: f64,
    /// Re-run with a smaller rule to attach an error estimate.
    pub estimate_error: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            contour_radius: None,
            truncation: None,
            nodes: 24,
            panel_width: None,
            tolerance: 1e-12,
            estimate_error: true,
        }
    }
}

impl QuadratureConfig {
    pub fn fast() -> Self {
        QuadratureConfig {
            estimate_error: false,
            ..Self::default()
        }
    }
}

/// A complex value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub value: Complex64,
    pub abs_err: f64,
}

impl ComplexValue {
    pub fn new(value: Complex64, abs_err: f64) -> Self {
        ComplexValue { value, abs_err }
    }

    pub fn rel_err(&self) -> f64 {
        self.abs_err / self.value.norm().max(f64::MIN_POSITIVE)
    }
}

/// Which integrand `pref · p^m e^{-ipz} / (sh πp · sh πℏp)` to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// `φ^ℏ(z)`: `m = 0`, prefactor `-πℏ/2`.
    Phi,
    /// `log Φ^ℏ(z)`: `m = -1`, prefactor `-1/4`.
    LogQdilog,
    /// `dφ^ℏ/dz`: `m = 1`, prefactor `iπℏ/2`.
    PhiPrime,
}

impl Kernel {
    fn power(self) -> i32 {
        match self {
            Kernel::Phi => 0,
            Kernel::LogQdilog => -1,
            Kernel::PhiPrime => 1,
        }
    }

    fn prefactor(self, hbar: f64) -> Complex64 {
        match self {
            Kernel::Phi => Complex64::new(-PI * hbar / 2.0, 0.0),
            Kernel::LogQdilog => Complex64::new(-0.25, 0.0),
            Kernel::PhiPrime => Complex64::new(0.0, PI * hbar / 2.0),
        }
    }
}

fn gl_rule(n: usize) -> Arc<Vec<(f64, f64)>> {
    static RULES: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let map = RULES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("rule cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("positive node count"));
            Arc::new(rule.as_node_weight_pairs().to_vec())
        })
        .clone()
}

/// Half width of the strip `|Im z| < π(1+ℏ)` of absolute convergence.
pub fn strip_half_width(hbar: f64) -> f64 {
    PI * (1.0 + hbar)
}

/// Resolved contour for one evaluation.
#[derive(Debug, Clone)]
struct Contour {
    r: f64,
    panels: Vec<(f64, f64)>,
    tail: f64,
}

fn sh_weight(p: f64, hbar: f64) -> f64 {
    // 1/(sh πp sh πℏp) = 4 e^{-π(1+ℏ)p} / ((1-e^{-2πp})(1-e^{-2πℏp})), p > 0,
    // without the exponential, which is merged into the oscillatory factor.
    4.0 / ((-(-2.0 * PI * p).exp_m1()) * (-(-2.0 * PI * hbar * p).exp_m1()))
}

fn tail_bound(kernel: Kernel, hbar: f64, lambda: f64, t: f64) -> f64 {
    let c = kernel.prefactor(hbar).norm() * 2.0 * sh_weight(t, hbar) * (-lambda * t).exp();
    c * match kernel.power() {
        -1 => 1.0 / (t * lambda),
        0 => 1.0 / lambda,
        _ => t / lambda + 1.0 / (lambda * lambda),
    }
}

fn resolve(cfg: &QuadratureConfig, kernel: Kernel, z: Complex64, hbar: f64) -> Result<Contour> {
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
    }
    let lambda = strip_half_width(hbar) - z.im.abs();
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "|Im z| = {} outside the strip of half width {}",
            z.im.abs(),
            strip_half_width(hbar)
        )));
    }
    let rmax = 0.5 * (1.0f64).min(1.0 / hbar);
    let r = cfg.contour_radius.unwrap_or(0.5 * rmax);
    if !(r > 0.0 && r < rmax) {
        return Err(Error::Nonconvergent(format!(
            "contour radius {r} must lie in (0, {rmax})"
        )));
    }
    if cfg.nodes < 8 {
        return Err(Error::Nonconvergent("at least 8 nodes per panel required".into()));
    }
    let t = match cfg.truncation {
        Some(t) => {
            let tail = tail_bound(kernel, hbar, lambda, t);
            if !(t > r) || tail > cfg.tolerance {
                return Err(Error::Nonconvergent(format!(
                    "truncation {t} leaves a tail bound {tail:.3e} above tolerance {:.1e}",
                    cfg.tolerance
                )));
            }
            t
        }
        None => {
            let mut t = r + 0.5;
            while tail_bound(kernel, hbar, lambda, t) > cfg.tolerance / 10.0 {
                t += 0.5;
                if t > 1e5 {
                    return Err(Error::Nonconvergent("truncation search diverged".into()));
                }
            }
            t
        }
    };
    let w = cfg.panel_width.unwrap_or_else(|| {
        let mut w = 0.5f64.min(0.5 / hbar);
        if z.re.abs() > 0.0 {
            w = w.min(4.0 / z.re.abs());
        }
        w
    });
    let mut panels = Vec::new();
    let mut a = r;
    while a < t {
        let b = (a + w).min(2.0 * a).min(t);
        panels.push((a, b));
        a = b;
    }
    Ok(Contour {
        r,
        panels,
        tail: tail_bound(kernel, hbar, lambda, t),
    })
}

fn integrate_on(kernel: Kernel, z: Complex64, hbar: f64, c: &Contour, n: usize) -> Complex64 {
    let rule = gl_rule(n);
    let m = kernel.power();
    let cpi = strip_half_width(hbar);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut real_part = Complex64::new(0.0, 0.0);
    for &(a, b) in &c.panels {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, wt) in rule.iter() {
            let p = mid + half * x;
            // e^{-ipz} + (-1)^m e^{ipz}, each damped by e^{-π(1+ℏ)p}
            let plus = Complex64::new(p * (z.im - cpi), -p * z.re).exp();
            let minus = Complex64::new(p * (-z.im - cpi), p * z.re).exp();
            acc += (plus + sign * minus) * (sh_weight(p, hbar) * p.powi(m) * wt);
        }
        real_part += acc * half;
    }
    // half circle p = r e^{iθ}, θ from π to 0
    let mut arc = Complex64::new(0.0, 0.0);
    let i = Complex64::i();
    for (lo, hi) in [(0.0, 0.5 * PI), (0.5 * PI, PI)] {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for &(x, wt) in rule.iter() {
            let theta = mid + half * x;
            let p = Complex64::from_polar(c.r, theta);
            let f = p.powi(m) * (-i * p * z).exp() / ((PI * p).sinh() * (PI * hbar * p).sinh());
            arc += -i * p * f * (wt * half);
        }
    }
    kernel.prefactor(hbar) * (real_part + arc)
}

/// Direct contour evaluation; fails outside the strip of convergence.
pub fn contour_integral(
    kernel: Kernel,
    z: Complex64,
    hbar: f64,
    cfg: &QuadratureConfig,
) -> Result<ComplexValue> {
    let c = resolve(cfg, kernel, z, hbar)?;
    let v = integrate_on(kernel, z, hbar, &c, cfg.nodes);
    let err = if cfg.estimate_error {
        let coarse = integrate_on(kernel, z, hbar, &c, cfg.nodes - 6);
        (v - coarse).norm() + c.tail
    } else {
        c.tail
    };
    Ok(ComplexValue::new(v, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_at_large_negative_real_part_vanishes() {
        let v = contour_integral(Kernel::Phi, Complex64::new(-30.0, 0.0), 1.0, &Default::default())
            .unwrap();
        assert!(v.value.norm() < 1e-10, "{v:?}");
    }

    #[test]
    fn explicit_truncation_is_checked() {
        let cfg = QuadratureConfig {
            truncation: Some(1.0),
            ..Default::default()
        };
        assert!(matches!(
            contour_integral(Kernel::Phi, Complex64::new(0.0, 0.0), 0.5, &cfg),
            Err(Error::Nonconvergent(_))
        ));
        let cfg = QuadratureConfig {
            contour_radius: Some(0.9),
            ..Default::default()
        };
        assert!(contour_integral(Kernel::Phi, Complex64::new(0.0, 0.0), 0.5, &cfg).is_err());
    }

    #[test]
    fn outside_strip_is_rejected() {
        let z = Complex64::new(0.0, 7.0);
        assert!(matches!(
            contour_integral(Kernel::Phi, z, 1.0, &Default::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn error_estimate_is_small() {
        let v = contour_integral(Kernel::LogQdilog, Complex64::new(0.3, 0.2), 0.7, &Default::default())
            .unwrap();
        assert!(v.abs_err < 1e-11, "{v:?}");
    }
}
