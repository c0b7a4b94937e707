//! The quantum logarithm `φ^ℏ` and quantum dilogarithm `Φ^ℏ` on the whole
//! plane minus their poles.
//!
//! Inside the strip of convergence the contour integral is used directly.
//! Near or beyond its edge the argument is moved back by the shift
//! relations `z ↦ z ∓ 2πiℏ` (for `ℏ ≤ 1`) or `z ↦ z ∓ 2πi` (for `ℏ > 1`).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{contour_integral, strip_half_width, ComplexValue, Kernel, QuadratureConfig};
use crate::error::Result;

fn i() -> Complex64 {
    Complex64::i()
}

/// `log(1 + e^w)` on some branch, without overflow.
pub fn log1p_exp(w: Complex64) -> Complex64 {
    if w.re > 30.0 {
        w + (-w).exp().ln_1p_c()
    } else {
        w.exp().ln_1p_c()
    }
}

trait Ln1p {
    fn ln_1p_c(self) -> Complex64;
}

impl Ln1p for Complex64 {
    fn ln_1p_c(self) -> Complex64 {
        if self.norm() < 1e-8 {
            self - self * self / 2.0
        } else {
            (Complex64::new(1.0, 0.0) + self).ln()
        }
    }
}

fn direct_margin(hbar: f64) -> f64 {
    0.2 * PI * hbar.min(1.0)
}

/// Number of shift steps and their size needed to bring `z` into the
/// region of direct evaluation.
fn plan_shift(z: Complex64, hbar: f64) -> (i64, f64) {
    let step = 2.0 * PI * hbar.min(1.0);
    let limit = strip_half_width(hbar) - direct_margin(hbar);
    if z.im.abs() <= limit {
        return (0, step);
    }
    let k = ((z.im.abs() - limit) / step).ceil() as i64;
    (k * z.im.signum() as i64, step)
}

fn shifted(
    kernel: Kernel,
    z: Complex64,
    hbar: f64,
    cfg: &QuadratureConfig,
    correction: impl Fn(Complex64, bool) -> Complex64,
) -> Result<ComplexValue> {
    let (k, step) = plan_shift(z, hbar);
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..k.unsigned_abs() {
        let up = k > 0;
        acc += correction(w, up);
        w -= i() * step * k.signum() as f64;
    }
    let base = contour_integral(kernel, w, hbar, cfg)?;
    Ok(ComplexValue::new(base.value + acc, base.abs_err))
}

/// `φ^ℏ(z)`.
pub fn phi(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    shifted(Kernel::Phi, z, hbar, cfg, |w, up| {
        let s = if up { 1.0 } else { -1.0 };
        if hbar <= 1.0 {
            // φ(w) = φ(w ∓ 2πiℏ) ± 2πiℏ / (e^{-(w ∓ iπℏ)} + 1)
            s * 2.0 * PI * i() * hbar / ((-(w - s * i() * PI * hbar)).exp() + 1.0)
        } else {
            s * 2.0 * PI * i() / ((-(w - s * i() * PI) / hbar).exp() + 1.0)
        }
    })
}

/// A logarithm of `Φ^ℏ(z)`; inside the strip it is the defining exponent,
/// outside the branch is unspecified.
pub fn log_qdilog(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    shifted(Kernel::LogQdilog, z, hbar, cfg, |w, up| {
        let s = if up { 1.0 } else { -1.0 };
        if hbar <= 1.0 {
            // Φ(w) = Φ(w ∓ 2πiℏ)(1 + e^{w ∓ iπℏ})^{±1}
            s * log1p_exp(w - s * i() * PI * hbar)
        } else {
            s * log1p_exp((w - s * i() * PI) / hbar)
        }
    })
}

/// `Φ^ℏ(z)`.
pub fn qdilog(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    let l = log_qdilog(z, hbar, cfg)?;
    let v = l.value.exp();
    Ok(ComplexValue::new(v, v.norm() * l.abs_err))
}

/// `dφ^ℏ/dz` inside the strip.
pub fn phi_prime(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    contour_integral(Kernel::PhiPrime, z, hbar, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn spec_examples_phi() {
        let a = phi(c(1.0, 0.0), 0.7, &cfg()).unwrap().value;
        let b = phi(c(-1.0, 0.0), 0.7, &cfg()).unwrap().value;
        assert!((a - b - 1.0).norm() < 1e-8);
        let v = phi(c(0.0, 0.0), 0.01, &cfg()).unwrap().value;
        assert!((v - 2f64.ln()).norm() <= 0.02);
        let l = phi(c(0.5, 0.0), 0.3, &cfg()).unwrap().value / 0.3;
        let r = phi(c(0.5 / 0.3, 0.0), 1.0 / 0.3, &cfg()).unwrap().value;
        assert!((l - r).norm() < 1e-8);
    }

    #[test]
    fn spec_examples_qdilog() {
        let v = qdilog(c(1.7, 0.0), 0.3, &cfg()).unwrap().value;
        assert!((v.norm() - 1.0).abs() < 1e-8);
        let z = c(0.8, 0.0);
        let h = 0.5;
        let lhs = qdilog(z, h, &cfg()).unwrap().value * qdilog(-z, h, &cfg()).unwrap().value;
        let rhs = (z * z / (4.0 * PI * i() * h)).exp()
            * (-PI * i() / 12.0 * (h + 1.0 / h)).exp();
        assert!((lhs - rhs).norm() < 1e-6);
        let v = qdilog(c(-30.0, 0.0), 1.0, &cfg()).unwrap().value;
        assert!((v - 1.0).norm() < 1e-6);
    }

    #[test]
    fn shifted_evaluation_agrees_with_direct_near_the_edge() {
        // a point inside the strip but beyond the direct-evaluation margin
        let h = 0.6;
        let z = c(0.3, strip_half_width(h) - 0.1);
        let via_shift = phi(z, h, &cfg()).unwrap().value;
        let lower = phi(z - 2.0 * PI * i() * h, h, &cfg()).unwrap().value;
        let expect = lower + 2.0 * PI * i() * h / ((-(z - i() * PI * h)).exp() + 1.0);
        assert!((via_shift - expect).norm() < 1e-10);
        let far = phi(c(0.3, 12.0), h, &cfg()).unwrap();
        assert!(far.value.norm().is_finite());
    }
}
