//! Real-line evaluator for `φ^ℏ` and `Φ^ℏ`.
//!
//! On the real axis `log Φ^ℏ(x) = iθ(x)` with real `θ`, `φ^ℏ(x)` is real, and
//! `θ' = -φ/(2πℏ)`. The table stores `θ, θ', φ, φ'` on `[x_min, 0]` and
//! interpolates with cubic Hermite polynomials. Positive arguments are
//! reflected through
//! `θ(x) + θ(-x) = -x²/(4πℏ) - (π/12)(ℏ + 1/ℏ)` and `φ(x) - φ(-x) = x`;
//! below `x_min` both functions are below double precision and set to 0.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;

use super::quadrature::{contour_integral, Kernel, QuadratureConfig};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct QdilogCache {
    hbar: f64,
    x_min: f64,
    h: f64,
    theta: Vec<f64>,
    dtheta: Vec<f64>,
    phi: Vec<f64>,
    dphi: Vec<f64>,
}

impl QdilogCache {
    /// Default range `[-40·max(1, ℏ), 0]` and spacing `0.02·min(1, ℏ)`.
    pub fn new(hbar: f64) -> Result<Self> {
        Self::with_spacing(hbar, 0.02 * hbar.min(1.0), &QuadratureConfig::fast())
    }

    pub fn with_spacing(hbar: f64, spacing: f64, cfg: &QuadratureConfig) -> Result<Self> {
        let x_min = -40.0 * hbar.max(1.0);
        let n = (-x_min / spacing).ceil() as usize;
        let h = -x_min / n as f64;
        let rows: Vec<Result<[f64; 3]>> = (0..=n)
            .into_par_iter()
            .map(|j| {
                let z = Complex64::new(x_min + j as f64 * h, 0.0);
                let l = contour_integral(Kernel::LogQdilog, z, hbar, cfg)?;
                let p = contour_integral(Kernel::Phi, z, hbar, cfg)?;
                let dp = contour_integral(Kernel::PhiPrime, z, hbar, cfg)?;
                Ok([l.value.im, p.value.re, dp.value.re])
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        let theta = rows.iter().map(|r| r[0]).collect();
        let phi: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        let dtheta = phi.iter().map(|p| -p / (2.0 * PI * hbar)).collect();
        let dphi = rows.iter().map(|r| r[2]).collect();
        Ok(QdilogCache {
            hbar,
            x_min,
            h,
            theta,
            dtheta,
            phi,
            dphi,
        })
    }

    /// Process-wide cache keyed by `ℏ`, built on first use.
    pub fn shared(hbar: f64) -> Result<Arc<Self>> {
        static CACHES: OnceLock<Mutex<HashMap<u64, Arc<QdilogCache>>>> = OnceLock::new();
        let map = CACHES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = map.lock().expect("cache poisoned").get(&hbar.to_bits()) {
            return Ok(c.clone());
        }
        let c = Arc::new(Self::new(hbar)?);
        map.lock()
            .expect("cache poisoned")
            .insert(hbar.to_bits(), c.clone());
        Ok(c)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    fn hermite(&self, f: &[f64], df: &[f64], x: f64) -> f64 {
        let s = (x - self.x_min) / self.h;
        let j = (s.floor() as usize).min(f.len() - 2);
        let t = s - j as f64;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * f[j] + h10 * self.h * df[j] + h01 * f[j + 1] + h11 * self.h * df[j + 1]
    }

    /// `θ(x)` with `Φ^ℏ(x) = e^{iθ(x)}`.
    pub fn theta(&self, x: f64) -> f64 {
        if x > 0.0 {
            return -x * x / (4.0 * PI * self.hbar)
                - PI / 12.0 * (self.hbar + 1.0 / self.hbar)
                - self.theta(-x);
        }
        if x < self.x_min {
            return 0.0;
        }
        self.hermite(&self.theta, &self.dtheta, x)
    }

    /// `φ^ℏ(x)` for real `x`.
    pub fn phi(&self, x: f64) -> f64 {
        if x > 0.0 {
            return x + self.phi(-x);
        }
        if x < self.x_min {
            return 0.0;
        }
        self.hermite(&self.phi, &self.dphi, x)
    }

    /// `Φ^ℏ(x)` for real `x`.
    pub fn qdilog(&self, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.theta(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::functions::{log_qdilog, phi};

    #[test]
    fn interpolation_matches_direct_evaluation() {
        let cfg = QuadratureConfig::default();
        for hbar in [0.5, 1.0] {
            let cache = QdilogCache::new(hbar).unwrap();
            let mut worst: f64 = 0.0;
            for j in 0..60 {
                let x = -45.0 + 90.0 * (j as f64 + 0.37) / 60.0;
                let z = Complex64::new(x, 0.0);
                let t = log_qdilog(z, hbar, &cfg).unwrap().value;
                let p = phi(z, hbar, &cfg).unwrap().value;
                worst = worst
                    .max((cache.theta(x) - t.im).abs())
                    .max(t.re.abs())
                    .max((cache.phi(x) - p.re).abs());
            }
            assert!(worst < 1e-8, "hbar={hbar}: {worst:e}");
        }
    }
}
