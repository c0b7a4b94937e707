//! Residuals of the functional identities of `φ^ℏ` and `Φ^ℏ`.
//!
//! Identities that are exact relations between values (A2–A5, B, B0, B2–B5)
//! are checked with direct contour quadrature only, so that none of them is
//! implied by the shift relations used to continue the functions off the
//! strip. Points outside the strip are a domain error.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::functions::qdilog;
use super::li2::li2;
use super::quadrature::{contour_integral, strip_half_width, Kernel, QuadratureConfig};
use crate::error::{Error, Result};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    A1,
    A2,
    A3,
    A4,
    A5,
    A5b,
    A6,
    B,
    B0,
    B1,
    B2,
    B3,
    B4,
    B5,
    B5b,
    B6,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::A1,
        Identity::A2,
        Identity::A3,
        Identity::A4,
        Identity::A5,
        Identity::A5b,
        Identity::A6,
        Identity::B,
        Identity::B0,
        Identity::B1,
        Identity::B2,
        Identity::B3,
        Identity::B4,
        Identity::B5,
        Identity::B5b,
        Identity::B6,
    ];

    /// Pass threshold for a single residual; `None` for the semiclassical
    /// limits, which are judged by monotonicity.
    pub fn threshold(self) -> Option<f64> {
        use Identity::*;
        match self {
            A1 | B1 => None,
            A2 | A3 | A4 | A5 | A5b => Some(tolerances::PHI_IDENTITY),
            B0 | B2 | B3 | B4 | B5 | B5b => Some(tolerances::QDILOG_IDENTITY),
            B => Some(tolerances::LOG_DERIVATIVE),
            A6 | B6 => Some(tolerances::RESIDUE),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn i() -> Complex64 {
    Complex64::i()
}

fn direct(kernel: Kernel, z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    Ok(contour_integral(kernel, z, hbar, cfg)?.value)
}

fn dphi(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    direct(Kernel::Phi, z, hbar, cfg)
}

fn dlog(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    direct(Kernel::LogQdilog, z, hbar, cfg)
}

fn dqdilog(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    Ok(dlog(z, hbar, cfg)?.exp())
}

fn scaled(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1.0)
}

/// Nearest singular point `±πi(1+ℏ)` of `φ^ℏ` and `Φ^ℏ`.
pub fn nearest_singularity(hbar: f64, sign: f64) -> Complex64 {
    c(0.0, sign * PI * (1.0 + hbar))
}

/// Residue of `φ^ℏ` at `±πi(1+ℏ)` from values inside the strip only:
/// `g(δ) = u·φ(p + u)` with `u = ∓iδ`, Richardson-extrapolated in `δ`.
pub fn phi_residue(hbar: f64, sign: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let p = nearest_singularity(hbar, sign);
    let d0 = 0.1 * hbar.min(1.0);
    let g = |delta: f64| -> Result<Complex64> {
        let u = c(0.0, -sign * delta);
        Ok(u * dphi(p + u, hbar, cfg)?)
    };
    let (g1, g2, g4) = (g(d0)?, g(d0 / 2.0)?, g(d0 / 4.0)?);
    // g = R + c1 u + c2 u² + ...
    let r1 = 2.0 * g2 - g1;
    let r2 = 2.0 * g4 - g2;
    Ok((4.0 * r2 - r1) / 3.0)
}

/// Winding number of `Φ^ℏ` around `±πi(1+ℏ)` on a circle of radius
/// `π·min(1,ℏ)/2`: `+1` for a simple zero, `-1` for a simple pole.
pub fn qdilog_winding(hbar: f64, sign: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let p = nearest_singularity(hbar, sign);
    let rho = 0.5 * PI * hbar.min(1.0);
    let n = 128;
    let vals = (0..=n)
        .map(|j| {
            let w = p + Complex64::from_polar(rho, 2.0 * PI * j as f64 / n as f64);
            Ok(qdilog(w, hbar, cfg)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = vals.windows(2).map(|w| (w[1] / w[0]).arg()).sum();
    Ok(total / (2.0 * PI))
}

/// Relative error of `log Φ^ℏ(x)` against `-Li₂(-e^x)/(2πiℏ)` for real `x`.
pub fn semiclassical_qdilog_error(x: f64, hbar: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let l = dlog(c(x, 0.0), hbar, cfg)?;
    let expect = -li2(-x.exp())? / (2.0 * PI * i() * hbar);
    Ok((l - expect).norm() / expect.norm())
}

/// `|φ^ℏ(z) - log(e^z + 1)|`.
pub fn semiclassical_phi_error(z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok((dphi(z, hbar, cfg)? - (z.exp() + 1.0).ln()).norm())
}

/// Residual of one identity at `z`. B residuals are relative to
/// `max(1, |rhs|)`; A6/B6 ignore `z` and take the worse of both nearest
/// singular points.
pub fn property_residual(id: Identity, z: Complex64, hbar: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
    }
    let strip = strip_half_width(hbar);
    if !matches!(id, Identity::A6 | Identity::B6) && z.im.abs() >= strip {
        return Err(Error::Domain(format!(
            "|Im z| = {} outside the strip of half width {strip}",
            z.im.abs()
        )));
    }
    let q = Complex64::from_polar(1.0, PI * hbar);
    let q_dual = Complex64::from_polar(1.0, PI / hbar);
    let two_pi_i = 2.0 * PI * i();
    Ok(match id {
        Identity::A1 => semiclassical_phi_error(z, hbar, cfg)?,
        Identity::A2 => (dphi(z, hbar, cfg)? - dphi(-z, hbar, cfg)? - z).norm(),
        Identity::A3 => (dphi(z, hbar, cfg)?.conj() - dphi(z.conj(), hbar, cfg)?).norm(),
        Identity::A4 => (dphi(z, hbar, cfg)? / hbar - dphi(z / hbar, 1.0 / hbar, cfg)?).norm(),
        Identity::A5 => {
            let s = i() * PI * hbar;
            let lhs = dphi(z + s, hbar, cfg)? - dphi(z - s, hbar, cfg)?;
            (lhs - two_pi_i * hbar / ((-z).exp() + 1.0)).norm()
        }
        Identity::A5b => {
            let s = i() * PI;
            let lhs = dphi(z + s, hbar, cfg)? - dphi(z - s, hbar, cfg)?;
            (lhs - two_pi_i / ((-z / hbar).exp() + 1.0)).norm()
        }
        Identity::A6 => {
            let up = phi_residue(hbar, 1.0, cfg)?;
            let down = phi_residue(hbar, -1.0, cfg)?;
            let r = two_pi_i * hbar;
            (up - r).norm().max((down + r).norm())
        }
        Identity::B => {
            let h = tolerances::LOG_DERIVATIVE_STEP;
            let d = (dlog(z + h, hbar, cfg)? - dlog(z - h, hbar, cfg)?) / (2.0 * h);
            scaled(two_pi_i * hbar * d, dphi(z, hbar, cfg)?)
        }
        Identity::B0 => (dqdilog(z, hbar, cfg)? - 1.0).norm(),
        Identity::B1 => {
            if z.im != 0.0 {
                return Err(Error::Domain("the semiclassical check takes real z".into()));
            }
            semiclassical_qdilog_error(z.re, hbar, cfg)?
        }
        Identity::B2 => {
            let lhs = dqdilog(z, hbar, cfg)? * dqdilog(-z, hbar, cfg)?;
            let rhs = (z * z / (2.0 * two_pi_i * hbar)).exp()
                * Complex64::from_polar(1.0, -PI / 12.0 * (hbar + 1.0 / hbar));
            scaled(lhs, rhs)
        }
        Identity::B3 => scaled(dqdilog(z, hbar, cfg)?.conj(), 1.0 / dqdilog(z.conj(), hbar, cfg)?),
        Identity::B4 => scaled(dqdilog(z, hbar, cfg)?, dqdilog(z / hbar, 1.0 / hbar, cfg)?),
        Identity::B5 => {
            let lhs = dqdilog(z + two_pi_i * hbar, hbar, cfg)?;
            scaled(lhs, dqdilog(z, hbar, cfg)? * (1.0 + q * z.exp()))
        }
        Identity::B5b => {
            let lhs = dqdilog(z + two_pi_i, hbar, cfg)?;
            scaled(lhs, dqdilog(z, hbar, cfg)? * (1.0 + q_dual * (z / hbar).exp()))
        }
        Identity::B6 => {
            // 2πiℏ d log Φ has residue 2πiℏ·(winding number)
            let up = qdilog_winding(hbar, 1.0, cfg)?;
            let down = qdilog_winding(hbar, -1.0, cfg)?;
            let r = 2.0 * PI * hbar;
            (r * (up - 1.0)).abs().max((r * (down + 1.0)).abs())
        }
    })
}

/// One line of a verification sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub identity: Identity,
    pub z: Complex64,
    pub hbar: f64,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "identity,z_re,z_im,hbar,residual,threshold,pass";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{:.6e},{:.1e},{}",
            self.identity, self.z.re, self.z.im, self.hbar, self.residual, self.threshold, self.pass
        )
    }
}

pub const SWEEP_HBARS: [f64; 3] = [0.3, 1.0, 2.5];
pub const SEMICLASSICAL_HBARS: [f64; 4] = [0.08, 0.04, 0.02, 0.01];

/// The 5×5 grid `Re z ∈ {-2,…,2}`, `Im z ∈ π·min(1,ℏ)·{-1/2,…,1/2}`.
pub fn sweep_grid(hbar: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(25);
    for a in -2..=2 {
        for b in -2..=2 {
            out.push(c(a as f64, 0.25 * b as f64 * PI * hbar.min(1.0)));
        }
    }
    out
}

fn row(id: Identity, z: Complex64, hbar: f64, residual: f64, threshold: f64) -> SweepRow {
    SweepRow {
        identity: id,
        z,
        hbar,
        residual,
        threshold,
        pass: residual <= threshold,
    }
}

/// A2–A5, B, B2–B5 on the grid. The shift relations A5/B5 are evaluated
/// at the centered base points `z ∓ iπℏ` and `z ∓ iπ`.
pub fn identity_sweep(hbars: &[f64], cfg: &QuadratureConfig) -> Result<Vec<SweepRow>> {
    use Identity::*;
    let mut rows = Vec::new();
    for &h in hbars {
        for z in sweep_grid(h) {
            for id in [A2, A3, A4, A5, A5b, B, B2, B3, B4, B5, B5b] {
                let base = match id {
                    A5 | A5b => z,
                    B5 => z - i() * PI * h,
                    B5b => z - i() * PI,
                    _ => z,
                };
                let r = property_residual(id, base, h, cfg)?;
                rows.push(row(id, base, h, r, id.threshold().unwrap()));
            }
        }
    }
    Ok(rows)
}

/// Semiclassical errors at `z` for decreasing `ℏ`; each row's threshold is
/// the previous error, so the rows pass exactly when the sequence decreases.
pub fn semiclassical_sweep(id: Identity, z: Complex64, cfg: &QuadratureConfig) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    let mut prev = f64::INFINITY;
    for &h in &SEMICLASSICAL_HBARS {
        let e = property_residual(id, z, h, cfg)?;
        rows.push(row(id, z, h, e, prev));
        prev = e;
    }
    Ok(rows)
}

/// The full default sweep.
pub fn default_sweep(cfg: &QuadratureConfig) -> Result<Vec<SweepRow>> {
    let mut rows = identity_sweep(&SWEEP_HBARS, cfg)?;
    for &h in &SWEEP_HBARS {
        for b in [-1.0, 0.0, 1.0] {
            // Φ - 1 decays like e^{Re z / ℏ} for ℏ > 1
            let z = c(-30.0 * h.max(1.0), 0.5 * b * PI * h.min(1.0));
            let r = property_residual(Identity::B0, z, h, cfg)?;
            rows.push(row(Identity::B0, z, h, r, tolerances::QDILOG_IDENTITY));
        }
        for id in [Identity::A6, Identity::B6] {
            let r = property_residual(id, nearest_singularity(h, 1.0), h, cfg)?;
            rows.push(row(id, nearest_singularity(h, 1.0), h, r, tolerances::RESIDUE));
        }
    }
    for x in [-1.0, 0.0, 1.0] {
        rows.extend(semiclassical_sweep(Identity::A1, c(x, 0.0), cfg)?);
        rows.extend(semiclassical_sweep(Identity::B1, c(x, 0.0), cfg)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn spec_examples() {
        let r = property_residual(Identity::A2, c(2.3, 0.0), 1.1, &cfg()).unwrap();
        assert!(r <= 1e-8, "{r:e}");
        let r = property_residual(Identity::A5, c(0.4, 0.0), 0.6, &cfg()).unwrap();
        assert!(r <= 1e-8, "{r:e}");
        let r = property_residual(Identity::B5, c(0.2, 0.0), 0.8, &cfg()).unwrap();
        assert!(r <= 1e-6, "{r:e}");
    }

    #[test]
    fn names_parse() {
        assert_eq!("a5b".parse::<Identity>().unwrap(), Identity::A5b);
        assert!(matches!("C7".parse::<Identity>(), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn outside_strip_is_a_domain_error() {
        let r = property_residual(Identity::A2, c(0.0, 7.0), 1.0, &cfg());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn residues_at_nearest_singularities() {
        for h in [0.6, 1.0, 1.7] {
            let r = property_residual(Identity::A6, c(0.0, 0.0), h, &cfg()).unwrap();
            assert!(r < tolerances::RESIDUE, "A6 hbar={h}: {r:e}");
            assert!((qdilog_winding(h, 1.0, &cfg()).unwrap() - 1.0).abs() < 1e-9);
            assert!((qdilog_winding(h, -1.0, &cfg()).unwrap() + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn semiclassical_exponent_at_small_hbar() {
        for x in [-1.0, -0.3, 0.4, 1.0] {
            let e = semiclassical_qdilog_error(x, 0.01, &cfg()).unwrap();
            assert!(e <= tolerances::SEMICLASSICAL_EXPONENT, "x={x}: {e}");
        }
    }
}
