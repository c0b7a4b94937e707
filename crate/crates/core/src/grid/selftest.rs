use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::function::{Axis, Gaussian, GridFunction, GridSpec};
use super::operators::xhat_at;
use super::Sign;
use crate::error::Result;
use crate::seed::Seed;
use crate::tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestRow {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl SelftestRow {
    fn new(name: String, residual: f64, threshold: f64) -> Self {
        SelftestRow {
            name,
            residual,
            threshold,
            pass: residual <= threshold,
        }
    }
}

/// `count` random centered Gaussians whose standard deviations lie in
/// `[0.8, L/8]`.
pub fn gaussian_suite<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &GridSpec,
    count: usize,
) -> Result<Vec<GridFunction>> {
    let l = spec.axes.iter().map(|a| a.half_width).fold(f64::INFINITY, f64::min);
    let smax = (l / 8.0).max(0.8);
    (0..count)
        .map(|_| Gaussian::random(rng, spec.dim(), 0.8, smax).sample(spec))
        .collect()
}

fn commutator_residual(
    a: impl Fn(&GridFunction) -> GridFunction,
    b: impl Fn(&GridFunction) -> GridFunction,
    expected: f64,
    g: &GridFunction,
) -> Result<f64> {
    let ab = a(&b(g));
    let ba = b(&a(g));
    let lhs = ab.sub(&ba)?;
    let rhs = g.scale(Complex64::new(0.0, expected));
    let scale = ab.norm().max(ba.norm()).max(rhs.norm());
    Ok(lhs.sub(&rhs)?.norm() / scale)
}

/// Heisenberg relations, self-adjointness, Langlands rescaling, spectral
/// convergence and Parseval on a Gaussian suite.
pub fn grid_selftest<R: Rng + ?Sized>(
    s: &Seed,
    hbar: f64,
    spec: &GridSpec,
    rng: &mut R,
) -> Result<Vec<SelftestRow>> {
    spec.check_rank(s.rank())?;
    let n = s.rank();
    let suite = gaussian_suite(rng, spec, 3)?;
    let tol = tolerances::GRID_RELATIVE;
    let mut rows = Vec::new();

    for (sa, sb) in [
        (Sign::Minus, Sign::Minus),
        (Sign::Plus, Sign::Plus),
        (Sign::Minus, Sign::Plus),
    ] {
        for j in 0..n {
            for k in 0..n {
                let expected = match (sa, sb) {
                    (Sign::Minus, Sign::Minus) => 2.0 * PI * hbar * s.eps_hat_f64(j, k),
                    (Sign::Plus, Sign::Plus) => -2.0 * PI * hbar * s.eps_hat_f64(j, k),
                    _ => 0.0,
                };
                let mut worst: f64 = 0.0;
                for g in &suite {
                    worst = worst.max(commutator_residual(
                        |f| xhat_at(s, hbar, f, j, sa),
                        |f| xhat_at(s, hbar, f, k, sb),
                        expected,
                        g,
                    )?);
                }
                let name = format!("commutator x{j}{sa} x{k}{sb}", j = j + 1, k = k + 1);
                rows.push(SelftestRow::new(name, worst, tol));
            }
        }
    }

    for j in 0..n {
        for sign in Sign::BOTH {
            let mut worst: f64 = 0.0;
            for f in &suite {
                for g in &suite {
                    let af = xhat_at(s, hbar, f, j, sign);
                    let ag = xhat_at(s, hbar, g, j, sign);
                    let l = af.inner(g)?;
                    let r = f.inner(&ag)?;
                    worst = worst.max((l - r).norm() / (af.norm() * g.norm()).max(f.norm() * ag.norm()));
                }
            }
            rows.push(SelftestRow::new(format!("self-adjoint x{}{sign}", j + 1), worst, tol));
        }
    }

    if let Ok(dual) = s.langlands_dual() {
        let hv = 1.0 / hbar;
        for sign in Sign::BOTH {
            for j in 0..n {
                for k in 0..n {
                    let sj = 1.0 / (s.d_hat_f64(j) * hbar);
                    let sk = 1.0 / (s.d_hat_f64(k) * hbar);
                    let expected = -sign.value() * 2.0 * PI * hv * dual.eps_hat_f64(j, k);
                    let mut worst: f64 = 0.0;
                    for g in &suite {
                        worst = worst.max(commutator_residual(
                            |f| xhat_at(s, hbar, f, j, sign).scale(sj.into()),
                            |f| xhat_at(s, hbar, f, k, sign).scale(sk.into()),
                            expected,
                            g,
                        )?);
                    }
                    let name = format!("langlands x{}{sign} x{}{sign}", j + 1, k + 1);
                    rows.push(SelftestRow::new(name, worst, tol));
                }
            }
        }
    }

    // spectral derivative of a unit Gaussian, N = 16, 32, 64 on [-L, L]
    let l = spec.axes[0].half_width;
    let mut errs = Vec::new();
    for pts in [16, 32, 64] {
        let one = GridSpec::new(vec![Axis::new(0.0, l, pts)?]);
        let g = Gaussian::isotropic(1, 1.0).sample_raw(&one)?;
        let exact = g.multiply(|a| Complex64::new(-a[0], 0.0));
        errs.push(g.derivative(0).sub(&exact)?.norm());
    }
    for w in errs.windows(2) {
        let ratio = w[0] / w[1].max(1e-300);
        // error ratio ≥ 10 unless the finer error is already at roundoff
        let res = if w[1] < 1e-12 { 0.0 } else { 10.0 / ratio };
        rows.push(SelftestRow::new(
            format!("spectral convergence {:.1e} -> {:.1e}", w[0], w[1]),
            res,
            1.0,
        ));
    }

    let mut worst: f64 = 0.0;
    for f in &suite {
        for axis in 0..n {
            let mut h = f.clone();
            h.dft(axis, false);
            let pts = spec.axes[axis].points as f64;
            worst = worst.max((h.norm() / pts.sqrt() - f.norm()).abs() / f.norm());
        }
    }
    rows.push(SelftestRow::new("parseval".into(), worst, 1e-10));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn selftest_passes_on_small_grid() {
        let s = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let spec = GridSpec::uniform(2, 12.0, 128).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let rows = grid_selftest(&s, 0.7, &spec, &mut rng).unwrap();
        for r in &rows {
            assert!(r.pass, "{r:?}");
        }
        assert!(rows.iter().any(|r| r.name.starts_with("langlands")));
    }
}
