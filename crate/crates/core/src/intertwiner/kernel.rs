use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{hbar_k, KappaConvention};
use crate::seed::{sgn, Label, Seed};
use crate::special::{log_qdilog, phi, QdilogCache, QuadratureConfig};

/// The two exponents found for the kernel in direction `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelConvention {
    /// `e^{c Σ_{ε_kj<0} ε_kj a_j / (πiℏ)}`, read off the integral formula for `G`.
    PaperG,
    /// `e^{c Σ_j (sgn(ε_jk)−1) ε_kj a_j / (2πiℏ)}`, the closed-form solution.
    PaperGhat,
}

impl KernelConvention {
    pub const BOTH: [KernelConvention; 2] = [KernelConvention::PaperG, KernelConvention::PaperGhat];
}

impl fmt::Display for KernelConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelConvention::PaperG => "paper-G",
            KernelConvention::PaperGhat => "paper-Ghat",
        })
    }
}

impl FromStr for KernelConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-G" | "G" => Ok(KernelConvention::PaperG),
            "paper-Ghat" | "Ghat" => Ok(KernelConvention::PaperGhat),
            _ => Err(Error::Parse(format!("unknown kernel convention {s:?}"))),
        }
    }
}

/// Kernel of the intertwiner for the mutation of `seed` in direction `k`.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub seed: Seed,
    pub k: usize,
    pub hbar: f64,
    pub convention: KernelConvention,
    pub kappa: KappaConvention,
    /// Default `2π²ℏ`; only its phase is free.
    pub constant: Complex64,
    cache: Arc<QdilogCache>,
}

impl KernelSpec {
    pub fn new(seed: &Seed, k: &Label, hbar: f64, convention: KernelConvention) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        let k = seed.index_of(k)?;
        Ok(KernelSpec {
            seed: seed.clone(),
            k,
            hbar,
            convention,
            kappa: KappaConvention::Unwound,
            constant: Complex64::new(2.0 * PI * PI * hbar, 0.0),
            cache: QdilogCache::shared(hbar_k(seed, hbar, k))?,
        })
    }

    pub fn with_constant(mut self, c: Complex64) -> Self {
        self.constant = c;
        self
    }

    pub fn with_kappa(mut self, kappa: KappaConvention) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn label(&self) -> &Label {
        &self.seed.labels()[self.k]
    }

    pub fn hbar_k(&self) -> f64 {
        hbar_k(&self.seed, self.hbar, self.k)
    }

    pub fn d_hat_k(&self) -> f64 {
        self.seed.d_hat_f64(self.k)
    }

    /// `S = Σ_j ε_kj a_j` (the `a_k` entry is ignored since `ε_kk = 0`).
    pub fn s_sum(&self, a: &[f64]) -> f64 {
        (0..self.seed.rank())
            .map(|j| self.seed.eps(self.k, j) as f64 * a[j])
            .sum()
    }

    /// `Σ_j (sgn(ε_jk) − 1) ε_kj a_j`.
    pub fn l_sum(&self, a: &[f64]) -> f64 {
        let s = &self.seed;
        (0..s.rank())
            .map(|j| ((sgn(s.eps(j, self.k)) - 1) * s.eps(self.k, j)) as f64 * a[j])
            .sum()
    }

    /// `Σ_{ε_kj<0} ε_kj a_j`.
    pub fn negative_sum(&self, a: &[f64]) -> f64 {
        (0..self.seed.rank())
            .filter(|&j| self.seed.eps(self.k, j) < 0)
            .map(|j| self.seed.eps(self.k, j) as f64 * a[j])
            .sum()
    }

    /// Phase of the exponential factor, i.e. `arg e^{c·(...)/(πiℏ)}`.
    fn exponent_phase(&self, c: f64, a: &[f64]) -> f64 {
        let x = match self.convention {
            KernelConvention::PaperGhat => self.l_sum(a) / 2.0,
            KernelConvention::PaperG => self.negative_sum(a),
        };
        -c * x / (PI * self.hbar)
    }

    /// `Ĝ(c, a)` with `a` a full coordinate vector; `a_k` is not used.
    pub fn g_hat_full(&self, c: f64, a: &[f64]) -> Complex64 {
        let s = self.s_sum(a);
        let dk = self.d_hat_k();
        let th = self.cache.theta(-dk * c - s) - self.cache.theta(dk * c - s);
        self.constant * Complex64::from_polar(1.0, th + self.exponent_phase(c, a))
    }

    /// `log Ĝ` by direct quadrature, for finite differences.
    pub fn log_g_hat_direct(&self, c: f64, a: &[f64], cfg: &QuadratureConfig) -> Result<Complex64> {
        let s = self.s_sum(a);
        let dk = self.d_hat_k();
        let hk = self.hbar_k();
        let lp = log_qdilog(Complex64::new(dk * c - s, 0.0), hk, cfg)?.value;
        let lm = log_qdilog(Complex64::new(-dk * c - s, 0.0), hk, cfg)?.value;
        Ok(self.constant.ln() - lp + lm + Complex64::new(0.0, self.exponent_phase(c, a)))
    }

    fn full(&self, a_others: &[f64]) -> Result<Vec<f64>> {
        let n = self.seed.rank();
        if a_others.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: a_others.len(),
            });
        }
        let mut a = a_others.to_vec();
        a.insert(self.k, 0.0);
        Ok(a)
    }
}

/// `Ĝ(c, a_others)`, with `a_others` the coordinates other than `a_k` in
/// label order.
pub fn kernel_g_hat(ks: &KernelSpec, c: f64, a_others: &[f64]) -> Result<Complex64> {
    Ok(ks.g_hat_full(c, &ks.full(a_others)?))
}

/// `Ĝ` from direct quadrature of both `Φ` factors (independent of the cache).
pub fn kernel_g_hat_direct(
    ks: &KernelSpec,
    c: f64,
    a_others: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    Ok(ks.log_g_hat_direct(c, &ks.full(a_others)?, cfg)?.exp())
}

/// A regulated value of `G` at two regulator strengths and its linear
/// extrapolation to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegulatedValue {
    pub delta: f64,
    pub coarse: Complex64,
    pub fine: Complex64,
    pub extrapolated: Complex64,
}

/// `G_δ(s) = (1/2π²ℏ) ∫ e^{sc/(πiℏ)} Ĝ(c) e^{-δc²} dc` by the trapezoid rule
/// (the integrand is entire and Gaussian-damped, so the rule converges
/// geometrically once the step resolves the oscillation).
pub fn regulated_g(ks: &KernelSpec, s: f64, a: &[f64], delta: f64) -> Complex64 {
    let cmax = (40.0 / delta).sqrt();
    let h = 0.01 * ks.hbar.min(1.0);
    let n = (cmax / h).ceil() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        let c = j as f64 * h;
        let w = (-delta * c * c).exp();
        acc += ks.g_hat_full(c, a) * Complex64::from_polar(w, -s * c / (PI * ks.hbar));
    }
    acc * h / (2.0 * PI * PI * ks.hbar)
}

/// `G(s_k, a_others)` from `δ` and `δ/2`; the ratio `|G_δ − G_{δ/2}| / |G_{δ/2}|`
/// must stay below `0.1` or the value is reported nonconvergent.
pub fn kernel_g(ks: &KernelSpec, s_k: f64, a_others: &[f64], delta: f64) -> Result<RegulatedValue> {
    let a = ks.full(a_others)?;
    let coarse = regulated_g(ks, s_k, &a, delta);
    let fine = regulated_g(ks, s_k, &a, delta / 2.0);
    if (coarse - fine).norm() > 0.1 * fine.norm() {
        return Err(Error::Nonconvergent(format!(
            "regulated kernel changes by {:.3} between δ={delta} and δ={}",
            (coarse - fine).norm() / fine.norm(),
            delta / 2.0
        )));
    }
    Ok(RegulatedValue {
        delta,
        coarse,
        fine,
        extrapolated: 2.0 * fine - coarse,
    })
}

/// Absolute residuals of the first-order system for `log Ĝ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PdeResidual {
    /// The `∂/∂a_i` equation.
    pub a: f64,
    /// The `∂/∂c` equation; `None` when `ε_ik = 0`.
    pub c: Option<f64>,
}

/// Residuals of `2πiℏ ∂ log Ĝ/∂a_i` and `2πiℏ ∂ log Ĝ/∂c` against their
/// right-hand sides, with central differences of step `h`.
pub fn pde_residual_with_step(
    ks: &KernelSpec,
    c: f64,
    a_others: &[f64],
    i: &Label,
    h: f64,
    cfg: &QuadratureConfig,
) -> Result<PdeResidual> {
    let s = &ks.seed;
    let i = s.index_of(i)?;
    if i == ks.k {
        return Err(Error::Domain("the kernel equations are stated for i ≠ k".into()));
    }
    let a = ks.full(a_others)?;
    let k = ks.k;
    let two_pi_i_h = Complex64::new(0.0, 2.0 * PI * ks.hbar);
    let dk = ks.d_hat_k();
    let hk = ks.hbar_k();
    let sum = ks.s_sum(&a);
    let phi_p = phi(Complex64::new(dk * c - sum, 0.0), hk, cfg)?.value;
    let phi_m = phi(Complex64::new(-dk * c - sum, 0.0), hk, cfg)?.value;

    let mut ap = a.clone();
    let mut am = a.clone();
    ap[i] += h;
    am[i] -= h;
    let da = (ks.log_g_hat_direct(c, &ap, cfg)? - ks.log_g_hat_direct(c, &am, cfg)?) / (2.0 * h);
    let eki = s.eps(k, i) as f64;
    let rhs_a = eki / dk * (phi_p - phi_m + dk * c * (sgn(s.eps(i, k)) - 1) as f64);
    let res_a = (two_pi_i_h * da - rhs_a).norm();

    let res_c = if s.eps(i, k) == 0 {
        None
    } else {
        let dc = (ks.log_g_hat_direct(c + h, &a, cfg)? - ks.log_g_hat_direct(c - h, &a, cfg)?)
            / (2.0 * h);
        let rhs_c = -phi_p - phi_m + ks.l_sum(&a);
        Some((two_pi_i_h * dc - rhs_c).norm())
    };
    Ok(PdeResidual { a: res_a, c: res_c })
}

pub const PDE_STEP: f64 = 1e-3;

pub fn pde_residual(
    ks: &KernelSpec,
    c: f64,
    a_others: &[f64],
    i: &Label,
    cfg: &QuadratureConfig,
) -> Result<PdeResidual> {
    pde_residual_with_step(ks, c, a_others, i, PDE_STEP, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn a2() -> Seed {
        Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    #[test]
    fn value_at_origin_is_the_constant() {
        for conv in KernelConvention::BOTH {
            let ks = KernelSpec::new(&a2(), &2.into(), 1.0, conv).unwrap();
            let v = kernel_g_hat(&ks, 0.0, &[0.0]).unwrap();
            assert!((v - ks.constant).norm() < 1e-12);
        }
    }

    #[test]
    fn pure_phase_and_cache_agreement() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let s = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let cfg = QuadratureConfig::fast();
        for k in [1, 2] {
            let ks = KernelSpec::new(&s, &k.into(), 0.8, KernelConvention::PaperGhat).unwrap();
            for _ in 0..100 {
                let c = rng.gen_range(-6.0..6.0);
                let a = [rng.gen_range(-4.0..4.0)];
                let v = kernel_g_hat(&ks, c, &a).unwrap() / ks.constant;
                assert!((v.norm() - 1.0).abs() < 1e-8);
            }
            for _ in 0..10 {
                let c = rng.gen_range(-6.0..6.0);
                let a = [rng.gen_range(-4.0..4.0)];
                let v = kernel_g_hat(&ks, c, &a).unwrap();
                let w = kernel_g_hat_direct(&ks, c, &a, &cfg).unwrap();
                assert!((v - w).norm() / ks.constant.norm() < 1e-7);
            }
        }
    }

    #[test]
    fn golden_value() {
        // A2 seed, k = 2, ℏ = 1, c = 1, a_1 = 0.5, C = 2π²ℏ
        let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat).unwrap();
        let v = kernel_g_hat_direct(&ks, 1.0, &[0.5], &QuadratureConfig::default()).unwrap();
        let golden = Complex64::new(GOLDEN_RE, GOLDEN_IM);
        assert!((v - golden).norm() < 1e-10, "{v}");
        let w = kernel_g_hat(&ks, 1.0, &[0.5]).unwrap();
        assert!((w - golden).norm() < 1e-7);
    }

    // independent evaluation: contour shifted to Im p = 1/2, 30 digits
    const GOLDEN_RE: f64 = 18.079_268_298_509_279;
    const GOLDEN_IM: f64 = 7.923_157_320_571_588;

    #[test]
    fn conventions_differ_by_a_modulation() {
        let s = Seed::from_matrix(vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -2, 0]], vec![1, 1, 1])
            .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for k in [1, 2, 3] {
            let g = KernelSpec::new(&s, &k.into(), 0.9, KernelConvention::PaperG).unwrap();
            let gh = KernelSpec::new(&s, &k.into(), 0.9, KernelConvention::PaperGhat).unwrap();
            for _ in 0..20 {
                let c: f64 = rng.gen_range(-3.0..3.0);
                let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let ratio = g.g_hat_full(c, &a) / gh.g_hat_full(c, &a);
                let expect = Complex64::from_polar(1.0, -c * g.s_sum(&a) / (PI * 0.9));
                assert!((ratio - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn sign_of_zero_never_matters() {
        // whenever ε_jk = 0 also ε_kj = 0, so (sgn(ε_jk) − 1) ε_kj vanishes
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let s = crate::sample::random_seed(&mut rng, 4, 2);
            for k in 0..4 {
                for j in 0..4 {
                    if s.eps(j, k) == 0 {
                        assert_eq!(s.eps(k, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn regulated_kernel_converges_at_origin() {
        let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat).unwrap();
        let v = kernel_g(&ks, 0.0, &[0.0], 0.1).unwrap();
        assert!((v.coarse - v.fine).norm() <= 0.1 * v.fine.norm());
    }

    #[test]
    fn regulated_kernel_transforms_back() {
        let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat).unwrap();
        let a = [0.3, 0.0];
        let delta = 0.05;
        let hs = 0.05;
        let smax = 40.0;
        let n = (smax / hs) as i64;
        let gs: Vec<(f64, Complex64)> = (-n..=n)
            .map(|j| {
                let s = j as f64 * hs;
                (s, regulated_g(&ks, s, &a, delta))
            })
            .collect();
        for c in [-1.0, 0.0, 0.5, 1.0] {
            let back: Complex64 = gs
                .iter()
                .map(|(s, g)| g * Complex64::from_polar(hs, s * c / (PI * ks.hbar)))
                .sum();
            let expect = ks.g_hat_full(c, &a) * (-delta * c * c).exp();
            assert!((back - expect).norm() / expect.norm() < 1e-3, "c={c}: {back} vs {expect}");
        }
    }

    #[test]
    fn pde_residuals_at_reference_point() {
        let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat).unwrap();
        let r = pde_residual(&ks, 0.7, &[-0.3], &1.into(), &QuadratureConfig::default()).unwrap();
        assert!(r.a <= 1e-4 && r.c.unwrap() <= 1e-4, "{r:?}");
        assert!(pde_residual(&ks, 0.7, &[-0.3], &2.into(), &QuadratureConfig::default()).is_err());
    }

    #[test]
    fn absent_variable_gives_vanishing_residual() {
        // ε_{13} = 0: Ĝ for k = 1 does not depend on a_3
        let s = Seed::from_matrix(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]], vec![1, 1, 1])
            .unwrap();
        let ks = KernelSpec::new(&s, &1.into(), 1.0, KernelConvention::PaperGhat).unwrap();
        let r = pde_residual(&ks, 0.4, &[0.2, -0.6], &3.into(), &QuadratureConfig::default()).unwrap();
        assert!(r.a <= 1e-10, "{r:?}");
        assert!(r.c.is_none());
    }
}
