use std::f64::consts::PI;

use num_complex::Complex64;

use super::function::GridFunction;
use super::Sign;
use crate::error::Result;
use crate::seed::{Label, Seed};
use crate::special::QdilogCache;

/// Which `ε` enters the correction term of the mutated operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaConvention {
    /// `x̂'^±_i ↦ x̂^±_i − ε_ik φ^{ℏ_k}(−sgn(ε_ik) x̂^±_k)` for both signs.
    #[default]
    Unwound,
    /// The same with `ε^± = ±ε` in place of `ε`.
    Literal,
}

/// `Σ_j ε_ij a_j`.
pub fn linear_part(s: &Seed, i: usize, a: &[f64]) -> f64 {
    (0..s.rank()).map(|j| s.eps(i, j) as f64 * a[j]).sum()
}

/// `ℏ_k = d̂_k ℏ`.
pub fn hbar_k(s: &Seed, hbar: f64, k: usize) -> f64 {
    s.d_hat_f64(k) * hbar
}

pub fn xhat_at(s: &Seed, hbar: f64, g: &GridFunction, j: usize, sign: Sign) -> GridFunction {
    let coef = Complex64::new(0.0, sign.value() * PI * hbar * s.d_hat_f64(j));
    let d = g.derivative(j);
    let mut out = d.scale(coef);
    for (idx, v) in out.values.iter_mut().enumerate() {
        let a = g.spec.point(idx);
        *v += g.values[idx] * linear_part(s, j, &a);
    }
    out
}

/// `x̂^∓_j = ∓πiℏ d̂_j ∂/∂a_j + Σ_k ε_jk a_k` applied to `g`.
pub fn apply_xhat(s: &Seed, hbar: f64, g: &GridFunction, j: &Label, sign: Sign) -> Result<GridFunction> {
    g.spec.check_rank(s.rank())?;
    Ok(xhat_at(s, hbar, g, s.index_of(j)?, sign))
}

/// Real symbol of `x̂^sign_k` after transforming along axis `k`.
pub fn xhat_symbol(s: &Seed, hbar: f64, k: usize, sign: Sign, p: f64, a: &[f64]) -> f64 {
    -sign.value() * PI * hbar * s.d_hat_f64(k) * p + linear_part(s, k, a)
}

pub fn phi_of_xhat_at(
    s: &Seed,
    hbar: f64,
    g: &GridFunction,
    k: usize,
    sign: Sign,
    arg_sign: Sign,
) -> Result<GridFunction> {
    let cache = QdilogCache::shared(hbar_k(s, hbar, k))?;
    let spec = g.spec.clone();
    Ok(g.fourier_multiplier(k, |start, p| {
        let a = spec.point(start);
        Complex64::new(cache.phi(arg_sign.value() * xhat_symbol(s, hbar, k, sign, p, &a)), 0.0)
    }))
}

/// `φ^{ℏ_k}(arg_sign · x̂^sign_k) g` by functional calculus along axis `k`.
pub fn apply_phi_of_xhat(
    s: &Seed,
    hbar: f64,
    g: &GridFunction,
    k: &Label,
    sign: Sign,
    arg_sign: Sign,
) -> Result<GridFunction> {
    g.spec.check_rank(s.rank())?;
    phi_of_xhat_at(s, hbar, g, s.index_of(k)?, sign, arg_sign)
}

pub fn kappa_at(
    s: &Seed,
    hbar: f64,
    g: &GridFunction,
    k: usize,
    i: usize,
    sign: Sign,
    conv: KappaConvention,
) -> Result<GridFunction> {
    let x = xhat_at(s, hbar, g, i, sign);
    if i == k {
        return Ok(x.scale(Complex64::new(-1.0, 0.0)));
    }
    let e = match conv {
        KappaConvention::Unwound => s.eps(i, k),
        KappaConvention::Literal => sign.value() as i64 * s.eps(i, k),
    };
    if e == 0 {
        return Ok(x);
    }
    let arg = if e > 0 { Sign::Minus } else { Sign::Plus };
    let p = phi_of_xhat_at(s, hbar, g, k, sign, arg)?;
    x.sub(&p.scale(Complex64::new(e as f64, 0.0)))
}

/// Image of `x̂'^sign_i` (mutated seed) under the mutation map in direction
/// `k`, applied to `g`.
pub fn kappa_apply(
    s: &Seed,
    hbar: f64,
    g: &GridFunction,
    k: &Label,
    i: &Label,
    sign: Sign,
    conv: KappaConvention,
) -> Result<GridFunction> {
    g.spec.check_rank(s.rank())?;
    kappa_at(s, hbar, g, s.index_of(k)?, s.index_of(i)?, sign, conv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Gaussian, GridSpec};

    fn a2() -> Seed {
        Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    #[test]
    fn kappa_on_k_is_negation() {
        let s = a2();
        let spec = GridSpec::uniform(2, 10.0, 64).unwrap();
        let g = Gaussian::isotropic(2, 1.0).sample(&spec).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let y = kappa_apply(&s, 1.0, &g, &2.into(), &2.into(), sign, Default::default()).unwrap();
            let x = apply_xhat(&s, 1.0, &g, &2.into(), sign).unwrap();
            assert_eq!(y, x.scale(Complex64::new(-1.0, 0.0)));
        }
    }

    #[test]
    fn kappa_is_assembled_from_primitives() {
        let s = a2();
        let spec = GridSpec::uniform(2, 10.0, 64).unwrap();
        let g = Gaussian::isotropic(2, 1.0).sample(&spec).unwrap();
        let y = kappa_apply(&s, 1.0, &g, &2.into(), &1.into(), Sign::Plus, Default::default()).unwrap();
        let x = apply_xhat(&s, 1.0, &g, &1.into(), Sign::Plus).unwrap();
        let p = apply_phi_of_xhat(&s, 1.0, &g, &2.into(), Sign::Plus, Sign::Minus).unwrap();
        assert_eq!(y, x.sub(&p.scale(Complex64::new(1.0, 0.0))).unwrap());
    }

    #[test]
    fn zero_coupling_leaves_xhat() {
        let s = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        let spec = GridSpec::uniform(2, 10.0, 32).unwrap();
        let g = Gaussian::isotropic(2, 1.0).sample(&spec).unwrap();
        let y = kappa_apply(&s, 1.0, &g, &2.into(), &1.into(), Sign::Minus, Default::default()).unwrap();
        assert_eq!(y, apply_xhat(&s, 1.0, &g, &1.into(), Sign::Minus).unwrap());
    }

    #[test]
    fn phi_on_constant_mode() {
        // all ε_kj = 0: the zero mode of a constant picks up φ(0)
        let s = Seed::from_matrix(vec![vec![0]], vec![1]).unwrap();
        let spec = GridSpec::uniform(1, 4.0, 16).unwrap();
        let one = GridFunction::from_fn(&spec, |_| Complex64::new(1.0, 0.0));
        let y = apply_phi_of_xhat(&s, 1.0, &one, &1.into(), Sign::Plus, Sign::Plus).unwrap();
        let phi0 = QdilogCache::shared(1.0).unwrap().phi(0.0);
        for v in &y.values {
            assert!((v - phi0).norm() < 1e-12);
        }
    }

    #[test]
    fn reflection_identity_lifts_to_operators() {
        let s = Seed::from_matrix(vec![vec![0]], vec![1]).unwrap();
        let spec = GridSpec::uniform(1, 12.0, 256).unwrap();
        let g = Gaussian::isotropic(1, 1.0).sample(&spec).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let a = apply_phi_of_xhat(&s, 1.0, &g, &1.into(), sign, Sign::Plus).unwrap();
            let b = apply_phi_of_xhat(&s, 1.0, &g, &1.into(), sign, Sign::Minus).unwrap();
            let x = apply_xhat(&s, 1.0, &g, &1.into(), sign).unwrap();
            assert!(a.sub(&b).unwrap().sub(&x).unwrap().norm() < 1e-5);
        }
    }

    #[test]
    fn phi_of_xhat_is_hermitian() {
        let s = a2();
        let spec = GridSpec::uniform(2, 12.0, 128).unwrap();
        let f = Gaussian::isotropic(2, 1.0).sample(&spec).unwrap();
        let mut g = Gaussian::isotropic(2, 1.3);
        g.momentum = vec![0.3, -0.2];
        let g = g.sample(&spec).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let pf = apply_phi_of_xhat(&s, 1.0, &f, &1.into(), sign, Sign::Minus).unwrap();
            let pg = apply_phi_of_xhat(&s, 1.0, &g, &1.into(), sign, Sign::Minus).unwrap();
            let l = pf.inner(&g).unwrap();
            let r = f.inner(&pg).unwrap();
            assert!((l - r).norm() / (pf.norm() * g.norm()) < 1e-6);
        }
    }
}
