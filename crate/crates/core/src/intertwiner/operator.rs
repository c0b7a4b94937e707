use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::kernel::KernelSpec;
use crate::error::{Error, Result};
use crate::grid::{kappa_at, xhat_at, GridFunction, GridSpec, Sign};
use crate::seed::{Label, Seed};

/// The intertwiner on a fixed grid, with its kernel table precomputed.
///
/// Along axis `k` it is applied as `Kf = (1/(2π²ℏ|C|)) 𝔉[Ĝ · 𝔉f]` with
/// `(𝔉h)(c) = ∫ e^{ac/(πiℏ)} h(a) da`. The `c`-grid has spacing
/// `Δc = 2π²ℏ/(NΔa)`, which turns both transforms into plain DFTs.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    pub kernel: KernelSpec,
    pub spec: GridSpec,
    /// `Ĝ/|C|` at `(c_m, a_others)`, laid out like the grid with the `k`
    /// axis holding DFT bins.
    table: Arc<Vec<Complex64>>,
}

impl Intertwiner {
    pub fn new(kernel: KernelSpec, spec: &GridSpec) -> Result<Self> {
        spec.check_rank(kernel.seed.rank())?;
        let k = kernel.k;
        let mag = kernel.constant.norm();
        let stride = spec.stride(k);
        let mut table = vec![Complex64::new(0.0, 0.0); spec.len()];
        let axis = spec.axes[k];
        for start in spec.fiber_starts(k) {
            let a = spec.point(start);
            for j in 0..axis.points {
                table[start + j * stride] = kernel.g_hat_full(c_of_bin(&kernel, spec, j), &a) / mag;
            }
        }
        Ok(Intertwiner {
            kernel,
            spec: spec.clone(),
            table: Arc::new(table),
        })
    }

    pub fn delta_c(&self) -> f64 {
        delta_c(&self.kernel, &self.spec)
    }

    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        if f.spec != self.spec {
            return Err(Error::GridMismatch("function and intertwiner grids differ".into()));
        }
        let k = self.kernel.k;
        let axis = self.spec.axes[k];
        let n = axis.points;
        let hbar = self.kernel.hbar;
        let da = axis.spacing();
        let dc = self.delta_c();
        let a0 = axis.start();
        let fft = FftPlanner::new().plan_fft_forward(n);
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let stride = self.spec.stride(k);
        // e^{-i a_0 c_m/(πℏ)} for both transforms
        let phase: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, -a0 * c_of_bin(&self.kernel, &self.spec, j) / (PI * hbar)))
            .collect();
        let norm = da * dc / (2.0 * PI * PI * hbar);
        let table = &self.table;
        let mut out = f.clone();
        out.map_fibers(k, |fiber, start| {
            fft.process_with_scratch(fiber, &mut scratch);
            for (j, v) in fiber.iter_mut().enumerate() {
                *v *= phase[j] * phase[j] * table[start + j * stride] * norm;
            }
            fft.process_with_scratch(fiber, &mut scratch);
        });
        Ok(out)
    }
}

fn delta_c(kernel: &KernelSpec, spec: &GridSpec) -> f64 {
    let axis = spec.axes[kernel.k];
    2.0 * PI * PI * kernel.hbar / (axis.points as f64 * axis.spacing())
}

fn c_of_bin(kernel: &KernelSpec, spec: &GridSpec, j: usize) -> f64 {
    let n = spec.axes[kernel.k].points as i64;
    let m = if (j as i64) < n / 2 { j as i64 } else { j as i64 - n };
    m as f64 * delta_c(kernel, spec)
}

/// `K f` for a one-off application.
pub fn apply_k(ks: &KernelSpec, f: &GridFunction) -> Result<GridFunction> {
    Intertwiner::new(ks.clone(), &f.spec)?.apply(f)
}

/// `‖x̂'^sign_i (Kf) − K(κ(x̂'^sign_i) f)‖ / ‖f‖`. The target operator uses
/// the mutated exchange matrix, or `target` when given (negative control).
pub fn intertwining_residual_with(
    op: &Intertwiner,
    f: &GridFunction,
    i: usize,
    sign: Sign,
    target: Option<&Seed>,
) -> Result<f64> {
    let ks = &op.kernel;
    let mutated;
    let target = match target {
        Some(t) => t,
        None => {
            mutated = ks.seed.mutate_at(ks.k);
            &mutated
        }
    };
    let kf = op.apply(f)?;
    let lhs = xhat_at(target, ks.hbar, &kf, i, sign);
    let rhs = op.apply(&kappa_at(&ks.seed, ks.hbar, f, ks.k, i, sign, ks.kappa)?)?;
    Ok(lhs.sub(&rhs)?.norm() / f.norm())
}

pub fn intertwining_residual(ks: &KernelSpec, f: &GridFunction, i: &Label, sign: Sign) -> Result<f64> {
    let op = Intertwiner::new(ks.clone(), &f.spec)?;
    intertwining_residual_with(&op, f, ks.seed.index_of(i)?, sign, None)
}
