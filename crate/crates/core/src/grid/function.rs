use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One axis of a uniform periodic grid: `N` points `center - L + jΔa`,
/// `Δa = 2L/N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub center: f64,
    pub half_width: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(center: f64, half_width: f64, points: usize) -> Result<Self> {
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::GridMismatch(format!(
                "axis needs a power of two ≥ 8 points, got {points}"
            )));
        }
        if !(half_width > 0.0) || !half_width.is_finite() || !center.is_finite() {
            return Err(Error::GridMismatch(format!("bad axis half width {half_width}")));
        }
        Ok(Axis {
            center,
            half_width,
            points,
        })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn start(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn coord(&self, j: usize) -> f64 {
        self.start() + j as f64 * self.spacing()
    }

    /// Angular frequency of DFT bin `j`, in `[-πN/(2L), πN/(2L))`.
    pub fn frequency(&self, j: usize) -> f64 {
        let n = self.points as i64;
        let m = if (j as i64) < n / 2 { j as i64 } else { j as i64 - n };
        PI * m as f64 / self.half_width
    }
}

/// Product grid; axis order follows the seed labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<Axis>,
}

impl GridSpec {
    pub fn new(axes: Vec<Axis>) -> Self {
        GridSpec { axes }
    }

    /// `n` identical axes centered at 0.
    pub fn uniform(n: usize, half_width: f64, points: usize) -> Result<Self> {
        let a = Axis::new(0.0, half_width, points)?;
        Ok(GridSpec { axes: vec![a; n] })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing()).product()
    }

    /// Distance in the flat array between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.axes[axis + 1..].iter().map(|a| a.points).product()
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for (j, a) in self.axes.iter().enumerate().rev() {
            idx[j] = flat % a.points;
            flat /= a.points;
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&j, a)| a.coord(j))
            .collect()
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.dim(),
            });
        }
        Ok(())
    }

    /// Flat index of the first point of every fiber along `axis`.
    pub fn fiber_starts(&self, axis: usize) -> Vec<usize> {
        let stride = self.stride(axis);
        let block = stride * self.axes[axis].points;
        let mut out = Vec::with_capacity(self.len() / self.axes[axis].points);
        for o in 0..self.len() / block {
            for t in 0..stride {
                out.push(o * block + t);
            }
        }
        out
    }
}

/// Complex samples on a [`GridSpec`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut p = FftPlanner::new();
    if inverse {
        p.plan_fft_inverse(n)
    } else {
        p.plan_fft_forward(n)
    }
}

impl GridFunction {
    pub fn new(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                spec.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::GridMismatch("non-finite sample".into()));
        }
        Ok(GridFunction { spec, values })
    }

    pub fn zeros(spec: &GridSpec) -> Self {
        GridFunction {
            values: vec![Complex64::new(0.0, 0.0); spec.len()],
            spec: spec.clone(),
        }
    }

    pub fn from_fn(spec: &GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = (0..spec.len()).map(|j| f(&spec.point(j))).collect();
        GridFunction {
            spec: spec.clone(),
            values,
        }
    }

    fn check_same(&self, other: &GridFunction) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch("grid functions live on different grids".into()));
        }
        Ok(())
    }

    /// `Σ f ḡ Δa`.
    pub fn inner(&self, other: &GridFunction) -> Result<Complex64> {
        self.check_same(other)?;
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(s * self.spec.cell_volume())
    }

    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.spec.cell_volume()).sqrt()
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<GridFunction> {
        self.check_same(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(GridFunction {
            spec: self.spec.clone(),
            values,
        })
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        GridFunction {
            spec: self.spec.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Pointwise multiplication by `m(point)`.
    pub fn multiply(&self, m: impl Fn(&[f64]) -> Complex64) -> GridFunction {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, v)| v * m(&self.spec.point(j)))
            .collect();
        GridFunction {
            spec: self.spec.clone(),
            values,
        }
    }

    /// Runs `f(fiber, start)` on every fiber along `axis`, where `start` is
    /// the flat index of the fiber's first point.
    pub fn map_fibers(&mut self, axis: usize, mut f: impl FnMut(&mut [Complex64], usize)) {
        let n = self.spec.axes[axis].points;
        let stride = self.spec.stride(axis);
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for start in self.spec.fiber_starts(axis) {
            for (j, b) in buf.iter_mut().enumerate() {
                *b = self.values[start + j * stride];
            }
            f(&mut buf, start);
            for (j, b) in buf.iter().enumerate() {
                self.values[start + j * stride] = *b;
            }
        }
    }

    /// Unnormalized DFT along `axis` (`inverse` flips the sign of the phase).
    pub fn dft(&mut self, axis: usize, inverse: bool) {
        let fft = plan(self.spec.axes[axis].points, inverse);
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        self.map_fibers(axis, |fiber, _| fft.process_with_scratch(fiber, &mut scratch));
    }

    /// Fourier multiplier along `axis`: transform, multiply bin `j` of the
    /// fiber starting at `start` by `m(start, p_j)`, transform back.
    pub fn fourier_multiplier(
        &self,
        axis: usize,
        m: impl Fn(usize, f64) -> Complex64,
    ) -> GridFunction {
        let ax = self.spec.axes[axis];
        let fwd = plan(ax.points, false);
        let inv = plan(ax.points, true);
        let mut scratch = vec![Complex64::new(0.0, 0.0); fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len())];
        let norm = 1.0 / ax.points as f64;
        let mut out = self.clone();
        out.map_fibers(axis, |fiber, start| {
            fwd.process_with_scratch(fiber, &mut scratch);
            for (j, v) in fiber.iter_mut().enumerate() {
                *v *= m(start, ax.frequency(j)) * norm;
            }
            inv.process_with_scratch(fiber, &mut scratch);
        });
        out
    }

    /// Spectral `∂/∂a_axis`.
    pub fn derivative(&self, axis: usize) -> GridFunction {
        self.fourier_multiplier(axis, |_, p| Complex64::new(0.0, p))
    }

    /// Largest modulus on the boundary layer (first and last index) of any axis.
    pub fn boundary_max(&self) -> f64 {
        let mut m: f64 = 0.0;
        for (j, v) in self.values.iter().enumerate() {
            let idx = self.spec.multi_index(j);
            if idx
                .iter()
                .zip(&self.spec.axes)
                .any(|(&i, a)| i == 0 || i == a.points - 1)
            {
                m = m.max(v.norm());
            }
        }
        m
    }
}

/// `exp(-½ (a-μ)ᵀ A (a-μ) + i bᵀ(a-μ) + ½ i (a-μ)ᵀ P (a-μ))`, normalized to
/// unit norm; `A` must be positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct Gaussian {
    pub mean: Vec<f64>,
    pub precision: Vec<Vec<f64>>,
    pub momentum: Vec<f64>,
    pub chirp: Vec<Vec<f64>>,
}

impl Gaussian {
    pub fn isotropic(n: usize, sigma: f64) -> Self {
        let mut a = vec![vec![0.0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 1.0 / (sigma * sigma);
        }
        Gaussian {
            mean: vec![0.0; n],
            precision: a,
            momentum: vec![0.0; n],
            chirp: vec![vec![0.0; n]; n],
        }
    }

    /// Centered Gaussian with random covariance (standard deviations in
    /// `[σ_min, σ_max]` along a random rotation), random momentum and chirp.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma_min: f64, sigma_max: f64) -> Self {
        // random orthogonal matrix by Gram–Schmidt
        let mut q: Vec<Vec<f64>> = Vec::new();
        while q.len() < n {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for u in &q {
                let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= d * b);
            }
            let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nv > 1e-3 {
                q.push(v.into_iter().map(|x| x / nv).collect());
            }
        }
        let lam: Vec<f64> = (0..n)
            .map(|_| {
                let s: f64 = rng.gen_range(sigma_min..=sigma_max);
                1.0 / (s * s)
            })
            .collect();
        let mut a = vec![vec![0.0; n]; n];
        let mut p = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = (0..n).map(|m| q[m][i] * lam[m] * q[m][j]).sum();
            }
        }
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-0.2..0.2);
                p[i][j] = v;
                p[j][i] = v;
            }
        }
        Gaussian {
            mean: vec![0.0; n],
            precision: a,
            momentum: (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect(),
            chirp: p,
        }
    }

    fn exponent(&self, a: &[f64]) -> Complex64 {
        let n = a.len();
        let x: Vec<f64> = a.iter().zip(&self.mean).map(|(a, m)| a - m).collect();
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..n {
            im += self.momentum[i] * x[i];
            for j in 0..n {
                re -= 0.5 * x[i] * self.precision[i][j] * x[j];
                im += 0.5 * x[i] * self.chirp[i][j] * x[j];
            }
        }
        Complex64::new(re, im)
    }

    /// Samples on `spec`, normalized to unit discrete norm.
    pub fn sample(&self, spec: &GridSpec) -> Result<GridFunction> {
        spec.check_rank(self.mean.len())?;
        let f = GridFunction::from_fn(spec, |a| self.exponent(a).exp());
        let n = f.norm();
        Ok(f.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// Exact squared norm of the unnormalized Gaussian, `π^{n/2}/sqrt(det A)`.
    pub fn exact_norm_sqr(&self) -> f64 {
        PI.powf(self.mean.len() as f64 / 2.0) / det(&self.precision).sqrt()
    }

    /// Samples without normalization.
    pub fn sample_raw(&self, spec: &GridSpec) -> Result<GridFunction> {
        spec.check_rank(self.mean.len())?;
        Ok(GridFunction::from_fn(spec, |a| self.exponent(a).exp()))
    }
}

fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))
            .unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}
