use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::kernel::{pde_residual_with_step, KernelConvention, KernelSpec, PDE_STEP};
use super::operator::{intertwining_residual_with, Intertwiner};
use crate::error::Result;
use crate::grid::{gaussian_suite, GridSpec, Sign};
use crate::seed::Seed;
use crate::special::QuadratureConfig;
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridParams {
    pub points: usize,
    pub half_width: f64,
    pub gaussians: usize,
    pub rng_seed: u64,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            points: 256,
            half_width: 12.0,
            gaussians: 3,
            rng_seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwiningCase {
    pub generator: String,
    pub sign: String,
    /// Worst residual over the Gaussian suite.
    pub residual: f64,
    /// Same with the unmutated `ε` in the target operator.
    pub control: f64,
    pub pass: bool,
    pub control_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdeCase {
    pub generator: String,
    pub c: f64,
    pub a_others: Vec<f64>,
    pub residual_a: f64,
    pub residual_c: Option<f64>,
    /// `residual(2h)/residual(h)` for the larger of the two equations.
    pub halving_ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwinerReport {
    pub seed: String,
    pub direction: String,
    pub hbar: f64,
    pub convention: String,
    pub grid: GridParams,
    pub norm_ratios: Vec<f64>,
    pub unitarity_pass: bool,
    pub intertwining: Vec<IntertwiningCase>,
    pub intertwining_pass: bool,
    pub pde: Vec<PdeCase>,
    pub pde_pass: bool,
    pub pass: bool,
}

/// Sweep points `(c, a_others)` for the kernel equations.
pub fn pde_points(rank: usize, count: usize, rng_seed: u64) -> Vec<(f64, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..count)
        .map(|_| {
            let c = rng.gen_range(-2.0..2.0);
            let a = (0..rank - 1).map(|_| rng.gen_range(-1.5..1.5)).collect();
            (c, a)
        })
        .collect()
}

/// Step used for the order check; large enough that truncation dominates
/// quadrature noise.
pub const ORDER_STEP: f64 = 2e-2;

/// Kernel equations with the order check at 5 sweep points for every
/// applicable generator.
pub fn pde_sweep(ks: &KernelSpec, cfg: &QuadratureConfig, rng_seed: u64) -> Result<Vec<PdeCase>> {
    let s = &ks.seed;
    let mut out = Vec::new();
    for i in 0..s.rank() {
        if i == ks.k {
            continue;
        }
        let label = s.labels()[i].clone();
        for (c, a) in pde_points(s.rank(), 5, rng_seed) {
            let r = pde_residual_with_step(ks, c, &a, &label, PDE_STEP, cfg)?;
            let r1 = pde_residual_with_step(ks, c, &a, &label, ORDER_STEP, cfg)?;
            let r2 = pde_residual_with_step(ks, c, &a, &label, 2.0 * ORDER_STEP, cfg)?;
            let big = |x: &super::kernel::PdeResidual| x.a.max(x.c.unwrap_or(0.0));
            let ratio = big(&r2) / big(&r1);
            let ok_value = big(&r) <= tolerances::KERNEL_PDE;
            // second order: halving the step divides the error by about 4,
            // unless the residual vanishes identically
            let ok_order = big(&r2) < 1e-10 || (3.0..=5.0).contains(&ratio);
            out.push(PdeCase {
                generator: label.to_string(),
                c,
                a_others: a,
                residual_a: r.a,
                residual_c: r.c,
                halving_ratio: ratio,
                pass: ok_value && ok_order,
            });
        }
    }
    Ok(out)
}

/// Unitarity, intertwining (with the wrong-`ε′` control) and the kernel
/// equations for one seed and direction.
pub fn verify_intertwiner(ks: &KernelSpec, grid: &GridParams) -> Result<IntertwinerReport> {
    let s = &ks.seed;
    let spec = GridSpec::uniform(s.rank(), grid.half_width, grid.points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(grid.rng_seed);
    let suite = gaussian_suite(&mut rng, &spec, grid.gaussians)?;
    let op = Intertwiner::new(ks.clone(), &spec)?;

    let mut norm_ratios = Vec::new();
    for f in &suite {
        norm_ratios.push(op.apply(f)?.norm() / f.norm());
    }
    let unitarity_pass = norm_ratios
        .iter()
        .all(|r| (r - 1.0).abs() <= tolerances::UNITARITY);

    let mut intertwining = Vec::new();
    for i in 0..s.rank() {
        for sign in Sign::BOTH {
            let mut res: f64 = 0.0;
            let mut ctl: f64 = f64::INFINITY;
            for f in &suite {
                res = res.max(intertwining_residual_with(&op, f, i, sign, None)?);
                ctl = ctl.min(intertwining_residual_with(&op, f, i, sign, Some(s))?);
            }
            intertwining.push(IntertwiningCase {
                generator: s.labels()[i].to_string(),
                sign: sign.to_string(),
                residual: res,
                control: ctl,
                pass: res <= tolerances::INTERTWINING,
                control_pass: ctl >= tolerances::NEGATIVE_CONTROL_FACTOR * res,
            });
        }
    }
    let intertwining_pass = intertwining.iter().all(|c| c.pass && c.control_pass);

    let pde = pde_sweep(ks, &QuadratureConfig::default(), grid.rng_seed)?;
    let pde_pass = pde.iter().all(|c| c.pass);
    Ok(IntertwinerReport {
        seed: s.to_string(),
        direction: ks.label().to_string(),
        hbar: ks.hbar,
        convention: ks.convention.to_string(),
        grid: *grid,
        norm_ratios,
        unitarity_pass,
        intertwining,
        intertwining_pass,
        pde,
        pde_pass,
        pass: unitarity_pass && intertwining_pass && pde_pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionResult {
    pub convention: String,
    pub reports: Vec<IntertwinerReport>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Adjudication {
    pub results: Vec<ConventionResult>,
    /// The convention that passes, if exactly one does.
    pub winner: Option<String>,
}

/// Runs [`verify_intertwiner`] for both kernel conventions over every seed
/// and direction.
pub fn adjudicate(seeds: &[Seed], hbar: f64, grid: &GridParams) -> Result<Adjudication> {
    let mut results = Vec::new();
    for conv in KernelConvention::BOTH {
        let mut reports = Vec::new();
        for s in seeds {
            for k in s.labels() {
                let ks = KernelSpec::new(s, k, hbar, conv)?;
                reports.push(verify_intertwiner(&ks, grid)?);
            }
        }
        let pass = reports.iter().all(|r| r.pass);
        results.push(ConventionResult {
            convention: conv.to_string(),
            reports,
            pass,
        });
    }
    let passing: Vec<&ConventionResult> = results.iter().filter(|r| r.pass).collect();
    let winner = if passing.len() == 1 {
        Some(passing[0].convention.clone())
    } else {
        None
    };
    Ok(Adjudication { results, winner })
}

/// Phase-rotated constant, for the uniqueness check.
pub fn rotated(ks: &KernelSpec, theta: f64) -> KernelSpec {
    ks.clone()
        .with_constant(ks.constant * Complex64::from_polar(1.0, theta))
}
