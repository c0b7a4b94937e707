//! The unitary intertwiner attached to a mutation: its kernel in closed
//! form, spectral application on a grid, and residual checks.

mod kernel;
mod operator;
mod verify;

pub use kernel::{
    kernel_g, kernel_g_hat, kernel_g_hat_direct, pde_residual, pde_residual_with_step, regulated_g,
    KernelConvention, KernelSpec, PdeResidual, RegulatedValue, PDE_STEP,
};
pub use operator::{apply_k, intertwining_residual, intertwining_residual_with, Intertwiner};
pub use verify::{
    adjudicate, pde_points, pde_sweep, rotated, verify_intertwiner, Adjudication, ConventionResult, GridParams,
    IntertwinerReport, IntertwiningCase, PdeCase, ORDER_STEP,
};
