//! Thresholds used by the verification routines, the CLI and the tests.

/// Exact identities of `φ^ℏ` (A2–A5).
pub const PHI_IDENTITY: f64 = 1e-8;
/// Identities of `Φ^ℏ` (B0, B2–B5), relative to `max(1, |rhs|)`.
pub const QDILOG_IDENTITY: f64 = 1e-6;
/// `2πiℏ d log Φ = φ dz` by central differences.
pub const LOG_DERIVATIVE: f64 = 1e-5;
/// Central difference step for the log-derivative check.
pub const LOG_DERIVATIVE_STEP: f64 = 1e-4;
/// Residues at the nearest singular points.
pub const RESIDUE: f64 = 1e-4;
/// Relative exponent error of the semiclassical limit at `ℏ = 0.01`.
pub const SEMICLASSICAL_EXPONENT: f64 = 0.05;
/// Real-line interpolation cache against direct quadrature.
pub const CACHE_INTERPOLATION: f64 = 1e-8;

/// Commutators and self-adjointness of grid operators, relative.
pub const GRID_RELATIVE: f64 = 1e-6;
/// Kernel PDE residuals.
pub const KERNEL_PDE: f64 = 1e-4;
/// Intertwining residuals, relative.
pub const INTERTWINING: f64 = 1e-2;
/// Minimal degradation factor of the wrong-ε′ control.
pub const NEGATIVE_CONTROL_FACTOR: f64 = 10.0;
/// `| ‖Kf‖/‖f‖ − 1 |`.
pub const UNITARITY: f64 = 1e-3;
