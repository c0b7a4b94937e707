//! The quantum logarithm and quantum dilogarithm: contour quadrature,
//! evaluation off the strip, a real-line interpolation cache, and residuals
//! of their functional identities.

pub mod cache;
pub mod functions;
pub mod li2;
pub mod quadrature;
pub mod residuals;

pub use functions::{log_qdilog, phi, phi_prime, qdilog};
pub use li2::li2;
pub use quadrature::{ComplexValue, Kernel, QuadratureConfig};
pub use cache::QdilogCache;
pub use residuals::{default_sweep, property_residual, Identity, SweepRow};
