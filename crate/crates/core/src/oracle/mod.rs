//! Independent numerical cross-checks: adaptive quadrature and a
//! finite-difference eigensolver.

pub mod fd;
pub mod quadrature;
pub mod sturm;

pub use fd::{fd_eigenvalues, fd_eigenvalues_richardson, GridSpec, RichardsonEstimate};
pub use quadrature::{compensated_sum, quadrature, QuadResult};
