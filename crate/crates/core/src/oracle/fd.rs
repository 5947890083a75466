//! Finite-difference Schrodinger eigenvalues for the linear potentials.
//!
//! In the dimensionless variable x = z / rho the Hamiltonian is
//! e0 (-d^2/dx^2 + v(x)) with v(x) = (1 + delta) x for x > 0 and
//! (1 - delta) |x| for x < 0 (the bouncer has a hard wall at x = 0).
//! The three-point Laplacian with Dirichlet ends gives a symmetric
//! tridiagonal matrix whose lowest eigenvalues come from Sturm bisection.

use serde::{Deserialize, Serialize};

use super::sturm::lowest_eigenvalues;
use crate::airy::handbook_seed;
use crate::airy::ZeroKind;
use crate::error::{Error, Result};
use crate::scales::PhysicalScales;
use crate::System;

/// Minimum distance (in units of rho) between the highest requested
/// classical turning point and a soft grid boundary.
pub const TURNING_POINT_MARGIN: f64 = 5.0;

/// Largest eigenvector weight tolerated within one rho of a soft boundary.
pub const BOUNDARY_MASS_TOL: f64 = 1e-8;

pub const DEFAULT_POINTS: usize = 20_001;

const BISECTION_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub z_min: f64,
    pub z_max: f64,
    /// Number of grid points including both Dirichlet endpoints.
    pub points: usize,
}

impl GridSpec {
    pub fn new(z_min: f64, z_max: f64, points: usize) -> Result<Self> {
        if points < 3 || z_min.is_nan() || z_max.is_nan() || z_min >= z_max {
            return Err(Error::InvalidParameter(format!("grid [{z_min}, {z_max}] with {points} points")));
        }
        Ok(GridSpec { z_min, z_max, points })
    }

    /// Default grid: [0, (zeta_count + 15) rho] for the bouncer and the
    /// symmetric interval of the same half-width otherwise.
    pub fn default_for(system: System, count: usize, scales: &PhysicalScales) -> Self {
        let half = (handbook_seed(ZeroKind::Ai, count.max(1)) + 15.0) * scales.rho();
        let z_min = match system {
            System::Bouncer => 0.0,
            System::Symmetric => -half,
        };
        GridSpec { z_min, z_max: half, points: DEFAULT_POINTS }
    }

    pub fn spacing(&self) -> f64 {
        (self.z_max - self.z_min) / (self.points - 1) as f64
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Self {
        GridSpec { points: 2 * self.points - 1, ..*self }
    }
}

fn potential(system: System, delta: f64, x: f64) -> f64 {
    match system {
        System::Bouncer => (1.0 + delta) * x,
        System::Symmetric => {
            if x >= 0.0 {
                (1.0 + delta) * x
            } else {
                -(1.0 - delta) * x
            }
        }
    }
}

fn validate(system: System, delta: f64, grid: &GridSpec) -> Result<()> {
    match system {
        System::Bouncer => {
            if delta.is_nan() || delta <= -1.0 {
                return Err(Error::NoBoundState { delta, requirement: "delta > -1" });
            }
            if grid.z_min != 0.0 {
                return Err(Error::InvalidParameter("bouncer grids start at z = 0".into()));
            }
        }
        System::Symmetric => {
            if delta.is_nan() || delta.abs() >= 1.0 {
                return Err(Error::NoBoundState { delta, requirement: "|delta| < 1" });
            }
        }
    }
    Ok(())
}

struct Matrix {
    diag: Vec<f64>,
    off: Vec<f64>,
    xs: Vec<f64>,
}

fn assemble(system: System, delta: f64, scales: &PhysicalScales, grid: &GridSpec) -> Matrix {
    let rho = scales.rho();
    let h = grid.spacing() / rho;
    let x0 = grid.z_min / rho;
    let inv_h2 = 1.0 / (h * h);
    let interior = grid.points - 2;
    let xs: Vec<f64> = (1..=interior).map(|i| x0 + i as f64 * h).collect();
    let diag = xs.iter().map(|&x| 2.0 * inv_h2 + potential(system, delta, x)).collect();
    let off = vec![-inv_h2; interior.saturating_sub(1)];
    Matrix { diag, off, xs }
}

/// Eigenvector for an isolated eigenvalue by inverse iteration.
fn eigenvector(m: &Matrix, lambda: f64) -> Vec<f64> {
    let n = m.diag.len();
    let shift = lambda + 1e-10 * lambda.abs().max(1.0);
    let mut v = vec![1.0; n];
    for _ in 0..3 {
        // Thomas algorithm on (T - shift I) w = v
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut denom = m.diag[0] - shift;
        c[0] = if n > 1 { m.off[0] / denom } else { 0.0 };
        d[0] = v[0] / denom;
        for i in 1..n {
            denom = (m.diag[i] - shift) - m.off[i - 1] * c[i - 1];
            if denom == 0.0 {
                denom = f64::EPSILON;
            }
            c[i] = if i + 1 < n { m.off[i] / denom } else { 0.0 };
            d[i] = (v[i] - m.off[i - 1] * d[i - 1]) / denom;
        }
        let mut w = vec![0.0; n];
        w[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            w[i] = d[i] - c[i] * w[i + 1];
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    v
}

/// Lowest `count` eigenvalues (energies) on one grid.
pub fn fd_eigenvalues(
    system: System,
    delta: f64,
    scales: &PhysicalScales,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    validate(system, delta, grid)?;
    let rho = scales.rho();
    let m = assemble(system, delta, scales, grid);
    let values = lowest_eigenvalues(&m.diag, &m.off, count, BISECTION_REL_TOL);

    // turning points of the highest state must sit well inside soft ends
    let top = *values.last().ok_or_else(|| Error::InvalidParameter("count must be >= 1".into()))?;
    let right_turn = top / (1.0 + delta);
    let margin = grid.z_max / rho - right_turn;
    if margin < TURNING_POINT_MARGIN {
        return Err(Error::TurningPointTooClose(margin));
    }
    if system == System::Symmetric {
        let left_turn = -top / (1.0 - delta);
        let margin = left_turn - grid.z_min / rho;
        if margin < TURNING_POINT_MARGIN {
            return Err(Error::TurningPointTooClose(margin));
        }
    }

    let v = eigenvector(&m, top);
    let x_lo = grid.z_min / rho;
    let x_hi = grid.z_max / rho;
    let soft_left = system == System::Symmetric;
    let edge_mass: f64 =
        m.xs.iter()
            .zip(&v)
            .filter(|(&x, _)| x_hi - x < 1.0 || (soft_left && x - x_lo < 1.0))
            .map(|(_, c)| c * c)
            .sum();
    if edge_mass > BOUNDARY_MASS_TOL {
        return Err(Error::GridTooNarrow(edge_mass));
    }

    let e0 = scales.e0();
    Ok(values.into_iter().map(|v| v * e0).collect())
}

/// Three-level Richardson extrapolation of the O(h^2) eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RichardsonEstimate {
    /// Eigenvalues on grids h, h/2, h/4.
    pub levels: [Vec<f64>; 3],
    pub extrapolated: Vec<f64>,
    /// |h^4-extrapolant - h^2-extrapolant| per eigenvalue.
    pub error_estimate: Vec<f64>,
    /// log2 of successive difference ratios (2 for clean O(h^2) convergence).
    pub observed_order: Vec<f64>,
}

pub fn fd_eigenvalues_richardson(
    system: System,
    delta: f64,
    scales: &PhysicalScales,
    grid: &GridSpec,
    count: usize,
) -> Result<RichardsonEstimate> {
    let g1 = *grid;
    let g2 = g1.refined();
    let g3 = g2.refined();
    let e1 = fd_eigenvalues(system, delta, scales, &g1, count)?;
    let e2 = fd_eigenvalues(system, delta, scales, &g2, count)?;
    let e3 = fd_eigenvalues(system, delta, scales, &g3, count)?;
    let mut extrapolated = Vec::with_capacity(count);
    let mut error_estimate = Vec::with_capacity(count);
    let mut observed_order = Vec::with_capacity(count);
    for i in 0..e1.len() {
        let r12 = (4.0 * e2[i] - e1[i]) / 3.0;
        let r23 = (4.0 * e3[i] - e2[i]) / 3.0;
        let r = (16.0 * r23 - r12) / 15.0;
        extrapolated.push(r);
        error_estimate.push((r - r23).abs());
        observed_order.push(((e1[i] - e2[i]) / (e2[i] - e3[i])).log2());
    }
    Ok(RichardsonEstimate { levels: [e1, e2, e3], extrapolated, error_estimate, observed_order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouncer_ground_state_converges_to_first_zero() {
        let s = PhysicalScales::dimensionless();
        let grid = GridSpec::new(0.0, 20.0, 4001).unwrap();
        let r = fd_eigenvalues_richardson(System::Bouncer, 0.0, &s, &grid, 2).unwrap();
        assert!((r.extrapolated[0] - 2.338_107_410_459_767).abs() < 1e-6);
        assert!((r.extrapolated[1] - 4.087_949_444_130_97).abs() < 1e-6);
        assert!((r.observed_order[0] - 2.0).abs() < 0.1);
    }

    #[test]
    fn symmetric_lowest_pair_is_even_then_odd() {
        let s = PhysicalScales::dimensionless();
        let grid = GridSpec::new(-18.0, 18.0, 4001).unwrap();
        let e = fd_eigenvalues(System::Symmetric, 0.0, &s, &grid, 2).unwrap();
        assert!((e[0] - 1.018_792_971_647_471).abs() < 1e-3);
        assert!((e[1] - 2.338_107_410_459_767).abs() < 1e-3);
    }

    #[test]
    fn narrow_grid_detected() {
        let s = PhysicalScales::dimensionless();
        let grid = GridSpec::new(0.0, 6.0, 2001).unwrap();
        assert!(matches!(
            fd_eigenvalues(System::Bouncer, 0.0, &s, &grid, 1),
            Err(Error::TurningPointTooClose(_))
        ));
    }

    #[test]
    fn invalid_delta_rejected() {
        let s = PhysicalScales::dimensionless();
        let grid = GridSpec::new(-10.0, 10.0, 101).unwrap();
        assert!(fd_eigenvalues(System::Symmetric, 1.0, &s, &grid, 1).is_err());
        let grid = GridSpec::new(0.0, 10.0, 101).unwrap();
        assert!(fd_eigenvalues(System::Bouncer, -1.0, &s, &grid, 1).is_err());
    }
}
