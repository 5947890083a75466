//! The quantum bouncer: V(z) = F z above an infinite wall at z = 0.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::airy::{ai, find_zero, ZeroKind};
use crate::error::{Error, Result};
use crate::expansion::{rat, Truncated};
use crate::scales::{PhysicalScales, StarkInput};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BouncerLevel {
    pub n: usize,
    pub zeta: f64,
    pub energy: f64,
}

pub fn level(n: usize, scales: &PhysicalScales) -> Result<BouncerLevel> {
    let zeta = find_zero(ZeroKind::Ai, n)?;
    Ok(BouncerLevel { n, zeta, energy: zeta * scales.e0() })
}

/// Normalised eigenfunction N Ai(z / rho - zeta_n), N = 1 / (sqrt(rho) Ai'(-zeta_n)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BouncerState {
    pub n: usize,
    pub zeta: f64,
    pub rho: f64,
    pub norm: f64,
}

impl BouncerState {
    pub fn new(n: usize, scales: &PhysicalScales) -> Result<Self> {
        let zeta = find_zero(ZeroKind::Ai, n)?;
        Ok(Self::from_zero(n, zeta, scales.rho()))
    }

    pub fn from_zero(n: usize, zeta: f64, rho: f64) -> Self {
        let (_, aip) = ai(-zeta);
        BouncerState { n, zeta, rho, norm: 1.0 / (rho.sqrt() * aip) }
    }

    pub fn psi(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        self.norm * ai(z / self.rho - self.zeta).0
    }

    pub fn dpsi(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        self.norm * ai(z / self.rho - self.zeta).1 / self.rho
    }
}

pub fn wavefunction(n: usize, scales: &PhysicalScales, z: f64) -> Result<f64> {
    Ok(BouncerState::new(n, scales)?.psi(z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    pub mean_v: f64,
    pub mean_t: f64,
    pub mean_z: f64,
}

pub fn expectations(n: usize, scales: &PhysicalScales) -> Result<Expectations> {
    let zeta = find_zero(ZeroKind::Ai, n)?;
    let e = zeta * scales.e0();
    Ok(Expectations { mean_v: 2.0 * e / 3.0, mean_t: e / 3.0, mean_z: 2.0 * zeta * scales.rho() / 3.0 })
}

/// Off-diagonal <n|z|k> = -2 rho / (zeta_n - zeta_k)^2.
pub fn dipole(n: usize, k: usize, scales: &PhysicalScales) -> Result<f64> {
    if n == k {
        return Err(Error::DiagonalElement(n));
    }
    let zn = find_zero(ZeroKind::Ai, n)?;
    let zk = find_zero(ZeroKind::Ai, k)?;
    Ok(dipole_from_zeros(zn, zk) * scales.rho())
}

pub(crate) fn dipole_from_zeros(zn: f64, zk: f64) -> f64 {
    let d = zn - zk;
    -2.0 / (d * d)
}

fn check_delta(delta: f64) -> Result<()> {
    if !delta.is_finite() {
        return Err(Error::NonFinite(delta));
    }
    if delta <= -1.0 {
        return Err(Error::NoBoundState { delta, requirement: "delta > -1" });
    }
    Ok(())
}

/// zeta_n e0 (1 + delta)^(2/3).
pub fn stark_exact(n: usize, scales: &PhysicalScales, stark: &StarkInput) -> Result<f64> {
    check_delta(stark.delta)?;
    Ok(level(n, scales)?.energy * (1.0 + stark.delta).powf(2.0 / 3.0))
}

/// Low-order coefficients of the exact shift in powers of delta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarkOrders {
    pub unperturbed: f64,
    /// Exact c_1, c_2, c_3.
    pub coefficients: [String; 3],
    #[serde(skip)]
    pub exact: Vec<BigRational>,
}

impl StarkOrders {
    /// c_k zeta_n e0 delta^k for k = 1..=3.
    pub fn shifts(&self, delta: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, c) in self.exact.iter().enumerate() {
            out[k] = crate::expansion::mpoly::to_f64(c) * self.unperturbed * delta.powi(k as i32 + 1);
        }
        out
    }

    pub fn through_third(&self, delta: f64) -> f64 {
        self.unperturbed + self.shifts(delta).iter().sum::<f64>()
    }
}

pub fn stark_orders(n: usize, scales: &PhysicalScales) -> Result<StarkOrders> {
    let series = Truncated::binomial(3, 1, &rat(2, 3));
    let exact: Vec<BigRational> = (1..=3)
        .map(|k| series.coeff(k).as_constant().expect("binomial coefficients are constants"))
        .collect();
    Ok(StarkOrders {
        unperturbed: level(n, scales)?.energy,
        coefficients: [0, 1, 2].map(|k| crate::expansion::format_rational(&exact[k])),
        exact,
    })
}

/// [3 pi (n_tilde + 3/4) / 2]^(2/3) e0 (1 + delta)^(2/3).
pub fn wkb_energy(n_tilde: usize, scales: &PhysicalScales, stark: &StarkInput) -> Result<f64> {
    check_delta(stark.delta)?;
    let base = (1.5 * std::f64::consts::PI * (n_tilde as f64 + 0.75)).powf(2.0 / 3.0);
    Ok(base * scales.e0() * (1.0 + stark.delta).powf(2.0 / 3.0))
}
