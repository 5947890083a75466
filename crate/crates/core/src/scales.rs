use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mass, slope and hbar of a linear potential, with the derived length
/// rho = (hbar^2 / 2 m F)^{1/3} and energy e0 = F rho.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalScales {
    mass: f64,
    slope: f64,
    hbar: f64,
}

impl PhysicalScales {
    pub fn new(mass: f64, slope: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("slope", slope), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(PhysicalScales { mass, slope, hbar })
    }

    /// Units with rho = e0 = 1 (hbar = 1, m = 1/2, F = 1).
    pub fn dimensionless() -> Self {
        PhysicalScales { mass: 0.5, slope: 1.0, hbar: 1.0 }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn rho(&self) -> f64 {
        (self.hbar * self.hbar / (2.0 * self.mass * self.slope)).cbrt()
    }

    pub fn e0(&self) -> f64 {
        self.slope * self.rho()
    }

    /// Same mass and hbar with the slope replaced by `slope`.
    pub fn with_slope(&self, slope: f64) -> Result<Self> {
        Self::new(self.mass, slope, self.hbar)
    }
}

impl Default for PhysicalScales {
    fn default() -> Self {
        Self::dimensionless()
    }
}

/// A uniform perturbing slope expressed relative to the unperturbed one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkInput {
    pub fbar: f64,
    pub delta: f64,
}

impl StarkInput {
    pub fn from_slope(fbar: f64, scales: &PhysicalScales) -> Self {
        StarkInput { fbar, delta: fbar / scales.slope() }
    }

    pub fn from_delta(delta: f64, scales: &PhysicalScales) -> Self {
        StarkInput { fbar: delta * scales.slope(), delta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensionless_units_are_unit() {
        let s = PhysicalScales::dimensionless();
        assert!((s.rho() - 1.0).abs() < 1e-15);
        assert!((s.e0() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derived_scales_are_consistent() {
        let s = PhysicalScales::new(1.674_927e-27, 1.6e-26, 1.054_571_8e-34).unwrap();
        let rho = s.rho();
        assert!((rho.powi(3) * 2.0 * s.mass() * s.slope() / (s.hbar() * s.hbar()) - 1.0).abs() < 1e-12);
        assert_eq!(s.e0(), s.slope() * rho);
        // neutron in Earth's gravity: rho ~ 5.9 micrometres
        assert!(rho > 5.0e-6 && rho < 7.0e-6, "{rho}");
    }

    #[test]
    fn rejects_non_positive() {
        assert!(PhysicalScales::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalScales::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalScales::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn stark_input_ratio() {
        let s = PhysicalScales::new(1.0, 4.0, 1.0).unwrap();
        let st = StarkInput::from_slope(1.0, &s);
        assert_eq!(st.delta, 0.25);
    }
}
