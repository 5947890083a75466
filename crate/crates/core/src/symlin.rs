//! The symmetric linear potential V(z) = F |z| and its Stark perturbation
//! V(z) = F |z| + F_bar z.

use serde::{Deserialize, Serialize};

use crate::airy::{ai, find_zero, ZeroKind};
use crate::error::{Error, Result};
use crate::scales::PhysicalScales;
use crate::Parity;

/// Default bound on |delta| accepted by [`solve_perturbed`].
pub const DEFAULT_DELTA_LIMIT: f64 = 0.3;

const SCAN_FRACTION: f64 = 0.1;
const MAX_NEWTON: usize = 200;

fn zero_kind(parity: Parity) -> ZeroKind {
    match parity {
        Parity::Even => ZeroKind::AiPrime,
        Parity::Odd => ZeroKind::Ai,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymLevel {
    pub parity: Parity,
    pub n: usize,
    /// chi_n (even) or zeta_n (odd).
    pub dimensionless_energy: f64,
    pub energy: f64,
}

pub fn level(parity: Parity, n: usize, scales: &PhysicalScales) -> Result<SymLevel> {
    let x = find_zero(zero_kind(parity), n)?;
    Ok(SymLevel { parity, n, dimensionless_energy: x, energy: x * scales.e0() })
}

/// The lowest `count` levels in energy order (even, odd, even, ...).
pub fn spectrum(count: usize, scales: &PhysicalScales) -> Result<Vec<SymLevel>> {
    (0..count)
        .map(|i| {
            let parity = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
            level(parity, i / 2 + 1, scales)
        })
        .collect()
}

/// Normalised unperturbed eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymState {
    pub parity: Parity,
    pub n: usize,
    pub x: f64,
    pub rho: f64,
    pub norm: f64,
}

impl SymState {
    pub fn new(parity: Parity, n: usize, scales: &PhysicalScales) -> Result<Self> {
        let x = find_zero(zero_kind(parity), n)?;
        Ok(Self::from_zero(parity, n, x, scales.rho()))
    }

    pub fn from_zero(parity: Parity, n: usize, x: f64, rho: f64) -> Self {
        let (a, ap) = ai(-x);
        let norm = match parity {
            Parity::Even => 1.0 / ((2.0 * rho * x).sqrt() * a),
            Parity::Odd => 1.0 / ((2.0 * rho).sqrt() * ap),
        };
        SymState { parity, n, x, rho, norm }
    }

    pub fn psi(&self, z: f64) -> f64 {
        let v = self.norm * ai(z.abs() / self.rho - self.x).0;
        match self.parity {
            Parity::Even => v,
            Parity::Odd if z < 0.0 => -v,
            Parity::Odd => v,
        }
    }

    pub fn dpsi(&self, z: f64) -> f64 {
        let v = self.norm * ai(z.abs() / self.rho - self.x).1 / self.rho;
        match self.parity {
            Parity::Even if z < 0.0 => -v,
            Parity::Even => v,
            Parity::Odd => v,
        }
    }
}

pub fn wavefunction(parity: Parity, n: usize, scales: &PhysicalScales, z: f64) -> Result<f64> {
    Ok(SymState::new(parity, n, scales)?.psi(z))
}

/// <odd n| z |even k> = -2 rho / (sqrt(chi_k) (chi_k - zeta_n)^3).
pub fn dipole_cross(n_odd: usize, k_even: usize, scales: &PhysicalScales) -> Result<f64> {
    let zeta = find_zero(ZeroKind::Ai, n_odd)?;
    let chi = find_zero(ZeroKind::AiPrime, k_even)?;
    Ok(dipole_cross_from_zeros(zeta, chi) * scales.rho())
}

pub(crate) fn dipole_cross_from_zeros(zeta: f64, chi: f64) -> f64 {
    -2.0 / (chi.sqrt() * (chi - zeta).powi(3))
}

/// <a n| z |b k> for arbitrary parities; zero unless the parities differ.
pub fn dipole(a: Parity, n: usize, b: Parity, k: usize, scales: &PhysicalScales) -> Result<f64> {
    match (a, b) {
        (Parity::Odd, Parity::Even) => dipole_cross(n, k, scales),
        (Parity::Even, Parity::Odd) => dipole_cross(k, n, scales),
        _ => {
            if n == 0 || k == 0 {
                return Err(Error::InvalidIndex(0));
            }
            Ok(0.0)
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !delta.is_finite() {
        return Err(Error::NonFinite(delta));
    }
    if delta.abs() >= 1.0 {
        return Err(Error::NoBoundState { delta, requirement: "|delta| < 1" });
    }
    Ok(())
}

/// Slope-dependent constants of the two half-lines.
#[derive(Debug, Clone, Copy)]
struct Halves {
    /// (1 +- delta)^(1/3)
    c_r: f64,
    c_l: f64,
    /// (1 +- delta)^(2/3)
    s_r: f64,
    s_l: f64,
}

impl Halves {
    fn new(delta: f64) -> Self {
        let c_r = (1.0 + delta).cbrt();
        let c_l = (1.0 - delta).cbrt();
        Halves { c_r, c_l, s_r: c_r * c_r, s_l: c_l * c_l }
    }
}

/// G and dG/de at dimensionless energy e.
fn g_and_slope(e: f64, h: &Halves) -> (f64, f64) {
    let u_r = -e / h.s_r;
    let u_l = -e / h.s_l;
    let (a_r, ap_r) = ai(u_r);
    let (a_l, ap_l) = ai(u_l);
    let g = h.c_r * a_l * ap_r + h.c_l * a_r * ap_l;
    // d/de Ai(u) = -Ai'(u) / s, d/de Ai'(u) = -u Ai(u) / s
    let right = h.c_r * (ap_l * ap_r / h.s_l + a_l * u_r * a_r / h.s_r);
    let left = h.c_l * (ap_r * ap_l / h.s_r + a_r * u_l * a_l / h.s_l);
    (g, -(right + left))
}

/// The matching function G(E, delta); its zeros are the perturbed energies.
pub fn eigencondition(energy: f64, delta: f64, scales: &PhysicalScales) -> Result<f64> {
    check_delta(delta)?;
    if !energy.is_finite() {
        return Err(Error::NonFinite(energy));
    }
    Ok(g_and_slope(energy / scales.e0(), &Halves::new(delta)).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedState {
    pub parity: Parity,
    pub n: usize,
    pub energy: f64,
    pub delta: f64,
    pub f_r: f64,
    pub f_l: f64,
    pub rho_r: f64,
    pub rho_l: f64,
    /// alpha_R / alpha_L.
    pub alpha_ratio: f64,
    /// |G| at the returned root.
    pub residual: f64,
    alpha_l: f64,
    u_r: f64,
    u_l: f64,
}

impl PerturbedState {
    /// Normalised eigenfunction, alpha_L > 0.
    pub fn psi(&self, z: f64) -> f64 {
        if z >= 0.0 {
            self.alpha_l * self.alpha_ratio * ai(z / self.rho_r + self.u_r).0
        } else {
            self.alpha_l * ai(-z / self.rho_l + self.u_l).0
        }
    }
}

/// Index of the level in the combined energy-ordered spectrum (1-based).
fn combined_index(parity: Parity, n: usize) -> usize {
    match parity {
        Parity::Even => 2 * n - 1,
        Parity::Odd => 2 * n,
    }
}

/// Perturbed energy of the level that continues (parity, n) from delta = 0.
pub fn solve_perturbed(
    parity: Parity,
    n: usize,
    delta: f64,
    scales: &PhysicalScales,
) -> Result<PerturbedState> {
    solve_perturbed_with_limit(parity, n, delta, scales, DEFAULT_DELTA_LIMIT)
}

pub fn solve_perturbed_with_limit(
    parity: Parity,
    n: usize,
    delta: f64,
    scales: &PhysicalScales,
    limit: f64,
) -> Result<PerturbedState> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    check_delta(delta)?;
    if delta.abs() > limit {
        return Err(Error::DeltaOutOfRange { delta, limit });
    }
    let h = Halves::new(delta);
    let (lo, hi) = bracket(combined_index(parity, n), &h, delta)?;
    let e = refine(lo, hi, &h)?;
    Ok(build_state(parity, n, e, delta, scales, &h))
}

/// Walks up from e = 0 and returns the interval holding the j-th sign change.
fn bracket(j: usize, h: &Halves, delta: f64) -> Result<(f64, f64)> {
    let squeeze = (1.0 - delta * delta).powf(2.0 / 3.0);
    let mut a = 0.0;
    let mut ga = g_and_slope(a, h).0;
    let mut found = 0;
    // G(0) != 0 and the j-th root lies below the j-th unperturbed level
    let ceiling = 2.0 * find_zero(ZeroKind::Ai, j.div_ceil(2) + 1)? + 10.0;
    while a < ceiling {
        let step = SCAN_FRACTION * std::f64::consts::FRAC_PI_2 / (a + 1.0).sqrt() * squeeze;
        let b = a + step;
        let gb = g_and_slope(b, h).0;
        if gb == 0.0 || ga.signum() != gb.signum() {
            found += 1;
            if found == j {
                return Ok((a, b));
            }
        }
        a = b;
        ga = gb;
    }
    Err(Error::NoBracket { lo: 0.0, hi: ceiling })
}

/// Newton inside a sign-change bracket, falling back to bisection.
fn refine(mut lo: f64, mut hi: f64, h: &Halves) -> Result<f64> {
    let mut g_lo = g_and_slope(lo, h).0;
    if g_lo == 0.0 {
        return Ok(lo);
    }
    let mut e = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON {
        let (g, dg) = g_and_slope(e, h);
        if g == 0.0 {
            return Ok(e);
        }
        if g.signum() == g_lo.signum() {
            lo = e;
            g_lo = g;
        } else {
            hi = e;
        }
        let newton = e - g / dg;
        let next = if dg != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - e).abs() <= 2.0 * f64::EPSILON * e.abs() || hi - lo <= 2.0 * f64::EPSILON * e.abs() {
            return Ok(next);
        }
        e = next;
    }
    Err(Error::NoConvergence { iterations: MAX_NEWTON })
}

fn build_state(
    parity: Parity,
    n: usize,
    e: f64,
    delta: f64,
    scales: &PhysicalScales,
    h: &Halves,
) -> PerturbedState {
    let rho = scales.rho();
    let f = scales.slope();
    let rho_r = rho / h.c_r;
    let rho_l = rho / h.c_l;
    let u_r = -e / h.s_r;
    let u_l = -e / h.s_l;
    let (a_r, ap_r) = ai(u_r);
    let (a_l, ap_l) = ai(u_l);
    // continuity of psi or of psi', whichever is better conditioned
    let value_weight = a_r.abs() * u_r.abs().max(1.0).powf(0.25);
    let slope_weight = ap_r.abs() * u_r.abs().max(1.0).powf(-0.25);
    let alpha_ratio = if value_weight >= slope_weight { a_l / a_r } else { -(rho_r / rho_l) * ap_l / ap_r };
    // half-line norms from the same-shift moment-0 identity
    let right = rho_r * (ap_r * ap_r - u_r * a_r * a_r);
    let left = rho_l * (ap_l * ap_l - u_l * a_l * a_l);
    let alpha_l = 1.0 / (left + alpha_ratio * alpha_ratio * right).sqrt();
    PerturbedState {
        parity,
        n,
        energy: e * scales.e0(),
        delta,
        f_r: f * (1.0 + delta),
        f_l: f * (1.0 - delta),
        rho_r,
        rho_l,
        alpha_ratio,
        residual: g_and_slope(e, h).0.abs(),
        alpha_l,
        u_r,
        u_l,
    }
}

/// Semiclassical level index for (parity, n): even n -> 2n - 2, odd n -> 2n - 1.
pub fn wkb_index(parity: Parity, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    Ok(combined_index(parity, n) - 1)
}

/// [3 pi (n_bar + 1/2) / 4]^(2/3) e0 (1 - delta^2)^(2/3).
pub fn wkb_energy(n_bar: usize, delta: f64, scales: &PhysicalScales) -> Result<f64> {
    check_delta(delta)?;
    let base = (0.75 * std::f64::consts::PI * (n_bar as f64 + 0.5)).powf(2.0 / 3.0);
    Ok(base * scales.e0() * (1.0 - delta * delta).powf(2.0 / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::quadrature;

    const ZETA1: f64 = 2.338_107_410_459_767;
    const CHI1: f64 = 1.018_792_971_647_471;

    fn unit() -> PhysicalScales {
        PhysicalScales::dimensionless()
    }

    #[test]
    fn levels_interleave() {
        let s = unit();
        let sp = spectrum(6, &s).unwrap();
        assert!((sp[0].energy - CHI1).abs() < 1e-13);
        assert!((sp[1].energy - ZETA1).abs() < 1e-13);
        assert!(sp.windows(2).all(|w| w[0].energy < w[1].energy));
    }

    #[test]
    fn wavefunction_symmetry_and_norm() {
        let s = unit();
        let odd = SymState::new(Parity::Odd, 1, &s).unwrap();
        assert!(odd.psi(0.0).abs() < 1e-14);
        assert!((odd.psi(1.3) + odd.psi(-1.3)).abs() < 1e-15);
        let even = SymState::new(Parity::Even, 1, &s).unwrap();
        assert!(even.dpsi(0.0).abs() < 1e-13);
        let lim = CHI1 + 20.0;
        let q = quadrature(|z| even.psi(z).powi(2), -lim, lim, 1e-12).unwrap();
        assert!((q.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cross_dipole_value_and_quadrature() {
        let s = unit();
        let d = dipole_cross(1, 1, &s).unwrap();
        assert!((d - 0.862_863_462_023_836_3).abs() < 1e-13, "{d}");
        let odd = SymState::new(Parity::Odd, 1, &s).unwrap();
        let even = SymState::new(Parity::Even, 1, &s).unwrap();
        let q = quadrature(|z| z * odd.psi(z) * even.psi(z), -25.0, 25.0, 1e-12).unwrap();
        assert!((q.value - d).abs() < 1e-7, "{} vs {d}", q.value);
        assert_eq!(dipole(Parity::Odd, 1, Parity::Odd, 2, &s).unwrap(), 0.0);
        assert_eq!(dipole(Parity::Even, 1, Parity::Odd, 1, &s).unwrap(), d);
    }

    #[test]
    fn condition_at_zero_field() {
        let s = unit();
        assert!(eigencondition(ZETA1, 0.0, &s).unwrap().abs() < 1e-15);
        assert!(eigencondition(CHI1, 0.0, &s).unwrap().abs() < 1e-15);
        assert!(eigencondition(1.5, 0.0, &s).unwrap().abs() > 1e-2);
        assert!(eigencondition(1.5, 1.0, &s).is_err());
        for e in [0.3, 2.0, 7.7] {
            assert_eq!(eigencondition(e, 0.2, &s), eigencondition(e, -0.2, &s));
        }
    }

    #[test]
    fn slope_matches_difference_quotient() {
        let h = Halves::new(0.17);
        for e in [0.5, 3.0, 11.0] {
            let eps = 1e-6;
            let fd = (g_and_slope(e + eps, &h).0 - g_and_slope(e - eps, &h).0) / (2.0 * eps);
            assert!((fd - g_and_slope(e, &h).1).abs() < 1e-8);
        }
    }

    #[test]
    fn perturbed_roots() {
        let s = unit();
        let st = solve_perturbed(Parity::Odd, 1, 0.0, &s).unwrap();
        assert!((st.energy - ZETA1).abs() < 1e-14);
        for (parity, target) in [(Parity::Odd, -7.0 / 9.0), (Parity::Even, -5.0 / 9.0)] {
            let e0 = solve_perturbed(parity, 1, 0.0, &s).unwrap().energy;
            let ep = solve_perturbed(parity, 1, 0.1, &s).unwrap().energy;
            let em = solve_perturbed(parity, 1, -0.1, &s).unwrap().energy;
            assert_eq!(ep, em);
            let est = (ep + em - 2.0 * e0) / (2.0 * 0.01 * e0);
            assert!((est - target).abs() < 0.01 * target.abs(), "{parity:?} {est}");
        }
        assert!(matches!(solve_perturbed(Parity::Even, 1, 0.5, &s), Err(Error::DeltaOutOfRange { .. })));
    }

    #[test]
    fn perturbed_wavefunction_is_normalised_and_smooth() {
        let s = unit();
        for parity in [Parity::Even, Parity::Odd] {
            let st = solve_perturbed(parity, 2, 0.2, &s).unwrap();
            let q = quadrature(|z| st.psi(z).powi(2), -40.0, 40.0, 1e-12).unwrap();
            assert!((q.value - 1.0).abs() < 1e-8, "{parity:?} {}", q.value);
            let eps = 1e-7;
            assert!((st.psi(eps) - st.psi(-eps)).abs() < 1e-5);
            let d_r = (st.psi(2.0 * eps) - st.psi(eps)) / eps;
            let d_l = (st.psi(-eps) - st.psi(-2.0 * eps)) / eps;
            assert!((d_r - d_l).abs() < 1e-4, "{parity:?} {d_r} {d_l}");
        }
    }

    #[test]
    fn wkb_values() {
        let s = unit();
        let w0 = wkb_energy(0, 0.0, &s).unwrap();
        assert!((w0 - 1.115_46).abs() < 1e-5);
        let w1 = wkb_energy(1, 0.0, &s).unwrap();
        assert!((w1 - 2.320_25).abs() < 1e-5);
        assert_eq!(wkb_index(Parity::Even, 1).unwrap(), 0);
        assert_eq!(wkb_index(Parity::Odd, 1).unwrap(), 1);
        assert!(wkb_energy(0, -1.0, &s).is_err());
    }
}
