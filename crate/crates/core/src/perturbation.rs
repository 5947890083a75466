//! Rayleigh-Schrodinger sums over the Airy-zero spectra.
//!
//! All sums are dimensionless: energies in units of e0, dipoles in units
//! of rho, so the n-th order shift is delta^n e0 times the sum.

use serde::{Deserialize, Serialize};

use crate::airy::{handbook_density_seed, ZeroKind, ZeroTable};
use crate::bouncer::dipole_from_zeros;
use crate::error::{Error, Result};
use crate::oracle::{compensated_sum, quadrature};
use crate::symlin::dipole_cross_from_zeros;
use crate::Parity;

/// Second-order sum families with closed-form values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumFamily {
    /// sum_{k != n} (zeta_k - zeta_n)^-5 = zeta_n / 36
    Bouncer,
    /// chi_n^-1 sum_k (zeta_k - chi_n)^-7 = 5 chi_n / 36
    SymlinEven,
    /// sum_k chi_k^-1 (chi_k - zeta_n)^-7 = 7 zeta_n / 36
    SymlinOdd,
}

impl SumFamily {
    pub const ALL: [SumFamily; 3] = [SumFamily::Bouncer, SumFamily::SymlinEven, SumFamily::SymlinOdd];

    /// Closed-form value in terms of the level's own zero.
    pub fn target(self, x_n: f64) -> f64 {
        match self {
            SumFamily::Bouncer => x_n / 36.0,
            SumFamily::SymlinEven => 5.0 * x_n / 36.0,
            SumFamily::SymlinOdd => 7.0 * x_n / 36.0,
        }
    }

    /// Zeros of the level itself and of the summed tower.
    fn kinds(self) -> (ZeroKind, ZeroKind) {
        match self {
            SumFamily::Bouncer => (ZeroKind::Ai, ZeroKind::Ai),
            SumFamily::SymlinEven => (ZeroKind::AiPrime, ZeroKind::Ai),
            SumFamily::SymlinOdd => (ZeroKind::Ai, ZeroKind::AiPrime),
        }
    }

    fn term(self, x_n: f64, t: f64) -> f64 {
        match self {
            SumFamily::Bouncer => (t - x_n).powi(-5),
            SumFamily::SymlinEven => (t - x_n).powi(-7) / x_n,
            SumFamily::SymlinOdd => (t - x_n).powi(-7) / t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumRuleResult {
    pub family: SumFamily,
    pub n: usize,
    pub partial_sum: f64,
    pub k_max: usize,
    pub tail_estimate: f64,
    pub target: f64,
    pub relative_error: f64,
    /// Set when k_max < 10 n or the tail integral did not converge.
    pub flagged: bool,
}

/// Zero table large enough for sums up to `k_max`.
pub fn table_for(k_max: usize) -> Result<ZeroTable> {
    ZeroTable::build(k_max + 1)
}

pub fn second_order_sum(family: SumFamily, n: usize, k_max: usize) -> Result<SumRuleResult> {
    second_order_sum_with(&table_for(k_max.max(n))?, family, n, k_max)
}

pub fn second_order_sum_with(
    table: &ZeroTable,
    family: SumFamily,
    n: usize,
    k_max: usize,
) -> Result<SumRuleResult> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    if table.len() < k_max.max(n) {
        return Err(Error::InvalidParameter(format!("zero table holds {} zeros, need {k_max}", table.len())));
    }
    let (own, tower) = family.kinds();
    let x_n = table.get(own, n);
    let partial_sum = compensated_sum(
        (1..=k_max)
            .filter(|&k| !(family == SumFamily::Bouncer && k == n))
            .map(|k| family.term(x_n, table.get(tower, k))),
    );
    // midpoint-rule tail over the asymptotic zero density
    let start = k_max as f64 + 0.5;
    let tail = quadrature(
        |s| {
            let k = start + s / (1.0 - s);
            family.term(x_n, handbook_density_seed(tower, k)) / ((1.0 - s) * (1.0 - s))
        },
        0.0,
        1.0 - 1e-12,
        1e-16,
    );
    let (tail_estimate, tail_ok) = match tail {
        Ok(q) => (q.value, true),
        Err(_) => (0.0, false),
    };
    let target = family.target(x_n);
    Ok(SumRuleResult {
        family,
        n,
        partial_sum,
        k_max,
        tail_estimate,
        target,
        relative_error: ((partial_sum + tail_estimate - target) / target).abs(),
        flagged: k_max < 10 * n || !tail_ok,
    })
}

/// Third-order double sum and its closed-form expectation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThirdOrderResult {
    pub system: ThirdOrderSystem,
    pub n: usize,
    pub k_max: usize,
    pub estimate: f64,
    /// (4/81) zeta_n for the bouncer, 0 for the symmetric well.
    pub expected: f64,
    /// |estimate(k_max) - estimate(k_max / 2)|.
    pub truncation_change: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThirdOrderSystem {
    Bouncer,
    Symlin(Parity),
}

/// Dimensionless level energies and dipole matrix for one system.
struct Tower {
    energies: Vec<f64>,
    /// Position of the state of interest.
    index: usize,
    dipole: Box<dyn Fn(usize, usize) -> f64>,
}

fn tower(table: &ZeroTable, system: ThirdOrderSystem, n: usize, k_max: usize) -> Tower {
    match system {
        ThirdOrderSystem::Bouncer => {
            let z: Vec<f64> = table.zetas()[..k_max].to_vec();
            let zz = z.clone();
            Tower {
                energies: z,
                index: n - 1,
                dipole: Box::new(
                    move |i, j| {
                        if i == j {
                            2.0 * zz[i] / 3.0
                        } else {
                            dipole_from_zeros(zz[i], zz[j])
                        }
                    },
                ),
            }
        }
        ThirdOrderSystem::Symlin(parity) => {
            // combined spectrum: even levels at even positions
            let mut e = Vec::with_capacity(2 * k_max);
            for k in 0..k_max {
                e.push(table.chis()[k]);
                e.push(table.zetas()[k]);
            }
            let ee = e.clone();
            let index = match parity {
                Parity::Even => 2 * (n - 1),
                Parity::Odd => 2 * n - 1,
            };
            Tower {
                energies: e,
                index,
                dipole: Box::new(move |i, j| match (i % 2, j % 2) {
                    (1, 0) => dipole_cross_from_zeros(ee[i], ee[j]),
                    (0, 1) => dipole_cross_from_zeros(ee[j], ee[i]),
                    _ => 0.0,
                }),
            }
        }
    }
}

fn third_order_value(t: &Tower, limit: usize) -> f64 {
    let n = t.index;
    let x_n = t.energies[n];
    let d = &t.dipole;
    let others: Vec<usize> = (0..limit).filter(|&k| k != n).collect();
    let mut rows = Vec::with_capacity(others.len());
    for &k in &others {
        let dnk = d(n, k);
        if dnk == 0.0 {
            continue;
        }
        let ek = x_n - t.energies[k];
        let inner = compensated_sum(others.iter().map(|&m| {
            let dmn = d(m, n);
            if dmn == 0.0 {
                0.0
            } else {
                d(k, m) * dmn / (x_n - t.energies[m])
            }
        }));
        rows.push(dnk * inner / ek);
    }
    let first = compensated_sum(rows);
    let dnn = d(n, n);
    let second = if dnn == 0.0 {
        0.0
    } else {
        dnn * compensated_sum(others.iter().map(|&k| {
            let dnk = d(n, k);
            dnk * dnk / (x_n - t.energies[k]).powi(2)
        }))
    };
    first - second
}

pub fn third_order_check(system: ThirdOrderSystem, n: usize, k_max: usize) -> Result<ThirdOrderResult> {
    third_order_check_with(&table_for(k_max.max(n))?, system, n, k_max)
}

pub fn third_order_check_with(
    table: &ZeroTable,
    system: ThirdOrderSystem,
    n: usize,
    k_max: usize,
) -> Result<ThirdOrderResult> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    if k_max < 2 * n || table.len() < k_max {
        return Err(Error::InvalidParameter(format!("k_max = {k_max} too small for n = {n}")));
    }
    let t = tower(table, system, n, k_max);
    let full = t.energies.len();
    let estimate = third_order_value(&t, full);
    let half = third_order_value(&t, full / 2);
    let expected = match system {
        ThirdOrderSystem::Bouncer => 4.0 * table.zeta(n) / 81.0,
        ThirdOrderSystem::Symlin(_) => 0.0,
    };
    Ok(ThirdOrderResult { system, n, k_max, estimate, expected, truncation_change: (estimate - half).abs() })
}

/// Closed-form second-order shifts of the comparison systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReferenceSystem {
    Harmonic {
        mass: f64,
        omega: f64,
    },
    /// Walls at +-half_width.
    InfiniteWell {
        mass: f64,
        half_width: f64,
        hbar: f64,
    },
}

/// Second-order shift of level n (n = 0, 1, 2, ...) under a force fbar.
pub fn reference_shift(system: ReferenceSystem, n: usize, fbar: f64) -> Result<f64> {
    match system {
        ReferenceSystem::Harmonic { mass, omega } => {
            if !(mass > 0.0 && omega > 0.0) {
                return Err(Error::InvalidParameter("harmonic oscillator needs m, omega > 0".into()));
            }
            Ok(-fbar * fbar / (2.0 * mass * omega * omega))
        }
        ReferenceSystem::InfiniteWell { mass, half_width, hbar } => {
            if !(mass > 0.0 && half_width > 0.0 && hbar > 0.0) {
                return Err(Error::InvalidParameter("infinite well needs m, a, hbar > 0".into()));
            }
            let pi = std::f64::consts::PI;
            let m1 = (n + 1) as f64;
            let e0 = hbar * hbar * pi * pi * m1 * m1 / (8.0 * mass * half_width * half_width);
            Ok(fbar * fbar * half_width * half_width / (12.0 * e0) * (1.0 - 15.0 / (m1 * m1 * pi * pi)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sum_rules() {
        let table = table_for(400).unwrap();
        for family in SumFamily::ALL {
            let r = second_order_sum_with(&table, family, 1, 400).unwrap();
            assert!(r.relative_error < 1e-6, "{family:?} {r:?}");
            assert!(!r.flagged);
        }
    }

    #[test]
    fn third_order_small() {
        let table = table_for(200).unwrap();
        let b = third_order_check_with(&table, ThirdOrderSystem::Bouncer, 1, 200).unwrap();
        assert!((b.estimate - b.expected).abs() < 1e-3 * b.expected, "{b:?}");
        let s = third_order_check_with(&table, ThirdOrderSystem::Symlin(Parity::Odd), 1, 50).unwrap();
        assert_eq!(s.estimate, 0.0);
    }

    #[test]
    fn reference_signs() {
        let w = ReferenceSystem::InfiniteWell { mass: 1.0, half_width: 1.0, hbar: 1.0 };
        assert!(reference_shift(w, 0, 0.3).unwrap() < 0.0);
        assert!(reference_shift(w, 1, 0.3).unwrap() > 0.0);
        let h = ReferenceSystem::Harmonic { mass: 2.0, omega: 0.5 };
        assert_eq!(reference_shift(h, 4, 1.0).unwrap(), -1.0);
        let bad = ReferenceSystem::Harmonic { mass: 0.0, omega: 1.0 };
        assert!(reference_shift(bad, 0, 1.0).is_err());
    }
}
