use linstark::expansion::{solve_r, DeltaSeries};
use linstark::symlin::{self, eigencondition, solve_perturbed_with_limit};
use linstark::{Error, Parity, PhysicalScales, Result};
use serde::Serialize;

/// Largest |delta| the demo accepts.
pub const DELTA_LIMIT: f64 = 0.95;
pub const MAX_SAMPLES: usize = 20_000;

pub fn parity(even: bool) -> Parity {
    if even {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(Error::InvalidParameter(format!("samples must be in 2..={MAX_SAMPLES}, got {samples}")));
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, samples: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (samples - 1) as f64;
    (0..samples).map(move |i| lo + i as f64 * step)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Root {
    pub parity: Parity,
    pub n: usize,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub energy: Vec<f64>,
    pub g: Vec<f64>,
    pub roots: Vec<Root>,
}

pub fn eigencondition_curve(delta: f64, e_max: f64, samples: usize) -> Result<Curve> {
    check_samples(samples)?;
    if !(e_max > 0.0 && e_max <= 60.0) {
        return Err(Error::InvalidParameter(format!("e_max must be in (0, 60], got {e_max}")));
    }
    let s = PhysicalScales::dimensionless();
    let energy: Vec<f64> = grid(0.0, e_max, samples).collect();
    let g = energy.iter().map(|&e| eigencondition(e, delta, &s)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    'levels: for n in 1.. {
        for p in [Parity::Even, Parity::Odd] {
            let st = solve_perturbed_with_limit(p, n, delta, &s, DELTA_LIMIT)?;
            if st.energy > e_max {
                break 'levels;
            }
            roots.push(Root { parity: p, n, energy: st.energy });
        }
    }
    Ok(Curve { energy, g, roots })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wavefunction {
    pub z: Vec<f64>,
    pub psi: Vec<f64>,
    pub potential: Vec<f64>,
    pub energy: f64,
    pub unperturbed_energy: f64,
}

pub fn wavefunction(
    parity: Parity,
    n: usize,
    delta: f64,
    z_max: f64,
    samples: usize,
) -> Result<Wavefunction> {
    check_samples(samples)?;
    if !(z_max > 0.0 && z_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("z_max must be positive, got {z_max}")));
    }
    let s = PhysicalScales::dimensionless();
    let st = solve_perturbed_with_limit(parity, n, delta, &s, DELTA_LIMIT)?;
    let z: Vec<f64> = grid(-z_max, z_max, samples).collect();
    Ok(Wavefunction {
        psi: z.iter().map(|&z| st.psi(z)).collect(),
        potential: z.iter().map(|&z| z.abs() + delta * z).collect(),
        energy: st.energy,
        unperturbed_energy: symlin::level(parity, n, &s)?.energy,
        z,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarkCurve {
    pub delta: Vec<f64>,
    pub exact: Vec<f64>,
    /// x (1 + R2 delta^2).
    pub second_order: Vec<f64>,
    /// Through the highest order the engine solves.
    pub series: Vec<f64>,
    pub wkb: Vec<f64>,
    /// Display form of R_1, R_2, ...
    pub coefficients: Vec<String>,
}

pub fn stark_curve(parity: Parity, n: usize, delta_max: f64, samples: usize) -> Result<StarkCurve> {
    check_samples(samples)?;
    if !(delta_max > 0.0 && delta_max <= DELTA_LIMIT) {
        return Err(Error::DeltaOutOfRange { delta: delta_max, limit: DELTA_LIMIT });
    }
    let s = PhysicalScales::dimensionless();
    let series: DeltaSeries = solve_r(parity, 6)?;
    let x = symlin::level(parity, n, &s)?.dimensionless_energy;
    let index = symlin::wkb_index(parity, n)?;
    let delta: Vec<f64> = grid(0.0, delta_max, samples).collect();
    let mut out = StarkCurve {
        delta: Vec::with_capacity(samples),
        exact: Vec::with_capacity(samples),
        second_order: Vec::with_capacity(samples),
        series: Vec::with_capacity(samples),
        wkb: Vec::with_capacity(samples),
        coefficients: series.coefficients.iter().map(|c| c.to_string()).collect(),
    };
    for d in delta {
        out.exact.push(solve_perturbed_with_limit(parity, n, d, &s, DELTA_LIMIT)?.energy);
        out.second_order.push(series.energy(x, d, 2));
        out.series.push(series.energy(x, d, series.order()));
        out.wkb.push(symlin::wkb_energy(index, d, &s)?);
        out.delta.push(d);
    }
    Ok(out)
}
