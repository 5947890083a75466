//! The acceptance checks, runnable from tests and from the command line.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::airy::{
    ai, antideriv_derivative_product_in, antideriv_product_in, definite_derivative_product_from,
    definite_product_from, handbook_seed, Jet, Moment, ZeroKind, ZeroTable,
};
use crate::bouncer::{self, BouncerState};
use crate::error::Result;
use crate::expansion::{self, rat, Truncated};
use crate::oracle::{fd_eigenvalues_richardson, quadrature, GridSpec};
use crate::perturbation::{
    reference_shift, second_order_sum_with, table_for, third_order_check_with, ReferenceSystem, SumFamily,
    ThirdOrderSystem,
};
use crate::symlin::{self, SymState};
use crate::{Parity, PhysicalScales, StarkInput, System};

pub const CRITERIA: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub seconds: f64,
    pub details: Vec<String>,
}

impl CheckOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds
        )
    }
}

struct Log {
    passed: bool,
    details: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: String) {
        if !ok {
            self.passed = false;
        }
        self.details.push(format!("{} {msg}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, msg: String) {
        self.details.push(format!("     {msg}"));
    }
}

const TITLES: [&str; CRITERIA] = [
    "Airy zeros: residuals, interleaving, asymptotic seeds",
    "normalisation and virial ratios by quadrature",
    "bouncer Stark shift against the finite-difference oracle",
    "symmetric-well second-order Stark coefficients",
    "WKB coefficient bracketed by the parity coefficients",
    "second-order sum rules",
    "third-order sums",
    "closed-form Airy integrals",
    "expansion against the root solve: error slope",
    "reference shifts for the oscillator and infinite well",
];

pub fn run(id: usize) -> CheckOutcome {
    let start = Instant::now();
    let mut log = Log::new();
    let body: fn(&mut Log) -> Result<()> = match id {
        1 => zeros,
        2 => normalisation,
        3 => bouncer_stark,
        4 => symmetric_stark,
        5 => wkb_bracket,
        6 => sum_rules,
        7 => third_order,
        8 => integrals,
        9 => engine_vs_roots,
        10 => reference,
        _ => {
            return CheckOutcome {
                id,
                title: "unknown criterion".into(),
                passed: false,
                seconds: 0.0,
                details: vec![format!("no criterion {id}")],
            }
        }
    };
    if let Err(e) = body(&mut log) {
        log.check(false, format!("error: {e}"));
    }
    let seconds = start.elapsed().as_secs_f64();
    let limit = match id {
        1 => Some(1.0),
        2 => Some(10.0),
        6 => Some(30.0),
        _ => None,
    };
    if let Some(limit) = limit {
        log.check(seconds < limit, format!("runtime {seconds:.3} s < {limit} s"));
    }
    CheckOutcome { id, title: TITLES[id - 1].into(), passed: log.passed, seconds, details: log.details }
}

pub fn run_all() -> Vec<CheckOutcome> {
    (1..=CRITERIA).map(run).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn zeros(log: &mut Log) -> Result<()> {
    let table = ZeroTable::build(1001)?;
    let mut worst_ai: f64 = 0.0;
    let mut worst_aip: f64 = 0.0;
    for n in 1..=200 {
        worst_ai = worst_ai.max(ai(-table.zeta(n)).0.abs());
        worst_aip = worst_aip.max(ai(-table.chi(n)).1.abs());
    }
    log.check(worst_ai < 1e-12, format!("max |Ai(-zeta_n)|, n <= 200: {worst_ai:.3e} < 1e-12"));
    log.check(worst_aip < 1e-12, format!("max |Ai'(-chi_n)|, n <= 200: {worst_aip:.3e} < 1e-12"));
    let order_ok = (1..=1000).all(|n| table.chi(n) < table.zeta(n) && table.zeta(n) < table.chi(n + 1));
    log.check(order_ok, "chi_n < zeta_n < chi_(n+1) for n <= 1000".into());
    let mut worst_seed: f64 = 0.0;
    for n in 10..=1000 {
        worst_seed = worst_seed
            .max(rel(handbook_seed(ZeroKind::Ai, n), table.zeta(n)))
            .max(rel(handbook_seed(ZeroKind::AiPrime, n), table.chi(n)));
    }
    log.check(worst_seed < 1e-3, format!("asymptotic seeds, 10 <= n <= 1000: rel {worst_seed:.3e} < 1e-3"));
    Ok(())
}

/// Quadrature of the norm, <V>/E and <T>/E on the half-line [0, x + 20].
fn moments(psi: impl Fn(f64) -> f64, dpsi: impl Fn(f64) -> f64, x: f64, fold: f64) -> Result<[f64; 3]> {
    let hi = x + 20.0;
    let tol = 1e-13;
    let norm = quadrature(|z| psi(z).powi(2), 0.0, hi, tol)?.value * fold;
    let v = quadrature(|z| z * psi(z).powi(2), 0.0, hi, tol)?.value * fold;
    let t = quadrature(|z| dpsi(z).powi(2), 0.0, hi, tol)?.value * fold;
    Ok([norm, v / x, t / x])
}

fn normalisation(log: &mut Log) -> Result<()> {
    let s = PhysicalScales::dimensionless();
    let mut worst = [0.0f64; 3];
    let mut record = |m: [f64; 3]| {
        let errs = [(m[0] - 1.0).abs(), (m[1] - 2.0 / 3.0).abs(), (m[2] - 1.0 / 3.0).abs()];
        for (w, e) in worst.iter_mut().zip(errs) {
            *w = w.max(e);
        }
    };
    for n in 1..=10 {
        let b = BouncerState::new(n, &s)?;
        record(moments(|z| b.psi(z), |z| b.dpsi(z), b.zeta, 1.0)?);
        for parity in [Parity::Even, Parity::Odd] {
            let st = SymState::new(parity, n, &s)?;
            record(moments(|z| st.psi(z), |z| st.dpsi(z), st.x, 2.0)?);
        }
    }
    let names = ["|norm - 1|", "|<V>/E - 2/3|", "|<T>/E - 1/3|"];
    for (name, w) in names.iter().zip(worst) {
        log.check(w < 1e-8, format!("{name}, n <= 10, both systems: {w:.3e} < 1e-8"));
    }
    Ok(())
}

fn bouncer_stark(log: &mut Log) -> Result<()> {
    let s = PhysicalScales::dimensionless();
    let grid = GridSpec::default_for(System::Bouncer, 3, &s);
    let r = fd_eigenvalues_richardson(System::Bouncer, 0.1, &s, &grid, 3)?;
    for n in 1..=3 {
        let exact = bouncer::stark_exact(n, &s, &StarkInput::from_delta(0.1, &s))?;
        let fd = r.extrapolated[n - 1];
        let e = rel(fd, exact);
        log.check(
            e <= 1e-5,
            format!(
                "n = {n}: FD {fd:.12} vs zeta_n (1.1)^(2/3) = {exact:.12}, rel {e:.2e} <= 1e-5 \
                 (Richardson estimate {:.1e}, order {:.2})",
                r.error_estimate[n - 1],
                r.observed_order[n - 1]
            ),
        );
    }
    let orders = bouncer::stark_orders(1, &s)?;
    let want = [rat(2, 3), rat(-1, 9), rat(4, 81)];
    log.check(orders.exact == want, format!("stark orders = {:?}", orders.coefficients));
    Ok(())
}

/// (E(d) + E(-d) - 2 E(0)) / (2 d^2 E(0)).
fn second_difference(parity: Parity, n: usize, d: f64, s: &PhysicalScales) -> Result<f64> {
    let e0 = symlin::solve_perturbed(parity, n, 0.0, s)?.energy;
    let ep = symlin::solve_perturbed(parity, n, d, s)?.energy;
    let em = symlin::solve_perturbed(parity, n, -d, s)?.energy;
    Ok((ep + em - 2.0 * e0) / (2.0 * d * d * e0))
}

fn symmetric_stark(log: &mut Log) -> Result<()> {
    let s = PhysicalScales::dimensionless();
    for (parity, target) in [(Parity::Odd, -7.0 / 9.0), (Parity::Even, -5.0 / 9.0)] {
        for n in 1..=3 {
            let a = second_difference(parity, n, 0.05, &s)?;
            let b = second_difference(parity, n, 0.1, &s)?;
            let c = second_difference(parity, n, 0.2, &s)?;
            let r1 = (4.0 * a - b) / 3.0;
            let r2 = (4.0 * b - c) / 3.0;
            let r = (16.0 * r1 - r2) / 15.0;
            let e = rel(r, target);
            log.check(
                e < 1e-3,
                format!("{parity:?} n = {n}: extrapolated {r:.8} vs {target:.8}, rel {e:.2e} < 1e-3"),
            );
        }
    }
    let odd = expansion::solve_r(Parity::Odd, 3)?.as_constants();
    let even = expansion::solve_r(Parity::Even, 3)?.as_constants();
    log.check(
        odd == Some(vec![rat(0, 1), rat(-7, 9), rat(0, 1)]),
        "odd expansion: R1 = R3 = 0, R2 = -7/9 exactly".into(),
    );
    log.check(
        even == Some(vec![rat(0, 1), rat(-5, 9), rat(0, 1)]),
        "even expansion: R1 = R3 = 0, R2 = -5/9 exactly".into(),
    );
    Ok(())
}

fn wkb_bracket(log: &mut Log) -> Result<()> {
    let odd = expansion::solve_r(Parity::Odd, 2)?;
    let even = expansion::solve_r(Parity::Even, 2)?;
    let r_odd = odd.coefficient(2).and_then(|c| c.as_constant()).unwrap_or_default();
    let r_even = even.coefficient(2).and_then(|c| c.as_constant()).unwrap_or_default();
    let mean = expansion::second_order_mean(&r_even, &r_odd);
    log.check(mean == rat(-2, 3), format!("({r_odd} + {r_even}) / 2 = {mean}, exactly -2/3"));
    // (1 - d^2)^(2/3) as a series in d^2
    let wkb = Truncated::binomial(1, -1, &rat(2, 3)).coeff(1).as_constant().unwrap_or_default();
    log.check(wkb == mean, format!("WKB coefficient of d^2: {wkb}"));
    log.check(r_odd < wkb && wkb < r_even, format!("{r_odd} < {wkb} < {r_even}"));
    Ok(())
}

fn sum_rules(log: &mut Log) -> Result<()> {
    let k_max = 2000;
    let table = table_for(k_max)?;
    for family in SumFamily::ALL {
        let mut worst: f64 = 0.0;
        let mut flagged = false;
        for n in 1..=5 {
            let r = second_order_sum_with(&table, family, n, k_max)?;
            worst = worst.max(r.relative_error);
            flagged |= r.flagged;
        }
        log.check(
            worst < 1e-6 && !flagged,
            format!("{family:?}, n <= 5, k_max = {k_max}: max rel {worst:.3e} < 1e-6"),
        );
    }
    Ok(())
}

fn third_order(log: &mut Log) -> Result<()> {
    let k_max = 2000;
    let table = table_for(k_max)?;
    for n in 1..=3 {
        for parity in [Parity::Even, Parity::Odd] {
            let r = third_order_check_with(&table, ThirdOrderSystem::Symlin(parity), n, k_max)?;
            log.check(
                r.estimate.abs() < 1e-5,
                format!("symmetric {parity:?} n = {n}: |sum| = {:.3e} < 1e-5", r.estimate.abs()),
            );
        }
        let r = third_order_check_with(&table, ThirdOrderSystem::Bouncer, n, k_max)?;
        let e = rel(r.estimate, r.expected);
        log.check(
            e < 1e-4,
            format!(
                "bouncer n = {n}: {:.10} vs (4/81) zeta_n = {:.10}, rel {e:.2e} < 1e-4",
                r.estimate, r.expected
            ),
        );
    }
    Ok(())
}

fn integrals(log: &mut Log) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(0x5eed_a1e7);
    let mut worst_derivative: f64 = 0.0;
    let mut worst_definite: f64 = 0.0;
    for _ in 0..50 {
        let x: f64 = rng.gen_range(-6.0..6.0);
        let b1: f64 = rng.gen_range(0.5..8.0);
        let b2: f64 = b1 + rng.gen_range(0.5..4.0);
        let (a1, ap1) = ai(x - b1);
        let a2 = ai(x - b2).0;
        let jet = Jet::variable(x);
        let checks = [
            (antideriv_product_in(jet, b1, b1, Moment::Zero)?, a1 * a1),
            (antideriv_product_in(jet, b1, b1, Moment::One)?, x * a1 * a1),
            (antideriv_product_in(jet, b1, b1, Moment::Two)?, x * x * a1 * a1),
            (antideriv_product_in(jet, b1, b2, Moment::Zero)?, a1 * a2),
            (antideriv_product_in(jet, b1, b2, Moment::One)?, x * a1 * a2),
            (antideriv_derivative_product_in(jet, b1), ap1 * ap1),
        ];
        for (j, f) in checks {
            worst_derivative = worst_derivative.max((j.slope - f).abs());
        }

        let hi = b2 + 25.0;
        let tol = 1e-13;
        let pairs = [
            (
                definite_product_from(x, b1, b1, Moment::Zero)?,
                quadrature(|t| ai(t - b1).0.powi(2), x, hi, tol)?,
            ),
            (
                definite_product_from(x, b1, b1, Moment::One)?,
                quadrature(|t| t * ai(t - b1).0.powi(2), x, hi, tol)?,
            ),
            (
                definite_product_from(x, b1, b1, Moment::Two)?,
                quadrature(|t| t * t * ai(t - b1).0.powi(2), x, hi, tol)?,
            ),
            (
                definite_product_from(x, b1, b2, Moment::Zero)?,
                quadrature(|t| ai(t - b1).0 * ai(t - b2).0, x, hi, tol)?,
            ),
            (
                definite_product_from(x, b1, b2, Moment::One)?,
                quadrature(|t| t * ai(t - b1).0 * ai(t - b2).0, x, hi, tol)?,
            ),
            (definite_derivative_product_from(x, b1), quadrature(|t| ai(t - b1).1.powi(2), x, hi, tol)?),
        ];
        for (closed, q) in pairs {
            worst_definite = worst_definite.max((closed - q.value).abs());
        }
    }
    log.check(
        worst_derivative <= 1e-10,
        format!(
            "exact derivative minus integrand, 50 points x 6 identities: {worst_derivative:.3e} <= 1e-10"
        ),
    );
    log.check(
        worst_definite <= 1e-8,
        format!("definite integrals minus quadrature, 50 lower limits x 6: {worst_definite:.3e} <= 1e-8"),
    );
    Ok(())
}

/// Least-squares slope of log(err) against log(delta).
pub fn log_log_slope(deltas: &[f64], errors: &[f64]) -> f64 {
    let lx: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ly: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn engine_vs_roots(log: &mut Log) -> Result<()> {
    let s = PhysicalScales::dimensionless();
    let deltas = [0.025, 0.05, 0.1, 0.2];
    for parity in [Parity::Odd, Parity::Even] {
        let series = expansion::solve_r(parity, 4)?;
        let x = symlin::level(parity, 1, &s)?.dimensionless_energy;
        let mut errors = Vec::with_capacity(deltas.len());
        for &d in &deltas {
            let root = symlin::solve_perturbed(parity, 1, d, &s)?.energy;
            errors.push((root - series.energy(x, d, 4)).abs());
        }
        let slope = log_log_slope(&deltas, &errors);
        log.check(
            (slope - 5.0).abs() <= 0.3,
            format!("{parity:?} n = 1: log-log slope {slope:.3}, required 5 +- 0.3"),
        );
        let r5 = expansion::solve_r(parity, 6)?;
        log.note(format!(
            "R5 = {}, R6(x) = {}: leading remainder is R6 x d^6",
            r5.coefficient(5).map(|c| c.to_string()).unwrap_or_default(),
            r5.coefficient(6).map(|c| c.to_string()).unwrap_or_default()
        ));
    }
    Ok(())
}

fn reference(log: &mut Log) -> Result<()> {
    let well = ReferenceSystem::InfiniteWell { mass: 1.0, half_width: 1.0, hbar: 1.0 };
    let e0 = reference_shift(well, 0, 0.1)?;
    let e1 = reference_shift(well, 1, 0.1)?;
    log.check(e0 < 0.0, format!("infinite well n = 0: {e0:.6e} < 0"));
    log.check(e1 > 0.0, format!("infinite well n = 1: {e1:.6e} > 0"));
    let ho = ReferenceSystem::Harmonic { mass: 1.0, omega: 1.0 };
    let shifts: Vec<f64> = (0..6).map(|n| reference_shift(ho, n, 0.1)).collect::<Result<_>>()?;
    log.check(
        shifts.iter().all(|&v| v == shifts[0]) && shifts[0] < 0.0,
        format!("harmonic n = 0..5: all {:.6e}", shifts[0]),
    );
    Ok(())
}
