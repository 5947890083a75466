//! Command-line front end: machine-readable tables of spectra, Stark shifts,
//! expansion coefficients, sum rules and the acceptance checks.

pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linstark::airy::{handbook_seed, ZeroKind, ZeroTable};
use linstark::expansion::{format_rational, solve_bouncer, solve_r, DeltaSeries};
use linstark::oracle::{fd_eigenvalues_richardson, GridSpec};
use linstark::perturbation::ThirdOrderSystem;
use linstark::perturbation::{second_order_sum_with, table_for, third_order_check_with, SumFamily};
use linstark::{bouncer, symlin, verify, Parity, PhysicalScales, StarkInput, System};
use thiserror::Error;

pub use report::{Coefficients, CriterionRow, Report, ReportRow, RowSpec};

pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Physics(#[from] linstark::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Parser)]
#[command(name = "linstark", version, about = "Spectra and Stark shifts of linear potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Relative tolerance for checked rows.
    #[arg(long, env = "LINSTARK_TOL", default_value_t = DEFAULT_TOL, global = true)]
    pub tol: f64,

    #[command(flatten)]
    pub units: Units,
}

/// Physical scales; the defaults give rho = e0 = 1.
#[derive(Debug, Clone, Copy, Args)]
pub struct Units {
    #[arg(long, default_value_t = 0.5, global = true)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0, global = true)]
    pub slope: f64,
    #[arg(long, default_value_t = 1.0, global = true)]
    pub hbar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Bouncer,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// sum (zeta_k - zeta_n)^-5 = zeta_n / 36
    Bouncer,
    /// chi_n^-1 sum (zeta_k - chi_n)^-7 = 5 chi_n / 36
    Even5,
    /// sum chi_k^-1 (chi_k - zeta_n)^-7 = 7 zeta_n / 36
    Odd7,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeros of Ai and Ai' against the asymptotic seeds.
    Zeros {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Unperturbed energies against WKB.
    Spectrum {
        #[arg(long, value_enum, default_value_t = SystemArg::Symmetric)]
        system: SystemArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Stark shift of one level: expansion, perturbation sums, root solve, WKB and oracle.
    Stark {
        #[arg(long, value_enum, default_value_t = SystemArg::Symmetric)]
        system: SystemArg,
        /// Required for the symmetric well.
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Perturbing slope relative to the unperturbed one.
        #[arg(long, conflicts_with = "fbar", allow_hyphen_values = true)]
        delta: Option<f64>,
        /// Perturbing slope in physical units.
        #[arg(long, allow_hyphen_values = true)]
        fbar: Option<f64>,
        /// Terms kept in the perturbation sums.
        #[arg(long, default_value_t = 2000)]
        kmax: usize,
        /// Skip the finite-difference oracle.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Exact shift coefficients R_1..R_order.
    Expand {
        #[arg(long, value_enum, default_value_t = SystemArg::Symmetric)]
        system: SystemArg,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Second-order sum rules.
    Sumrule {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        kmax: usize,
    },
    /// The acceptance checks.
    Verify {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let scales = PhysicalScales::new(cli.units.mass, cli.units.slope, cli.units.hbar)?;
    match &cli.command {
        Command::Zeros { count } => zeros(*count, &scales),
        Command::Spectrum { system, count } => spectrum(*system, *count, &scales),
        Command::Stark { system, parity, n, delta, fbar, kmax, no_oracle } => {
            let stark = match (delta, fbar) {
                (Some(d), _) => StarkInput::from_delta(*d, &scales),
                (None, Some(f)) => StarkInput::from_slope(*f, &scales),
                (None, None) => StarkInput::from_delta(0.1, &scales),
            };
            let ctx = Stark { n: *n, stark, scales, kmax: *kmax, oracle: !no_oracle, tol: cli.tol };
            match system {
                SystemArg::Bouncer => ctx.bouncer(),
                SystemArg::Symmetric => ctx.symmetric(
                    parity.ok_or_else(|| usage("--parity is required for the symmetric well"))?.into(),
                ),
            }
        }
        Command::Expand { system, parity, order } => expand(*system, *parity, *order),
        Command::Sumrule { family, n, kmax } => sumrule(*family, *n, *kmax, &scales, cli.tol),
        Command::Verify { criterion } => verify_report(*criterion),
    }
}

fn units(s: &PhysicalScales) -> (f64, f64) {
    (s.rho(), s.e0())
}

fn zeros(count: usize, scales: &PhysicalScales) -> Result<Report, CliError> {
    if count == 0 {
        return Err(usage("--count must be >= 1"));
    }
    let table = ZeroTable::build(count)?;
    let mut rows = Vec::with_capacity(2 * count);
    for n in 1..=count {
        for (kind, quantity) in [(ZeroKind::Ai, "zeta"), (ZeroKind::AiPrime, "chi")] {
            let spec = RowSpec {
                system: "airy",
                parity: "",
                n,
                delta: 0.0,
                quantity,
                method: "asymptotic_seed",
                exact: "",
            };
            rows.push(ReportRow::new(spec, table.get(kind, n), handbook_seed(kind, n), None, units(scales)));
        }
    }
    Ok(Report::Rows(rows))
}

fn spectrum(system: SystemArg, count: usize, scales: &PhysicalScales) -> Result<Report, CliError> {
    if count == 0 {
        return Err(usage("--count must be >= 1"));
    }
    let u = units(scales);
    let rows = match system {
        SystemArg::Bouncer => (1..=count)
            .map(|n| {
                let e = bouncer::level(n, scales)?.energy;
                let w = bouncer::wkb_energy(n - 1, scales, &StarkInput::from_delta(0.0, scales))?;
                let spec = RowSpec {
                    system: "bouncer",
                    parity: "",
                    n,
                    delta: 0.0,
                    quantity: "energy",
                    method: "wkb",
                    exact: "",
                };
                Ok(ReportRow::new(spec, e, w, None, u))
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        SystemArg::Symmetric => symlin::spectrum(count, scales)?
            .into_iter()
            .map(|l| {
                let w = symlin::wkb_energy(symlin::wkb_index(l.parity, l.n)?, 0.0, scales)?;
                let spec = RowSpec {
                    system: "symmetric",
                    parity: parity_name(l.parity),
                    n: l.n,
                    delta: 0.0,
                    quantity: "energy",
                    method: "wkb",
                    exact: "",
                };
                Ok(ReportRow::new(spec, l.energy, w, None, u))
            })
            .collect::<Result<Vec<_>, CliError>>()?,
    };
    Ok(Report::Rows(rows))
}

struct Stark {
    n: usize,
    stark: StarkInput,
    scales: PhysicalScales,
    kmax: usize,
    oracle: bool,
    tol: f64,
}

impl Stark {
    fn check(&self) -> Result<(), CliError> {
        if self.n == 0 {
            return Err(linstark::Error::InvalidIndex(0).into());
        }
        if !self.stark.delta.is_finite() {
            return Err(linstark::Error::NonFinite(self.stark.delta).into());
        }
        if self.kmax < 10 * self.n {
            return Err(usage(format!("--kmax must be at least 10 n = {}", 10 * self.n)));
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &self,
        system: &str,
        parity: &str,
        quantity: &str,
        method: &str,
        exact: &str,
        values: (f64, f64),
        checked: bool,
    ) -> ReportRow {
        let spec = RowSpec { system, parity, n: self.n, delta: self.stark.delta, quantity, method, exact };
        ReportRow::new(spec, values.0, values.1, checked.then_some(self.tol), units(&self.scales))
    }

    /// Finite-difference energy of the `index`-th level (0-based) at delta.
    fn oracle_energy(&self, system: System, index: usize) -> Result<f64, CliError> {
        let wide = GridSpec::default_for(system, index + 1, &self.scales);
        let grid = GridSpec::new(wide.z_min, wide.z_max, 4001)?;
        let r = fd_eigenvalues_richardson(system, self.stark.delta, &self.scales, &grid, index + 1)?;
        Ok(r.extrapolated[index])
    }

    fn bouncer(&self) -> Result<Report, CliError> {
        self.check()?;
        let n = self.n;
        let delta = self.stark.delta;
        let orders = bouncer::stark_orders(n, &self.scales)?;
        let engine = solve_bouncer(3)?.values_at(0.0);
        let table = table_for(self.kmax)?;
        let zeta = table.zeta(n);
        let sum = second_order_sum_with(&table, SumFamily::Bouncer, n, self.kmax)?;
        let third = third_order_check_with(&table, ThirdOrderSystem::Bouncer, n, self.kmax.min(1000))?;
        let c = |k: usize| linstark::expansion::mpoly::to_f64(&orders.exact[k]);
        let mut rows = vec![
            self.row(
                "bouncer",
                "",
                "c1",
                "expansion_engine",
                &orders.coefficients[0],
                (c(0), engine[0]),
                true,
            ),
            self.row(
                "bouncer",
                "",
                "c2",
                "expansion_engine",
                &orders.coefficients[1],
                (c(1), engine[1]),
                true,
            ),
            self.row(
                "bouncer",
                "",
                "c3",
                "expansion_engine",
                &orders.coefficients[2],
                (c(2), engine[2]),
                true,
            ),
            self.row(
                "bouncer",
                "",
                "c2",
                "perturbation_sum",
                &orders.coefficients[1],
                (c(1), -4.0 * (sum.partial_sum + sum.tail_estimate) / zeta),
                true,
            ),
            self.row(
                "bouncer",
                "",
                "c3",
                "perturbation_sum",
                &orders.coefficients[2],
                (c(2), third.estimate / zeta),
                true,
            ),
        ];
        let exact = bouncer::stark_exact(n, &self.scales, &self.stark)?;
        rows.push(self.row(
            "bouncer",
            "",
            "energy",
            "third_order",
            "",
            (exact, orders.through_third(delta)),
            false,
        ));
        let w = bouncer::wkb_energy(n - 1, &self.scales, &self.stark)?;
        rows.push(self.row("bouncer", "", "energy", "wkb", "", (exact, w), false));
        if self.oracle {
            let fd = self.oracle_energy(System::Bouncer, n - 1)?;
            rows.push(self.row("bouncer", "", "energy", "fd_oracle", "", (exact, fd), true));
        }
        Ok(Report::Rows(rows))
    }

    fn symmetric(&self, parity: Parity) -> Result<Report, CliError> {
        self.check()?;
        let n = self.n;
        let delta = self.stark.delta;
        let p = parity_name(parity);
        let s = &self.scales;
        let series = solve_r(parity, linstark::expansion::ENGINE_MAX_ORDER)?;
        let r2 =
            series.coefficient(2).and_then(|c| c.as_constant()).ok_or_else(|| usage("R2 is not constant"))?;
        let r2_text = format_rational(&r2);
        let r2v = linstark::expansion::mpoly::to_f64(&r2);
        let x = symlin::level(parity, n, s)?.dimensionless_energy;

        let table = table_for(self.kmax)?;
        let family = match parity {
            Parity::Even => SumFamily::SymlinEven,
            Parity::Odd => SumFamily::SymlinOdd,
        };
        let sum = second_order_sum_with(&table, family, n, self.kmax)?;
        let mut rows = vec![self.row(
            "symmetric",
            p,
            "R2",
            "perturbation_sum",
            &r2_text,
            (r2v, -4.0 * (sum.partial_sum + sum.tail_estimate) / x),
            true,
        )];

        let e0 = x * s.e0();
        let second_difference = |h: f64| -> Result<f64, CliError> {
            let up = symlin::solve_perturbed(parity, n, h, s)?.energy;
            let down = symlin::solve_perturbed(parity, n, -h, s)?.energy;
            Ok((up + down - 2.0 * e0) / (2.0 * h * h * e0))
        };
        if delta != 0.0 {
            let d =
                [second_difference(delta)?, second_difference(delta / 2.0)?, second_difference(delta / 4.0)?];
            let r1 = (4.0 * d[1] - d[0]) / 3.0;
            let r2e = (4.0 * d[2] - d[1]) / 3.0;
            let extrapolated = (16.0 * r2e - r1) / 15.0;
            rows.push(self.row("symmetric", p, "R2", "root_solve", &r2_text, (r2v, extrapolated), true));
        }

        let predicted = series_energy(&series, x, delta) * s.e0();
        let root = symlin::solve_perturbed(parity, n, delta, s)?.energy;
        rows.push(self.row("symmetric", p, "energy", "root_solve", "", (predicted, root), true));
        let w = symlin::wkb_energy(symlin::wkb_index(parity, n)?, delta, s)?;
        rows.push(self.row("symmetric", p, "energy", "wkb", "", (predicted, w), false));
        if self.oracle {
            let index = symlin::wkb_index(parity, n)?;
            let fd = self.oracle_energy(System::Symmetric, index)?;
            rows.push(self.row("symmetric", p, "energy", "fd_oracle", "", (predicted, fd), true));
        }
        Ok(Report::Rows(rows))
    }
}

fn series_energy(series: &DeltaSeries, x: f64, delta: f64) -> f64 {
    series.energy(x, delta, series.order())
}

fn expand(system: SystemArg, parity: Option<ParityArg>, order: usize) -> Result<Report, CliError> {
    let series = match (system, parity) {
        (SystemArg::Bouncer, None) => solve_bouncer(order)?,
        (SystemArg::Bouncer, Some(_)) => return Err(usage("--parity does not apply to the bouncer")),
        (SystemArg::Symmetric, Some(p)) => solve_r(p.into(), order)?,
        (SystemArg::Symmetric, None) => return Err(usage("--parity is required for the symmetric well")),
    };
    let entries = (1..=series.order())
        .map(|k| {
            let c = series.coefficient(k).expect("k within order");
            let text = match c.as_constant() {
                Some(q) => format_rational(&q),
                None => c.to_string(),
            };
            (format!("R{k}"), text)
        })
        .collect();
    Ok(Report::Coefficients(Coefficients(entries)))
}

fn sumrule(
    family: FamilyArg,
    n: usize,
    kmax: usize,
    scales: &PhysicalScales,
    tol: f64,
) -> Result<Report, CliError> {
    let (fam, system, parity) = match family {
        FamilyArg::Bouncer => (SumFamily::Bouncer, "bouncer", ""),
        FamilyArg::Even5 => (SumFamily::SymlinEven, "symmetric", "even"),
        FamilyArg::Odd7 => (SumFamily::SymlinOdd, "symmetric", "odd"),
    };
    if n == 0 {
        return Err(linstark::Error::InvalidIndex(0).into());
    }
    let table = table_for(kmax.max(n))?;
    let r = second_order_sum_with(&table, fam, n, kmax)?;
    let spec = RowSpec {
        system,
        parity,
        n,
        delta: 0.0,
        quantity: "sum_rule",
        method: "partial_sum+tail",
        exact: "",
    };
    let mut row = ReportRow::new(spec, r.target, r.partial_sum + r.tail_estimate, Some(tol), units(scales));
    if r.flagged {
        row.passed = Some(false);
    }
    Ok(Report::Rows(vec![row]))
}

fn verify_report(criterion: Option<usize>) -> Result<Report, CliError> {
    let ids: Vec<usize> = match criterion {
        Some(id) if (1..=verify::CRITERIA).contains(&id) => vec![id],
        Some(id) => return Err(usage(format!("criterion must be 1..={}, got {id}", verify::CRITERIA))),
        None => (1..=verify::CRITERIA).collect(),
    };
    let rows = ids
        .into_iter()
        .map(|id| {
            let c = verify::run(id);
            eprintln!("{}", c.summary_line());
            CriterionRow { criterion: c.id, title: c.title, passed: c.passed, details: c.details.join("; ") }
        })
        .collect();
    Ok(Report::Criteria(rows))
}
