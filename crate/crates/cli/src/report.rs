use std::io::Write;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::CliError;

/// Rounds to 15 significant digits so CSV and JSON print the same value.
pub fn sig15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

/// Shortest round-trip text, in exponent form for very small or large magnitudes.
pub fn csv_float(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub system: String,
    pub parity: String,
    pub n: usize,
    pub delta: f64,
    pub quantity: String,
    pub analytic_value: f64,
    pub comparison_value: f64,
    pub method: String,
    pub abs_error: f64,
    pub rel_error: f64,
    /// Exact rational form of the analytic value, "p/q", when known.
    pub exact: String,
    /// None for informational rows that do not affect the exit code.
    pub tolerance: Option<f64>,
    pub passed: Option<bool>,
    pub rho: f64,
    pub e0: f64,
}

pub struct RowSpec<'a> {
    pub system: &'a str,
    pub parity: &'a str,
    pub n: usize,
    pub delta: f64,
    pub quantity: &'a str,
    pub method: &'a str,
    pub exact: &'a str,
}

impl ReportRow {
    pub fn new(
        spec: RowSpec<'_>,
        analytic: f64,
        comparison: f64,
        tolerance: Option<f64>,
        units: (f64, f64),
    ) -> Self {
        let abs_error = (analytic - comparison).abs();
        // relative to the analytic value, falling back to absolute at zero
        let rel_error = if analytic == 0.0 { abs_error } else { abs_error / analytic.abs() };
        ReportRow {
            system: spec.system.into(),
            parity: spec.parity.into(),
            n: spec.n,
            delta: sig15(spec.delta),
            quantity: spec.quantity.into(),
            analytic_value: sig15(analytic),
            comparison_value: sig15(comparison),
            method: spec.method.into(),
            abs_error: sig15(abs_error),
            rel_error: sig15(rel_error),
            exact: spec.exact.into(),
            tolerance,
            passed: tolerance.map(|t| rel_error <= t),
            rho: sig15(units.0),
            e0: sig15(units.1),
        }
    }
}

/// Shift coefficients keyed R1, R2, ... in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients(pub Vec<(String, String)>);

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionRow {
    pub criterion: usize,
    pub title: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Rows(Vec<ReportRow>),
    Coefficients(Coefficients),
    Criteria(Vec<CriterionRow>),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Rows(rows) => rows.iter().all(|r| r.passed != Some(false)),
            Report::Coefficients(_) => true,
            Report::Criteria(rows) => rows.iter().all(|r| r.passed),
        }
    }

    pub fn write_json(&self, out: &mut impl Write) -> Result<(), CliError> {
        match self {
            Report::Rows(rows) => serde_json::to_writer_pretty(&mut *out, rows)?,
            Report::Coefficients(c) => serde_json::to_writer(&mut *out, c)?,
            Report::Criteria(rows) => serde_json::to_writer_pretty(&mut *out, rows)?,
        }
        writeln!(out)?;
        Ok(())
    }

    pub fn write_csv(&self, out: &mut impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            Report::Rows(rows) => {
                if rows.is_empty() {
                    return Ok(());
                }
                w.write_record([
                    "system",
                    "parity",
                    "n",
                    "delta",
                    "quantity",
                    "analytic_value",
                    "comparison_value",
                    "method",
                    "abs_error",
                    "rel_error",
                    "exact",
                    "tolerance",
                    "passed",
                    "rho",
                    "e0",
                ])?;
                for r in rows {
                    w.write_record([
                        r.system.clone(),
                        r.parity.clone(),
                        r.n.to_string(),
                        csv_float(r.delta),
                        r.quantity.clone(),
                        csv_float(r.analytic_value),
                        csv_float(r.comparison_value),
                        r.method.clone(),
                        csv_float(r.abs_error),
                        csv_float(r.rel_error),
                        r.exact.clone(),
                        r.tolerance.map(csv_float).unwrap_or_default(),
                        r.passed.map(|p| p.to_string()).unwrap_or_default(),
                        csv_float(r.rho),
                        csv_float(r.e0),
                    ])?;
                }
            }
            Report::Coefficients(c) => {
                w.write_record(["coefficient", "value"])?;
                for (k, v) in &c.0 {
                    w.write_record([k, v])?;
                }
            }
            Report::Criteria(rows) => {
                for r in rows {
                    w.serialize(r)?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(sig15(2.338107410459767), 2.33810741045977);
        assert_eq!(sig15(-1.0 / 3.0).to_string(), "-0.333333333333333");
        assert_eq!(sig15(0.0), 0.0);
    }

    #[test]
    fn csv_floats() {
        assert_eq!(csv_float(1.10436158387017e-5), "1.10436158387017e-5");
        assert_eq!(csv_float(0.1), "0.1");
        assert_eq!(csv_float(0.0), "0.0");
        assert_eq!(csv_float(-2.5e20), "-2.5e20");
    }

    #[test]
    fn zero_analytic_uses_absolute_error() {
        let spec =
            RowSpec { system: "s", parity: "", n: 1, delta: 0.0, quantity: "q", method: "m", exact: "0" };
        let r = ReportRow::new(spec, 0.0, 1e-9, Some(1e-6), (1.0, 1.0));
        assert_eq!(r.rel_error, 1e-9);
        assert_eq!(r.passed, Some(true));
    }
}
