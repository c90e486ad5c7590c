use std::fmt::Write as _;

use hawksteer::hawking::{critical_temperatures, monogamy_residuals, CriticalTemperature};
use hawksteer::Params;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::sweep::format_float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub const MONOGAMY_TOL: f64 = 1e-12;
pub const NOT_APPLICABLE: &str = "n/a (T <= omega/ln(sqrt(3)))";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalRow {
    pub name: &'static str,
    pub closed_form: Option<f64>,
    pub reference: Option<f64>,
    pub numeric: Option<f64>,
    pub t_over_omega: Option<f64>,
    pub discrepancy: Option<f64>,
    pub error: Option<String>,
}

impl CriticalRow {
    fn new(c: &CriticalTemperature, omega: f64) -> Self {
        let numeric = c.numeric.as_ref().ok().copied();
        CriticalRow {
            name: c.name,
            closed_form: c.closed_form,
            reference: c.reference,
            numeric,
            t_over_omega: numeric.map(|t| t / omega),
            discrepancy: c.discrepancy(),
            error: c.numeric.as_ref().err().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalReport {
    pub omega: f64,
    pub rows: Vec<CriticalRow>,
}

impl CriticalReport {
    pub fn failures(&self) -> impl Iterator<Item = &CriticalRow> {
        self.rows.iter().filter(|r| r.error.is_some())
    }
}

pub fn critical_report(omega: f64) -> Result<CriticalReport> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(CliError::Usage(format!("--omega must be positive and finite, got {omega}")));
    }
    let crit = critical_temperatures(omega)?;
    Ok(CriticalReport { omega, rows: crit.entries().iter().map(|c| CriticalRow::new(c, omega)).collect() })
}

fn cell(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

fn text_cell(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_else(|| "-".into())
}

pub fn render_critical(report: &CriticalReport, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(report)?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("name,closed_form,reference,numeric,t_over_omega,discrepancy,error\n");
            for r in &report.rows {
                let error = r.error.as_deref().unwrap_or("").replace(',', ";");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.name,
                    cell(r.closed_form),
                    cell(r.reference),
                    cell(r.numeric),
                    cell(r.t_over_omega),
                    cell(r.discrepancy),
                    error
                );
            }
        }
        Format::Text => {
            let _ = writeln!(out, "critical temperatures (omega = {})", format_float(report.omega));
            let _ = writeln!(
                out,
                "{:<28} {:>22} {:>10} {:>22} {:>22} {:>12}",
                "name", "closed_form", "reference", "numeric", "T/omega", "discrepancy"
            );
            for r in &report.rows {
                let numeric = match (&r.numeric, &r.error) {
                    (Some(x), _) => format_float(*x),
                    (None, Some(_)) => "FAILED".into(),
                    (None, None) => "-".into(),
                };
                let _ = writeln!(
                    out,
                    "{:<28} {:>22} {:>10} {:>22} {:>22} {:>12}",
                    r.name,
                    text_cell(r.closed_form),
                    text_cell(r.reference),
                    numeric,
                    text_cell(r.t_over_omega),
                    r.discrepancy.map(|d| format!("{d:.3e}")).unwrap_or_else(|| "-".into()),
                );
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonogamyRow {
    pub t: f64,
    pub t_over_omega: f64,
    /// `None` where the identity is not defined at this temperature.
    pub residuals: [Option<f64>; 4],
    pub max_abs: f64,
    pub pass: bool,
}

pub const RESIDUAL_NAMES: [&str; 4] = ["difference_from_a", "sum_from_a", "difference_to_a", "sum_to_a"];

pub fn monogamy_rows(omega: f64, temperatures: &[f64]) -> Result<Vec<MonogamyRow>> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(CliError::Usage(format!("--omega must be positive and finite, got {omega}")));
    }
    if temperatures.is_empty() {
        return Err(CliError::Usage("--t needs at least one temperature".into()));
    }
    temperatures
        .iter()
        .map(|&t| {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("temperatures must be positive and finite, got {t}")));
            }
            let r = monogamy_residuals(&Params::new(t, omega)?)?;
            let max_abs = r.max_abs();
            Ok(MonogamyRow { t, t_over_omega: t / omega, residuals: r.all(), max_abs, pass: max_abs <= MONOGAMY_TOL })
        })
        .collect()
}

pub fn render_monogamy(rows: &[MonogamyRow], format: Format) -> Result<String> {
    let mut out = String::new();
    let verdict = |pass: bool| if pass { "pass" } else { "FAIL" };
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(rows)?;
            out.push('\n');
        }
        Format::Csv => {
            let _ = writeln!(out, "t,t_over_omega,{},max_abs,status", RESIDUAL_NAMES.join(","));
            for r in rows {
                let res: Vec<String> = r.residuals.iter().map(|x| cell(*x)).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_float(r.t),
                    format_float(r.t_over_omega),
                    res.join(","),
                    format_float(r.max_abs),
                    verdict(r.pass)
                );
            }
        }
        Format::Text => {
            for r in rows {
                let _ = writeln!(out, "T = {} (T/omega = {})", format_float(r.t), format_float(r.t_over_omega));
                for (name, x) in RESIDUAL_NAMES.iter().zip(r.residuals) {
                    let shown = x.map(|v| format!("{v:+.3e}")).unwrap_or_else(|| NOT_APPLICABLE.into());
                    let _ = writeln!(out, "  {name:<18} {shown}");
                }
                let _ = writeln!(out, "  {:<18} {} (tolerance {MONOGAMY_TOL:e})", "status", verdict(r.pass));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_threshold_marks_last_two_residuals() {
        let rows = monogamy_rows(1.0, &[0.5, 5.0]).unwrap();
        assert_eq!(rows[0].residuals[2], None);
        assert!(rows[1].residuals.iter().all(Option::is_some));
        assert!(rows.iter().all(|r| r.pass));
        let text = render_monogamy(&rows, Format::Text).unwrap();
        assert_eq!(text.matches(NOT_APPLICABLE).count(), 2);
    }

    #[test]
    fn negative_temperature_is_a_usage_error() {
        assert!(matches!(monogamy_rows(1.0, &[-1.0]), Err(CliError::Usage(_))));
        assert!(matches!(monogamy_rows(0.0, &[1.0]), Err(CliError::Usage(_))));
    }

    #[test]
    fn critical_rows_cover_all_entries() {
        let r = critical_report(1.0).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert_eq!(r.failures().count(), 0);
        let row = r.rows.iter().find(|r| r.name == "t_birth_ent_abar_to_a").unwrap();
        assert!((row.closed_form.unwrap() - 1.820478453253675).abs() < 1e-12);
        let csv = render_critical(&r, Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 6);
    }
}
