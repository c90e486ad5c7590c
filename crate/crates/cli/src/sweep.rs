use std::io::Write;

use hawksteer::hawking::{closed_form_from_amplitudes, temperature_grid, HawkingAmplitudes};
use hawksteer::{GridKind, Pair};
use rayon::prelude::*;
use rayon::ThreadPool;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measures {
    Entropy,
    Ent,
    Both,
}

impl Measures {
    pub fn entropy(self) -> bool {
        matches!(self, Measures::Entropy | Measures::Both)
    }

    pub fn ent(self) -> bool {
        matches!(self, Measures::Ent | Measures::Both)
    }
}

pub const PAIR_FIELDS: [&str; 7] = ["s_ab", "s_ba", "s_delta", "t_ab", "t_ba", "t_delta", "concurrence"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub omega: f64,
    /// Grid bounds in the same units as `omega`.
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub grid: GridKind,
    pub pairs: Vec<Pair>,
    pub measures: Measures,
}

impl SweepConfig {
    /// The figure preset: linear grid over `[0, 8 omega]`, all pairs.
    pub fn preset(omega: f64) -> Self {
        SweepConfig {
            omega,
            t_min: 0.0,
            t_max: 8.0 * omega,
            steps: 401,
            grid: GridKind::Linear,
            pairs: Pair::ALL.to_vec(),
            measures: Measures::Both,
        }
    }

    /// Pairs in canonical order without repeats.
    pub fn selected_pairs(&self) -> Vec<Pair> {
        Pair::ALL.into_iter().filter(|p| self.pairs.contains(p)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(CliError::Usage(format!("--omega must be positive and finite, got {}", self.omega)));
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite()) || self.t_min < 0.0 {
            return Err(CliError::Usage("temperatures must be finite and non-negative".into()));
        }
        if self.t_min >= self.t_max {
            return Err(CliError::Usage(format!("--t-min ({}) must be below --t-max ({})", self.t_min, self.t_max)));
        }
        if self.steps < 2 {
            return Err(CliError::Usage(format!("--steps must be at least 2, got {}", self.steps)));
        }
        if self.t_min == 0.0 && self.grid == GridKind::Log {
            return Err(CliError::Usage("--t-min 0 is only allowed with --grid linear".into()));
        }
        if self.pairs.is_empty() {
            return Err(CliError::Usage("--pairs must name at least one pair".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairRecord {
    pub pair: Pair,
    pub s_ab: Option<f64>,
    pub s_ba: Option<f64>,
    pub s_delta: Option<f64>,
    pub t_ab: Option<f64>,
    pub t_ba: Option<f64>,
    pub t_delta: Option<f64>,
    pub concurrence: f64,
}

impl PairRecord {
    pub fn cells(&self) -> [Option<f64>; 7] {
        [self.s_ab, self.s_ba, self.s_delta, self.t_ab, self.t_ba, self.t_delta, Some(self.concurrence)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub t_over_omega: f64,
    pub c_sq: f64,
    pub s_sq: f64,
    pub pairs: Vec<PairRecord>,
}

impl SweepRecord {
    pub fn cells(&self) -> Vec<Option<f64>> {
        let mut out = vec![Some(self.t_over_omega), Some(self.c_sq), Some(self.s_sq)];
        for p in &self.pairs {
            out.extend(p.cells());
        }
        out
    }
}

impl Serialize for SweepRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let names = header(&self.pairs.iter().map(|p| p.pair).collect::<Vec<_>>());
        let mut map = serializer.serialize_map(Some(names.len()))?;
        for (name, cell) in names.iter().zip(self.cells()) {
            map.serialize_entry(name, &cell)?;
        }
        map.end()
    }
}

pub fn header(pairs: &[Pair]) -> Vec<String> {
    let mut out = vec!["t_over_omega".to_string(), "c_sq".to_string(), "s_sq".to_string()];
    for p in pairs {
        out.extend(PAIR_FIELDS.iter().map(|f| format!("{}_{f}", p.label())));
    }
    out
}

/// Shortest decimal that round-trips to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

fn record(cfg: &SweepConfig, pairs: &[Pair], t: f64) -> Result<SweepRecord> {
    let t_over_omega = t / cfg.omega;
    let a = HawkingAmplitudes::<f64>::at_temperature_ratio(t_over_omega)
        .map_err(|source| CliError::GridPoint { t_over_omega, source })?;
    let (entropy, ent) = (cfg.measures.entropy(), cfg.measures.ent());
    let pairs = pairs
        .iter()
        .map(|&pair| {
            let r = closed_form_from_amplitudes(&a, pair);
            PairRecord {
                pair,
                s_ab: entropy.then_some(r.entropy.s_ab),
                s_ba: entropy.then_some(r.entropy.s_ba),
                s_delta: entropy.then_some(r.entropy.delta),
                t_ab: ent.then_some(r.ent.t_ab),
                t_ba: ent.then_some(r.ent.t_ba),
                t_delta: ent.then_some(r.ent.delta),
                concurrence: r.concurrence,
            }
        })
        .collect();
    Ok(SweepRecord { t_over_omega, c_sq: a.c_sq, s_sq: a.s_sq, pairs })
}

/// Evaluates the sweep on `pool`; records come back in grid order.
pub fn run_sweep(cfg: &SweepConfig, pool: &ThreadPool) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let grid = temperature_grid(cfg.t_min, cfg.t_max, cfg.steps, cfg.grid)?;
    let pairs = cfg.selected_pairs();
    pool.install(|| grid.par_iter().map(|&t| record(cfg, &pairs, t)).collect())
}

pub fn write_csv<W: Write>(records: &[SweepRecord], pairs: &[Pair], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header(pairs))?;
    for r in records {
        w.write_record(r.cells().iter().map(|c| c.map(format_float).unwrap_or_default()))?;
    }
    w.flush().map_err(|e| CliError::io("<csv output>", e))?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct SweepDocument<'a> {
    pub omega: f64,
    pub grid: GridKind,
    pub measures: Measures,
    pub pairs: Vec<&'static str>,
    pub records: &'a [SweepRecord],
}

pub fn write_json<W: Write>(cfg: &SweepConfig, records: &[SweepRecord], mut out: W) -> Result<()> {
    let doc = SweepDocument {
        omega: cfg.omega,
        grid: cfg.grid,
        measures: cfg.measures,
        pairs: cfg.selected_pairs().iter().map(|p| p.label()).collect(),
        records,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out).map_err(|e| CliError::io("<json output>", e))?;
    Ok(())
}
