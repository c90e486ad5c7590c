use std::fmt;

use hawksteer::hawking::{
    closed_form_from_amplitudes, critical_temperatures, monogamy_residuals, pipeline_all, temperature_grid,
    HawkingAmplitudes,
};
use hawksteer::qstate::{bloch_coefficients, partial_trace};
use hawksteer::steering_ent::{concurrence_oracle, concurrence_xstate};
use hawksteer::steering_entropy::{entropy_sum_closed_form, entropy_sum_oracle, OracleCalibration};
use hawksteer::{Direction, GridKind, Pair, Params, Wide, XState};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::Result;

pub const RANDOM_STATES: usize = 1000;
pub const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<32} {:.3e} (tolerance {:.0e})", self.name, self.value, self.tolerance)
    }
}

fn grid() -> Result<Vec<f64>> {
    Ok(temperature_grid(1e-2, 1e4, 200, GridKind::Log)?)
}

/// Random X-states plus the three reduced-state families on the standard grid.
pub fn oracle_population() -> Result<Vec<XState>> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut states: Vec<XState> = (0..RANDOM_STATES).map(|_| XState::random(&mut rng)).collect();
    for t in grid()? {
        let full = hawksteer::hawking::tripartite_state(&HawkingAmplitudes::at_temperature_ratio(t)?)?;
        for pair in Pair::ALL {
            states.push(partial_trace(&full, pair.modes())?);
        }
    }
    Ok(states)
}

pub fn concurrence_oracle_gap(states: &[XState]) -> Result<f64> {
    let mut worst = 0.0f64;
    for s in states {
        let wide = concurrence_oracle(&s.embed_dense()?.cast::<Wide>())?.hi();
        worst = worst.max((concurrence_xstate(s)? - wide).abs());
    }
    Ok(worst)
}

pub fn entropy_oracle_gap(states: &[XState]) -> Result<f64> {
    let cal = OracleCalibration::<f64>::two_point()?;
    let mut worst = 0.0f64;
    for s in states {
        let (b, d) = (bloch_coefficients(s)?, s.embed_dense()?);
        for dir in [Direction::AToB, Direction::BToA] {
            let gap = entropy_sum_closed_form(&b, dir)? - cal.apply(entropy_sum_oracle(&d, dir)?);
            worst = worst.max(gap.abs());
        }
    }
    Ok(worst)
}

pub fn pipeline_gap() -> Result<f64> {
    let mut worst = 0.0f64;
    for t in grid()? {
        let a = HawkingAmplitudes::at_temperature_ratio(t)?;
        for (pair, piped) in Pair::ALL.into_iter().zip(pipeline_all(&a)?) {
            let closed = closed_form_from_amplitudes(&a, pair);
            for (x, y) in closed.values().iter().zip(piped.values()) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    Ok(worst)
}

pub fn monogamy_gap() -> Result<f64> {
    let mut worst = 0.0f64;
    for t in grid()? {
        worst = worst.max(monogamy_residuals(&Params::new(t, 1.0)?)?.max_abs());
    }
    Ok(worst)
}

pub fn run() -> Result<Vec<Check>> {
    let states = oracle_population()?;
    let mut checks = vec![
        Check { name: "concurrence oracle", value: concurrence_oracle_gap(&states)?, tolerance: 1e-10 },
        Check { name: "entropy oracle (calibrated)", value: entropy_oracle_gap(&states)?, tolerance: 1e-10 },
        Check { name: "pipeline vs closed forms", value: pipeline_gap()?, tolerance: 1e-10 },
        Check { name: "monogamy residuals", value: monogamy_gap()?, tolerance: 1e-12 },
    ];
    let crit = critical_temperatures(1.0)?;
    for c in crit.entries() {
        let tolerance = if c.closed_form.is_some() { 1e-6 } else { 1e-3 };
        if c.closed_form.is_none() && c.reference.is_none() {
            continue;
        }
        let value = c.discrepancy().unwrap_or(f64::INFINITY);
        checks.push(Check { name: c.name, value, tolerance });
    }
    Ok(checks)
}
