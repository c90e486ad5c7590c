//! The Schwarzschild state family.
//!
//! A Bell pair shared by a freely falling Alice (mode A) and a hovering Bob
//! becomes, in Bob's Schwarzschild modes,
//! `(C|000> + S|011> + |110>)/sqrt2` over modes (A, B, Bbar) with
//! `C = (e^{-w/T} + 1)^{-1/2}` and `S = (e^{w/T} + 1)^{-1/2}`. Every quantity
//! below depends on `w/T` only; temperatures are reported in units of `w`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{bloch_coefficients, partial_trace, DenseHermitianState, Mode};
use crate::roots;
use crate::scalar::Real;
use crate::steering_ent::{concurrence_xstate, steerability_ent, Branch, EntSteeringReport};
use crate::steering_entropy::{normalized_steerability, steerability_entropy, EntropySteeringReport};

/// Threshold a steerability has to exceed to count as born.
pub const BIRTH_THRESHOLD: f64 = 1e-14;
/// Absolute tolerance in `T/w` for births and deaths.
pub const ROOT_TOL: f64 = 1e-12;
/// Absolute tolerance in `T/w` for the peak location.
pub const PEAK_TOL: f64 = 1e-10;
/// Search window for critical temperatures, in units of `w`.
pub const SEARCH_WINDOW: (f64, f64) = (1e-3, 1e4);
const SCAN_POINTS: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HawkingParams<T> {
    temperature: T,
    omega: T,
}

impl<T: Real> HawkingParams<T> {
    pub fn new(temperature: T, omega: T) -> Result<Self> {
        positive("temperature", temperature)?;
        positive("omega", omega)?;
        Ok(Self { temperature, omega })
    }

    pub fn temperature(&self) -> T {
        self.temperature
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// Black-hole mass `M = 1 / (8 pi T)`.
    pub fn mass(&self) -> T {
        T::one() / (T::lit(8.0) * T::PI() * self.temperature)
    }

    /// `w / T`.
    pub fn ratio(&self) -> T {
        self.omega / self.temperature
    }

    pub fn amplitudes(&self) -> HawkingAmplitudes<T> {
        amplitudes(self)
    }
}

fn positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { name, value: value.to_f64_lossy() })
    }
}

/// Amplitude pair `(C, S)` of the vacuum map, with their squares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HawkingAmplitudes<T> {
    pub c_amp: T,
    pub s_amp: T,
    pub c_sq: T,
    pub s_sq: T,
}

impl<T: Real> HawkingAmplitudes<T> {
    /// Amplitudes at `w/T = ratio`. Written in terms of `e^{-ratio}` so that
    /// no intermediate overflows for large ratios.
    pub fn from_ratio(ratio: T) -> Result<Self> {
        positive("omega/T", ratio)?;
        let one = T::one();
        let u = (-ratio).exp();
        let denom = one + u;
        let root = denom.sqrt();
        Ok(Self { c_amp: one / root, s_amp: (-ratio * T::lit(0.5)).exp() / root, c_sq: one / denom, s_sq: u / denom })
    }

    /// The `T -> 0` limit, `(C, S) = (1, 0)`.
    pub fn frozen() -> Self {
        let (one, zero) = (T::one(), T::zero());
        Self { c_amp: one, s_amp: zero, c_sq: one, s_sq: zero }
    }

    /// Amplitudes at `T/w = t_over_omega`, mapping zero to [`frozen`](Self::frozen).
    pub fn at_temperature_ratio(t_over_omega: T) -> Result<Self> {
        if t_over_omega == T::zero() {
            Ok(Self::frozen())
        } else {
            positive("T/omega", t_over_omega)?;
            Self::from_ratio(T::one() / t_over_omega)
        }
    }
}

pub fn amplitudes<T: Real>(p: &HawkingParams<T>) -> HawkingAmplitudes<T> {
    HawkingAmplitudes::from_ratio(p.ratio()).expect("validated parameters give a positive ratio")
}

/// Pure state `v v^T / 2` with `v = C|000> + S|011> + |110>`.
pub fn tripartite_state<T: Real>(a: &HawkingAmplitudes<T>) -> Result<DenseHermitianState<T>> {
    let z = Complex::new(T::zero(), T::zero());
    let mut v = vec![z; 8];
    v[0b000] = Complex::new(a.c_amp, T::zero());
    v[0b011] = Complex::new(a.s_amp, T::zero());
    v[0b110] = Complex::new(T::one(), T::zero());
    DenseHermitianState::projector(&v, T::lit(0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    /// Alice and Bob.
    AB,
    /// Alice and Anti-Bob.
    ABbar,
    /// Bob and Anti-Bob.
    BBbar,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::ABbar, Pair::BBbar];

    pub fn modes(self) -> [Mode; 2] {
        match self {
            Pair::AB => [Mode::A, Mode::B],
            Pair::ABbar => [Mode::A, Mode::BBar],
            Pair::BBbar => [Mode::B, Mode::BBar],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::AB => "AB",
            Pair::ABbar => "ABbar",
            Pair::BBbar => "BBbar",
        }
    }
}

impl std::str::FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "AB" => Ok(Pair::AB),
            "ABbar" => Ok(Pair::ABbar),
            "BBbar" => Ok(Pair::BBbar),
            other => Err(format!("unknown pair `{other}` (expected AB, ABbar or BBbar)")),
        }
    }
}

/// Both steering measures and the concurrence of one bipartition. `*_ab`
/// fields mean first mode of the pair steering the second.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BipartitionReport<T> {
    pub pair: Pair,
    pub entropy: EntropySteeringReport<T>,
    pub ent: EntSteeringReport<T>,
    pub concurrence: T,
}

impl<T: Real> BipartitionReport<T> {
    /// Numeric fields in a fixed order:
    /// `i_ab, i_ba, s_ab, s_ba, s_delta, t_ab, t_ba, t_delta, concurrence`.
    pub fn values(&self) -> [T; 9] {
        [
            self.entropy.i_ab,
            self.entropy.i_ba,
            self.entropy.s_ab,
            self.entropy.s_ba,
            self.entropy.delta,
            self.ent.t_ab,
            self.ent.t_ba,
            self.ent.delta,
            self.concurrence,
        ]
    }

    pub const FIELD_NAMES: [&'static str; 9] =
        ["i_ab", "i_ba", "s_ab", "s_ba", "s_delta", "t_ab", "t_ba", "t_delta", "concurrence"];
}

/// The analytic steering expressions for the three bipartitions, evaluated
/// directly in `C` and `S`.
pub fn closed_form_report<T: Real>(p: &HawkingParams<T>, pair: Pair) -> BipartitionReport<T> {
    closed_form_from_amplitudes(&p.amplitudes(), pair)
}

pub fn closed_form_from_amplitudes<T: Real>(a: &HawkingAmplitudes<T>, pair: Pair) -> BipartitionReport<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let quarter = T::lit(0.25);
    let inv_sqrt3 = one / T::lit(3.0).sqrt();
    let (c, s, c2, s2) = (a.c_amp, a.s_amp, a.c_sq, a.s_sq);
    let pair_log = |x: T| two * x.pair_xlog2x();
    // C^2 log C^2 through S^2, which is known to full relative precision.
    let c2_log = (-s2).xlog2x_1p();

    let (raw_ab, raw_ba) = match pair {
        Pair::AB => {
            let raw_ab = quarter * (pair_log(c) + c2_log + s2.xlog2x());
            // raw_ab - raw_ba = [C^2 log C^2 + (1 + S^2) log(1 + S^2)] / 4, which
            // is O(S^4) at low T; evaluate it on its own so the difference
            // keeps its sign.
            let gap = s2.pair_xlog2x();
            (raw_ab, raw_ab - quarter * gap.max(T::zero()))
        }
        Pair::ABbar => {
            (quarter * (pair_log(s) + c2_log + s2.xlog2x()), quarter * (pair_log(s) - (one + c2).xlog2x() + c2_log))
        }
        Pair::BBbar => (
            quarter * (pair_log(c * s) - s2.xlog2x_1p() + s2.xlog2x()),
            quarter * (pair_log(c * s) - (one + c2).xlog2x() + c2_log),
        ),
    };
    let i_ab = two + T::lit(4.0) * raw_ab;
    let i_ba = two + T::lit(4.0) * raw_ba;
    let (s_ab, s_ba) = (normalized_steerability(i_ab), normalized_steerability(i_ba));
    let entropy = EntropySteeringReport { i_ab, i_ba, s_ab, s_ba, delta: (s_ab - s_ba).abs() };

    let (t_ab, t_ba, branch, concurrence) = match pair {
        Pair::AB => (c2 - inv_sqrt3 * c2 * s2, c2 - inv_sqrt3 * s2, Branch::Corner, c),
        Pair::ABbar => (s2 * (one - inv_sqrt3 * c2), s2 - inv_sqrt3 * c2, Branch::Inner, s),
        Pair::BBbar => (s2 * (c2 - inv_sqrt3), c2 * (s2 - inv_sqrt3), Branch::Corner, c * s),
    };
    let (t_ab, t_ba) = (t_ab.max(T::zero()), t_ba.max(T::zero()));
    let ent = EntSteeringReport { t_ab, t_ba, delta: (t_ab - t_ba).abs(), branch_ab: branch, branch_ba: branch };
    BipartitionReport { pair, entropy, ent, concurrence }
}

/// Generic route: tripartite density matrix, partial trace, then the X-state
/// steering and concurrence routines.
pub fn pipeline_report<T: Real>(p: &HawkingParams<T>, pair: Pair) -> Result<BipartitionReport<T>> {
    pipeline_from_amplitudes(&p.amplitudes(), pair)
}

pub fn pipeline_from_amplitudes<T: Real>(a: &HawkingAmplitudes<T>, pair: Pair) -> Result<BipartitionReport<T>> {
    reduced_report(&tripartite_state(a)?, pair)
}

/// Pipeline reports for all three pairs from a single tripartite state.
pub fn pipeline_all<T: Real>(a: &HawkingAmplitudes<T>) -> Result<[BipartitionReport<T>; 3]> {
    let full = tripartite_state(a)?;
    Ok([reduced_report(&full, Pair::AB)?, reduced_report(&full, Pair::ABbar)?, reduced_report(&full, Pair::BBbar)?])
}

fn reduced_report<T: Real>(full: &DenseHermitianState<T>, pair: Pair) -> Result<BipartitionReport<T>> {
    let reduced = partial_trace(full, pair.modes())?;
    Ok(BipartitionReport {
        pair,
        entropy: steerability_entropy(&bloch_coefficients(&reduced)?)?,
        ent: steerability_ent(&reduced)?,
        concurrence: concurrence_xstate(&reduced)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Linear,
    Log,
}

/// `steps` values of `T/w` from `t_min` to `t_max` inclusive.
pub fn temperature_grid(t_min: f64, t_max: f64, steps: usize, kind: GridKind) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidGrid("steps must be at least 2"));
    }
    if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max {
        return Err(Error::InvalidGrid("t_min must be smaller than t_max"));
    }
    if t_min < 0.0 {
        return Err(Error::InvalidGrid("temperatures must be non-negative"));
    }
    let last = (steps - 1) as f64;
    let grid = match kind {
        GridKind::Linear => (0..steps).map(|i| t_min + (t_max - t_min) * (i as f64 / last)).collect::<Vec<_>>(),
        GridKind::Log => {
            if t_min <= 0.0 {
                return Err(Error::InvalidGrid("a log grid needs t_min > 0"));
            }
            let (a, b) = (t_min.ln(), t_max.ln());
            (0..steps).map(|i| (a + (b - a) * (i as f64 / last)).exp()).collect()
        }
    };
    let mut grid = grid;
    grid[0] = t_min;
    grid[steps - 1] = t_max;
    Ok(grid)
}

/// A critical temperature found twice: analytically where a formula exists
/// and numerically by bracketing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalTemperature {
    pub name: &'static str,
    /// Exact expression, in the same units as `numeric`.
    pub closed_form: Option<f64>,
    /// Quoted approximate value when no closed form exists.
    pub reference: Option<f64>,
    pub numeric: std::result::Result<f64, Error>,
}

impl CriticalTemperature {
    /// Relative difference between the numeric value and the closed form (or
    /// the quoted reference when there is no closed form).
    pub fn discrepancy(&self) -> Option<f64> {
        let target = self.closed_form.or(self.reference)?;
        let numeric = self.numeric.as_ref().ok()?;
        Some((numeric - target).abs() / target.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalTemperatures {
    pub omega: f64,
    /// Birth of `S^{A -> Bbar}`.
    pub t_birth_entropy_a_to_abar: CriticalTemperature,
    /// Birth of `S^{Bbar -> A}`; quoted as about `5.8021 w`.
    pub t_birth_entropy_abar_to_a: CriticalTemperature,
    /// Birth of `T^{Bbar -> A}` at `w / ln sqrt3`.
    pub t_birth_ent_abar_to_a: CriticalTemperature,
    /// Maximum of `T^{B -> Bbar}` at `w / ln(2 + sqrt3)`.
    pub t_peak_bbbar: CriticalTemperature,
    /// Sudden death of `T^{B -> Bbar}` at `-w / ln(sqrt3 - 1)`.
    pub t_death_bbbar: CriticalTemperature,
}

impl CriticalTemperatures {
    pub fn entries(&self) -> [&CriticalTemperature; 5] {
        [
            &self.t_birth_entropy_a_to_abar,
            &self.t_birth_entropy_abar_to_a,
            &self.t_birth_ent_abar_to_a,
            &self.t_peak_bbbar,
            &self.t_death_bbbar,
        ]
    }
}

/// Closed-form steerability at `T/w = tau`; the scan functions below work in
/// units of `w`.
fn steer_at(tau: f64, pair: Pair, pick: fn(&BipartitionReport<f64>) -> f64) -> f64 {
    match HawkingAmplitudes::from_ratio(1.0 / tau) {
        Ok(a) => pick(&closed_form_from_amplitudes(&a, pair)),
        Err(_) => f64::NAN,
    }
}

fn scan_grid() -> Vec<f64> {
    temperature_grid(SEARCH_WINDOW.0, SEARCH_WINDOW.1, SCAN_POINTS, GridKind::Log).expect("static grid")
}

fn birth(quantity: &'static str, pair: Pair, pick: fn(&BipartitionReport<f64>) -> f64) -> Result<f64> {
    let grid = scan_grid();
    let g = |tau: f64| steer_at(tau, pair, pick) - BIRTH_THRESHOLD;
    let values: Vec<f64> = grid.iter().map(|&t| g(t)).collect();
    let i = roots::first_upcrossing(&values).ok_or(Error::BracketFailure {
        quantity,
        lo: SEARCH_WINDOW.0,
        hi: SEARCH_WINDOW.1,
    })?;
    Ok(roots::bisect(g, grid[i], grid[i + 1], ROOT_TOL))
}

fn death(quantity: &'static str, pair: Pair, pick: fn(&BipartitionReport<f64>) -> f64) -> Result<f64> {
    let grid = scan_grid();
    let g = |tau: f64| steer_at(tau, pair, pick) - BIRTH_THRESHOLD;
    let values: Vec<f64> = grid.iter().map(|&t| g(t)).collect();
    let i = roots::last_downcrossing(&values).ok_or(Error::BracketFailure {
        quantity,
        lo: SEARCH_WINDOW.0,
        hi: SEARCH_WINDOW.1,
    })?;
    Ok(roots::bisect(g, grid[i], grid[i + 1], ROOT_TOL))
}

fn peak(quantity: &'static str, pair: Pair, pick: fn(&BipartitionReport<f64>) -> f64) -> Result<f64> {
    let grid = scan_grid();
    let f = |tau: f64| steer_at(tau, pair, pick);
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let (i, &best) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("non-empty grid");
    if best.is_nan() || best <= 0.0 || i == 0 || i + 1 == grid.len() {
        return Err(Error::BracketFailure { quantity, lo: SEARCH_WINDOW.0, hi: SEARCH_WINDOW.1 });
    }
    Ok(roots::golden_max(f, grid[i - 1], grid[i + 1], PEAK_TOL))
}

/// Quoted location of the entropy-based birth of `Bbar -> A` steering, in
/// units of `w`.
pub const QUOTED_BIRTH_ENTROPY_ABAR_TO_A: f64 = 5.8021;

/// The five critical temperatures for mode frequency `omega`.
pub fn critical_temperatures(omega: f64) -> Result<CriticalTemperatures> {
    positive("omega", omega)?;
    let sqrt3 = 3f64.sqrt();
    let scale = |r: Result<f64>| r.map(|tau| tau * omega);
    let entry = |name, closed: Option<f64>, reference: Option<f64>, numeric: Result<f64>| CriticalTemperature {
        name,
        closed_form: closed.map(|x| x * omega),
        reference: reference.map(|x| x * omega),
        numeric: scale(numeric),
    };
    let s_ab = |r: &BipartitionReport<f64>| r.entropy.s_ab;
    let s_ba = |r: &BipartitionReport<f64>| r.entropy.s_ba;
    let t_ab = |r: &BipartitionReport<f64>| r.ent.t_ab;
    let t_ba = |r: &BipartitionReport<f64>| r.ent.t_ba;

    Ok(CriticalTemperatures {
        omega,
        t_birth_entropy_a_to_abar: entry(
            "t_birth_entropy_a_to_abar",
            None,
            None,
            birth("S^{A->Bbar}", Pair::ABbar, s_ab),
        ),
        t_birth_entropy_abar_to_a: entry(
            "t_birth_entropy_abar_to_a",
            None,
            Some(QUOTED_BIRTH_ENTROPY_ABAR_TO_A),
            birth("S^{Bbar->A}", Pair::ABbar, s_ba),
        ),
        t_birth_ent_abar_to_a: entry(
            "t_birth_ent_abar_to_a",
            Some(1.0 / sqrt3.ln()),
            None,
            birth("T^{Bbar->A}", Pair::ABbar, t_ba),
        ),
        t_peak_bbbar: entry(
            "t_peak_bbbar",
            Some(1.0 / ((sqrt3 + 1.0).ln() - (sqrt3 - 1.0).ln())),
            None,
            peak("T^{B->Bbar}", Pair::BBbar, t_ab),
        ),
        t_death_bbbar: entry(
            "t_death_bbbar",
            Some(-1.0 / (sqrt3 - 1.0).ln()),
            None,
            death("T^{B->Bbar}", Pair::BBbar, t_ab),
        ),
    })
}

/// Residuals of the four steering/concurrence identities, all computed from
/// the pipeline route. The last two only hold above `w / ln sqrt3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonogamyResiduals<T> {
    /// `[T^{A->B} - T^{A->Bbar}] - [C^2_AB - C^2_ABbar]`.
    pub difference_from_a: T,
    /// `[T^{A->B} + T^{A->Bbar}] - [C^2_AB + C^2_ABbar - (2/sqrt3) C^2_BBbar]`.
    pub sum_from_a: T,
    /// `(3 - sqrt3)/2 [T^{B->A} - T^{Bbar->A}] - [C^2_AB - C^2_ABbar]`.
    pub difference_to_a: Option<T>,
    /// `(3 + sqrt3)/2 [T^{B->A} + T^{Bbar->A}] - [C^2_AB + C^2_ABbar]`.
    pub sum_to_a: Option<T>,
}

impl<T: Real> MonogamyResiduals<T> {
    pub fn all(&self) -> [Option<T>; 4] {
        [Some(self.difference_from_a), Some(self.sum_from_a), self.difference_to_a, self.sum_to_a]
    }

    pub fn max_abs(&self) -> T {
        self.all().iter().flatten().fold(T::zero(), |m, r| m.max(r.abs()))
    }
}

/// Whether `T > w / ln sqrt3`, i.e. `w/T < ln sqrt3`.
pub fn above_two_way_threshold<T: Real>(p: &HawkingParams<T>) -> bool {
    p.ratio() < T::lit(3.0).sqrt().ln()
}

pub fn monogamy_residuals<T: Real>(p: &HawkingParams<T>) -> Result<MonogamyResiduals<T>> {
    let [ab, abar, bbar] = pipeline_all(&p.amplitudes())?;
    let sqrt3 = T::lit(3.0).sqrt();
    let two = T::lit(2.0);
    let (c_ab, c_abar, c_bbar) =
        (ab.concurrence * ab.concurrence, abar.concurrence * abar.concurrence, bbar.concurrence * bbar.concurrence);
    let applicable = above_two_way_threshold(p);
    Ok(MonogamyResiduals {
        difference_from_a: (ab.ent.t_ab - abar.ent.t_ab) - (c_ab - c_abar),
        sum_from_a: (ab.ent.t_ab + abar.ent.t_ab) - (c_ab + c_abar - two / sqrt3 * c_bbar),
        difference_to_a: applicable
            .then(|| (T::lit(3.0) - sqrt3) / two * (ab.ent.t_ba - abar.ent.t_ba) - (c_ab - c_abar)),
        sum_to_a: applicable.then(|| (T::lit(3.0) + sqrt3) / two * (ab.ent.t_ba + abar.ent.t_ba) - (c_ab + c_abar)),
    })
}

/// Fermi-Dirac occupation `1 / (e^{w/T} + 1)` seen by the hovering observer.
pub fn fermi_dirac_occupation(ratio: f64) -> f64 {
    if ratio > 700.0 {
        (-ratio).exp()
    } else {
        1.0 / (ratio.exp() + 1.0)
    }
}

/// `T/w` above which `Bbar -> A` entanglement-based steering exists.
pub fn two_way_threshold() -> f64 {
    1.0 / 3f64.sqrt().ln()
}
