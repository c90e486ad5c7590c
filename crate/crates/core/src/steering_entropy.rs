//! Steering quantified through the entropic uncertainty relation for the
//! three Pauli observables.
//!
//! Two quantities share the name "I" here. The measured one is the sum of
//! conditional Shannon entropies `H(s_x^B|s_x^A) + H(s_y^B|s_y^A) + H(s_z^B|s_z^A)`
//! (bounded below by 2 without steering). The closed-form one used for the
//! steerability is `I = 6 - 2 * (entropy sum)`, so that `I = 6` for a Bell
//! state and `I = 0` for the maximally mixed state. [`OracleCalibration`]
//! records that relation; it is re-derived from the Bell and maximally mixed
//! states in the tests.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qstate::{BlochXCoefficients, DenseHermitianState, STATE_TOL};
use crate::scalar::Real;

/// Normalization constant of the steerability.
pub const I_MAX: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// First qubit steers the second.
    AToB,
    /// Second qubit steers the first.
    BToA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropySteeringReport<T> {
    /// Closed-form `I` for the first-to-second direction (bits).
    pub i_ab: T,
    pub i_ba: T,
    pub s_ab: T,
    pub s_ba: T,
    pub delta: T,
}

/// Affine map taking the measured entropy sum to the closed-form `I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCalibration<T> {
    pub slope: T,
    pub offset: T,
}

impl<T: Real> OracleCalibration<T> {
    /// `I = 6 - 2 * entropy_sum`.
    pub fn frozen() -> Self {
        Self { slope: T::lit(-2.0), offset: T::lit(6.0) }
    }

    /// Fits the map through the Bell state and the maximally mixed state.
    pub fn two_point() -> Result<Self> {
        use crate::qstate::{bloch_coefficients, TwoQubitXState};
        let bell = TwoQubitXState::<T>::bell();
        let mixed = TwoQubitXState::<T>::maximally_mixed();
        let x0 = entropy_sum_oracle(&bell.embed_dense()?, Direction::AToB)?;
        let x1 = entropy_sum_oracle(&mixed.embed_dense()?, Direction::AToB)?;
        let y0 = entropy_sum_closed_form(&bloch_coefficients(&bell)?, Direction::AToB)?;
        let y1 = entropy_sum_closed_form(&bloch_coefficients(&mixed)?, Direction::AToB)?;
        let slope = (y1 - y0) / (x1 - x0);
        Ok(Self { slope, offset: y0 - slope * x0 })
    }

    pub fn apply(&self, entropy_sum: T) -> T {
        self.offset + self.slope * entropy_sum
    }
}

fn log_arg<T: Real>(term: &'static str, value: T) -> Result<T> {
    if value < -T::lit(STATE_TOL) {
        return Err(Error::CoefficientOutOfRange { term, value: value.to_f64_lossy() });
    }
    Ok(value.max(T::zero()))
}

/// `(1 + x) log(1 + x) + (1 - x) log(1 - x)`.
fn pair_term<T: Real>(term: &'static str, x: T) -> Result<T> {
    let one = T::one();
    log_arg(term, one + x)?;
    log_arg(term, one - x)?;
    Ok(x.pair_xlog2x())
}

/// Closed-form `I` of an X-state from its Bloch coefficients (log base 2).
pub fn entropy_sum_closed_form<T: Real>(b: &BlochXCoefficients<T>, direction: Direction) -> Result<T> {
    let one = T::one();
    let half = T::lit(0.5);
    let BlochXCoefficients { c1, c2, c3, p, q } = *b;

    let (up, down) = (one + c3, one - c3);
    let joint = |term, v| log_arg(term, v).map(T::xlog2x);
    let sum = (joint("1+c3+p+q", up + (p + q))? + joint("1+c3-p-q", up - (p + q))?)
        + (joint("1-c3-p+q", down - (p - q))? + joint("1-c3+p-q", down + (p - q))?);
    let local = match direction {
        Direction::AToB => pair_term("1±p", p)?,
        Direction::BToA => pair_term("1±q", q)?,
    };
    Ok(half * sum + pair_term("1±c1", c1)? + pair_term("1±c2", c2)? - local)
}

fn shannon<T: Real>(probs: &[T]) -> T {
    probs.iter().fold(T::zero(), |acc, &p| acc - p.xlog2x())
}

/// Pauli eigenprojectors `(I ± s_axis) / 2`, as (plus, minus).
fn pauli_projectors<T: Real>(axis: usize) -> [[Complex<T>; 4]; 2] {
    let h = T::lit(0.5);
    let z = T::zero();
    let c = |re: T, im: T| Complex::new(re, im);
    let sigma = match axis {
        0 => [c(z, z), c(T::one(), z), c(T::one(), z), c(z, z)],
        1 => [c(z, z), c(z, -T::one()), c(z, T::one()), c(z, z)],
        _ => [c(T::one(), z), c(z, z), c(z, z), c(-T::one(), z)],
    };
    let id = [c(T::one(), z), c(z, z), c(z, z), c(T::one(), z)];
    let mut plus = [c(z, z); 4];
    let mut minus = [c(z, z); 4];
    for k in 0..4 {
        plus[k] = (id[k] + sigma[k]) * h;
        minus[k] = (id[k] - sigma[k]) * h;
    }
    [plus, minus]
}

/// Sum of the three Pauli conditional entropies measured on a two-qubit
/// state: `H(B|A)` for [`Direction::AToB`], `H(A|B)` otherwise (bits).
pub fn entropy_sum_oracle<T: Real>(d: &DenseHermitianState<T>, direction: Direction) -> Result<T> {
    if d.dim() != 4 {
        return Err(Error::Dimension { expected: 4, actual: d.dim() });
    }
    d.validate().map_err(Error::InvalidState)?;
    let tol = T::lit(STATE_TOL);
    let mut total = T::zero();
    for axis in 0..3 {
        let proj = pauli_projectors::<T>(axis);
        let mut joint = [[T::zero(); 2]; 2];
        for (a, pa) in proj.iter().enumerate() {
            for (b, pb) in proj.iter().enumerate() {
                let op = linalg::kron(pa, 2, pb, 2);
                let p = linalg::trace(&linalg::matmul(d.entries(), &op, 4), 4).re;
                if p < -tol {
                    return Err(Error::CoefficientOutOfRange { term: "joint probability", value: p.to_f64_lossy() });
                }
                joint[a][b] = p.max(T::zero());
            }
        }
        let flat = [joint[0][0], joint[0][1], joint[1][0], joint[1][1]];
        let marginal = match direction {
            Direction::AToB => [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]],
            Direction::BToA => [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]],
        };
        total = total + shannon(&flat) - shannon(&marginal);
    }
    Ok(total)
}

/// `max{0, (I - 2) / (I_max - 2)}`.
pub fn normalized_steerability<T: Real>(i: T) -> T {
    let two = T::lit(2.0);
    ((i - two) / (T::lit(I_MAX) - two)).max(T::zero())
}

pub fn steerability_entropy<T: Real>(b: &BlochXCoefficients<T>) -> Result<EntropySteeringReport<T>> {
    let i_ab = entropy_sum_closed_form(b, Direction::AToB)?;
    let i_ba = entropy_sum_closed_form(b, Direction::BToA)?;
    let s_ab = normalized_steerability(i_ab);
    let s_ba = normalized_steerability(i_ba);
    Ok(EntropySteeringReport { i_ab, i_ba, s_ab, s_ba, delta: (s_ab - s_ba).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{bloch_coefficients, TwoQubitXState};

    type X = TwoQubitXState<f64>;

    fn product_00() -> DenseHermitianState<f64> {
        let mut v = vec![Complex::new(0.0, 0.0); 4];
        v[0] = Complex::new(1.0, 0.0);
        DenseHermitianState::projector(&v, 1.0).unwrap()
    }

    #[test]
    fn closed_form_bell_is_six() {
        let b = bloch_coefficients(&X::bell()).unwrap();
        assert_eq!(entropy_sum_closed_form(&b, Direction::AToB).unwrap(), 6.0);
        assert_eq!(entropy_sum_closed_form(&b, Direction::BToA).unwrap(), 6.0);
    }

    #[test]
    fn closed_form_maximally_mixed_is_zero() {
        let b = bloch_coefficients(&X::maximally_mixed()).unwrap();
        assert_eq!(entropy_sum_closed_form(&b, Direction::AToB).unwrap(), 0.0);
        assert_eq!(entropy_sum_closed_form(&b, Direction::BToA).unwrap(), 0.0);
    }

    #[test]
    fn oracle_reference_states() {
        let bell = X::bell().embed_dense().unwrap();
        assert!(entropy_sum_oracle(&bell, Direction::AToB).unwrap().abs() < 1e-15);
        let mixed = X::maximally_mixed().embed_dense().unwrap();
        assert!((entropy_sum_oracle(&mixed, Direction::AToB).unwrap() - 3.0).abs() < 1e-15);
        assert!((entropy_sum_oracle(&product_00(), Direction::AToB).unwrap() - 2.0).abs() < 1e-15);
        assert!((entropy_sum_oracle(&product_00(), Direction::BToA).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_calibration_matches_frozen_map() {
        let fit = OracleCalibration::<f64>::two_point().unwrap();
        let frozen = OracleCalibration::<f64>::frozen();
        assert!((fit.slope - frozen.slope).abs() < 1e-14);
        assert!((fit.offset - frozen.offset).abs() < 1e-14);
        // identity hypothesis rejected
        assert!((fit.slope - 1.0).abs() > 1.0);
    }

    #[test]
    fn out_of_range_coefficient_errors() {
        let b = BlochXCoefficients { c1: 1.5, c2: 0.0, c3: 0.0, p: 0.0, q: 0.0 };
        assert!(matches!(entropy_sum_closed_form(&b, Direction::AToB), Err(Error::CoefficientOutOfRange { .. })));
    }

    #[test]
    fn bell_steerability_is_one() {
        let r = steerability_entropy(&bloch_coefficients(&X::bell()).unwrap()).unwrap();
        assert_eq!((r.s_ab, r.s_ba, r.delta), (1.0, 1.0, 0.0));
    }

    #[test]
    fn diagonal_states_do_not_steer() {
        let s = X::new(0.4, 0.1, 0.2, 0.3, 0.0, 0.0);
        let r = steerability_entropy(&bloch_coefficients(&s).unwrap()).unwrap();
        assert_eq!((r.s_ab, r.s_ba), (0.0, 0.0));
    }

    #[test]
    fn works_in_single_precision() {
        let b = bloch_coefficients(&TwoQubitXState::<f32>::bell()).unwrap();
        let r = steerability_entropy(&b).unwrap();
        assert!((r.s_ab - 1.0).abs() < 1e-6);
    }
}
