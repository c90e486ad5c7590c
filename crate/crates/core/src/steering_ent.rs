//! Steering quantified through entanglement of the witness states
//! `tau1 = rho/sqrt3 + (3 - sqrt3)/3 (rho_A x I/2)` (second qubit steers the
//! first) and `tau2 = rho/sqrt3 + (3 - sqrt3)/3 (I/2 x rho_B)` (first steers
//! second).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qstate::{DenseHermitianState, TwoQubitXState, EIGEN_TOL};
use crate::scalar::Real;

/// Threshold combinations entering the witness inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessThresholds<T> {
    pub qa: T,
    pub qb: T,
    pub qc: T,
}

/// Which coherence drives a witness inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `|c14|`, the `|00> <-> |11>` coherence.
    Corner,
    /// `|c23|`, the `|01> <-> |10>` coherence.
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntSteeringReport<T> {
    pub t_ab: T,
    pub t_ba: T,
    pub delta: T,
    /// Branch attaining the larger witness value, even when both are clamped.
    pub branch_ab: Branch,
    pub branch_ba: Branch,
}

/// Concurrence of an X-state from its entries.
pub fn concurrence_xstate<T: Real>(s: &TwoQubitXState<T>) -> Result<T> {
    let s = s.checked()?;
    let corner = s.c14.abs() - (s.p22 * s.p33).sqrt();
    let inner = s.c23.abs() - (s.p11 * s.p44).sqrt();
    Ok(T::lit(2.0) * corner.max(inner).max(T::zero()))
}

/// Spin-flip concurrence of an arbitrary two-qubit state.
///
/// The `lambda_i` are square roots of the eigenvalues of
/// `rho (Y x Y) rho* (Y x Y)`, obtained from the Hermitian form
/// `sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho)`. Rank-deficient inputs put
/// round-off of order `u` into zero eigenvalues and `sqrt(u)` into the result;
/// call this with a double-double state (`state.cast::<TwoFloat>()`) when
/// `1e-10` agreement is required on such states.
pub fn concurrence_oracle<T: Real>(d: &DenseHermitianState<T>) -> Result<T> {
    if d.dim() != 4 {
        return Err(Error::Dimension { expected: 4, actual: d.dim() });
    }
    d.validate().map_err(Error::InvalidState)?;
    let z = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let mut yy = vec![z; 16];
    yy[3] = -one;
    yy[6] = one;
    yy[9] = one;
    yy[12] = -one;

    let conj: Vec<_> = d.entries().iter().map(|x| x.conj()).collect();
    let flipped = linalg::matmul(&linalg::matmul(&yy, &conj, 4), &yy, 4);
    let root = linalg::hermitian_sqrt(d.entries(), 4)?;
    let m = linalg::matmul(&linalg::matmul(&root, &flipped, 4), &root, 4);
    // symmetrize away round-off before the Hermitian solver
    let mut herm = m.clone();
    for i in 0..4 {
        for j in 0..4 {
            herm[i * 4 + j] = (m[i * 4 + j] + m[j * 4 + i].conj()) * T::lit(0.5);
        }
    }
    let eig = linalg::hermitian_eigenvalues(&herm, 4)?;
    let mut lambda = Vec::with_capacity(4);
    for mu in eig {
        if mu < -T::lit(EIGEN_TOL) {
            return Err(Error::InvalidState(vec![crate::qstate::Diagnostic::NegativeEigenvalue {
                value: mu.to_f64_lossy(),
            }]));
        }
        lambda.push(mu.max(T::zero()).sqrt());
    }
    Ok((lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(T::zero()))
}

pub fn witness_thresholds<T: Real>(s: &TwoQubitXState<T>) -> Result<WitnessThresholds<T>> {
    let s = s.checked()?;
    let sqrt3 = T::lit(3.0).sqrt();
    let two = T::lit(2.0);
    let quarter = T::lit(0.25);
    let cross = quarter * (s.p11 + s.p44) * (s.p22 + s.p33);
    let outer = s.p11 * s.p44;
    let inner = s.p22 * s.p33;
    Ok(WitnessThresholds {
        qa: (two - sqrt3) / two * outer + (two + sqrt3) / two * inner + cross,
        qb: quarter * (s.p11 - s.p44) * (s.p22 - s.p33),
        qc: (two + sqrt3) / two * outer + (two - sqrt3) / two * inner + cross,
    })
}

fn best_branch<T: Real>(corner: T, inner: T) -> (T, Branch) {
    if inner > corner {
        (inner, Branch::Inner)
    } else {
        (corner, Branch::Corner)
    }
}

/// Entanglement-based steerabilities; normalized so a Bell state gives 1.
pub fn steerability_ent<T: Real>(s: &TwoQubitXState<T>) -> Result<EntSteeringReport<T>> {
    let s = s.checked()?;
    let WitnessThresholds { qa, qb, qc } = witness_thresholds(&s)?;
    let scale = T::lit(8.0) / T::lit(3.0).sqrt();
    let corner2 = s.c14 * s.c14;
    let inner2 = s.c23 * s.c23;

    let (raw_ab, branch_ab) = best_branch(scale * (corner2 - qa - qb), scale * (inner2 - qc - qb));
    let (raw_ba, branch_ba) = best_branch(scale * (corner2 - qa + qb), scale * (inner2 - qc + qb));
    let t_ab = raw_ab.max(T::zero());
    let t_ba = raw_ba.max(T::zero());
    Ok(EntSteeringReport { t_ab, t_ba, delta: (t_ab - t_ba).abs(), branch_ab, branch_ba })
}

/// The witness states `(tau1, tau2)`.
pub fn tau_states<T: Real>(s: &TwoQubitXState<T>) -> Result<(TwoQubitXState<T>, TwoQubitXState<T>)> {
    let s = s.checked()?;
    let sqrt3 = T::lit(3.0).sqrt();
    let k = (T::lit(3.0) - sqrt3) / T::lit(6.0);
    let w = T::one() / sqrt3;

    let r1 = k * (s.p11 + s.p22);
    let s1 = k * (s.p33 + s.p44);
    let tau1 =
        TwoQubitXState::new(w * s.p11 + r1, w * s.p22 + r1, w * s.p33 + s1, w * s.p44 + s1, w * s.c14, w * s.c23);

    let r2 = k * (s.p11 + s.p33);
    let s2 = k * (s.p22 + s.p44);
    let tau2 =
        TwoQubitXState::new(w * s.p11 + r2, w * s.p22 + s2, w * s.p33 + r2, w * s.p44 + s2, w * s.c14, w * s.c23);
    Ok((tau1.checked()?, tau2.checked()?))
}
