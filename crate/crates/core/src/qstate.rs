//! Two-qubit X-states, their Bloch parameterization, dense density matrices
//! and the three-mode partial trace.
//!
//! Basis convention: `|abc> = |a>_A |b>_B |c>_Bbar` sits at index `4a + 2b + c`.
//! Two-qubit states use `|ab>` at index `2a + b`.

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cast, Real};

/// Tolerance on trace, Hermiticity, block positivity and pattern checks.
pub const STATE_TOL: f64 = 1e-12;
/// Most negative eigenvalue a dense state may have.
pub const EIGEN_TOL: f64 = 1e-10;

/// A violated state invariant together with its residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Diagnostic {
    NonFinite,
    TraceNotOne { residual: f64 },
    NegativePopulation { index: usize, value: f64 },
    PsdBlockViolated { coherence: &'static str, excess: f64 },
    NotHermitian { row: usize, col: usize, residual: f64 },
    NegativeEigenvalue { value: f64 },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonFinite => write!(f, "non-finite entry"),
            Diagnostic::TraceNotOne { residual } => {
                write!(f, "trace differs from 1 by {residual:e}")
            }
            Diagnostic::NegativePopulation { index, value } => {
                write!(f, "negative population p{0}{0} = {value:e}", index + 1)
            }
            Diagnostic::PsdBlockViolated { coherence, excess } => {
                let bound = if *coherence == "c14" { "sqrt(p11*p44)" } else { "sqrt(p22*p33)" };
                write!(f, "PSD block violated: |{coherence}| > {bound} by {excess:e}")
            }
            Diagnostic::NotHermitian { row, col, residual } => {
                write!(f, "not Hermitian at ({row}, {col}), residual {residual:e}")
            }
            Diagnostic::NegativeEigenvalue { value } => {
                write!(f, "negative eigenvalue {value:e}")
            }
        }
    }
}

/// Real-symmetric two-qubit X-state.
///
/// ```text
/// | p11  0    0    c14 |
/// | 0    p22  c23  0   |
/// | 0    c23  p33  0   |
/// | c14  0    0    p44 |
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitXState<T> {
    pub p11: T,
    pub p22: T,
    pub p33: T,
    pub p44: T,
    pub c14: T,
    pub c23: T,
}

/// Correlation and polarization coefficients of an X-state in the Pauli basis:
/// `rho = (I + p Z x I + q I x Z + sum_i c_i s_i x s_i) / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochXCoefficients<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
    pub p: T,
    pub q: T,
}

impl<T: Real> BlochXCoefficients<T> {
    /// Coefficients after exchanging the two qubits.
    pub fn swapped(&self) -> Self {
        Self { p: self.q, q: self.p, ..*self }
    }

    pub fn as_array(&self) -> [T; 5] {
        [self.c1, self.c2, self.c3, self.p, self.q]
    }
}

impl<T: Real> TwoQubitXState<T> {
    pub fn new(p11: T, p22: T, p33: T, p44: T, c14: T, c23: T) -> Self {
        Self { p11, p22, p33, p44, c14, c23 }
    }

    /// `(|00> + |11>)/sqrt(2)`.
    pub fn bell() -> Self {
        let h = T::lit(0.5);
        let z = T::zero();
        Self::new(h, z, z, h, h, z)
    }

    pub fn maximally_mixed() -> Self {
        let q = T::lit(0.25);
        let z = T::zero();
        Self::new(q, q, q, q, z, z)
    }

    pub fn populations(&self) -> [T; 4] {
        [self.p11, self.p22, self.p33, self.p44]
    }

    /// All violated invariants. Populations in `[-1e-12, 0)` are accepted.
    pub fn validate(&self) -> std::result::Result<(), Vec<Diagnostic>> {
        let tol = T::lit(STATE_TOL);
        let mut diags = Vec::new();
        let all = [self.p11, self.p22, self.p33, self.p44, self.c14, self.c23];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(vec![Diagnostic::NonFinite]);
        }
        let trace = self.p11 + self.p22 + self.p33 + self.p44;
        if (trace - T::one()).abs() > tol {
            diags.push(Diagnostic::TraceNotOne { residual: (trace - T::one()).to_f64_lossy() });
        }
        for (index, &p) in self.populations().iter().enumerate() {
            if p < -tol {
                diags.push(Diagnostic::NegativePopulation { index, value: p.to_f64_lossy() });
            }
        }
        let clamp = |x: T| x.max(T::zero());
        let outer = (clamp(self.p11) * clamp(self.p44)).sqrt();
        if self.c14.abs() > outer + tol {
            diags.push(Diagnostic::PsdBlockViolated {
                coherence: "c14",
                excess: (self.c14.abs() - outer).to_f64_lossy(),
            });
        }
        let inner = (clamp(self.p22) * clamp(self.p33)).sqrt();
        if self.c23.abs() > inner + tol {
            diags.push(Diagnostic::PsdBlockViolated {
                coherence: "c23",
                excess: (self.c23.abs() - inner).to_f64_lossy(),
            });
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    /// Validates and clamps round-off negatives to zero.
    pub fn checked(self) -> Result<Self> {
        self.validate().map_err(Error::InvalidState)?;
        let clamp = |x: T| if x < T::zero() { T::zero() } else { x };
        Ok(Self { p11: clamp(self.p11), p22: clamp(self.p22), p33: clamp(self.p33), p44: clamp(self.p44), ..self })
    }

    /// State with the roles of the two qubits exchanged (`|01> <-> |10>`).
    pub fn swapped(&self) -> Self {
        Self { p22: self.p33, p33: self.p22, ..*self }
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: T) -> Self {
        let mu = T::one() - lambda;
        Self {
            p11: lambda * self.p11 + mu * other.p11,
            p22: lambda * self.p22 + mu * other.p22,
            p33: lambda * self.p33 + mu * other.p33,
            p44: lambda * self.p44 + mu * other.p44,
            c14: lambda * self.c14 + mu * other.c14,
            c23: lambda * self.c23 + mu * other.c23,
        }
    }

    pub fn cast<U: Real>(&self) -> TwoQubitXState<U> {
        TwoQubitXState {
            p11: cast(self.p11),
            p22: cast(self.p22),
            p33: cast(self.p33),
            p44: cast(self.p44),
            c14: cast(self.c14),
            c23: cast(self.c23),
        }
    }

    /// Random valid X-state. Populations are uniform on the simplex; with some
    /// probability a population is zeroed or a coherence saturates its bound,
    /// so rank-deficient states are well represented.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut pops = [0.0f64; 4];
        for p in pops.iter_mut() {
            *p = -(1.0 - rng.random::<f64>()).ln();
        }
        if rng.random::<f64>() < 0.2 {
            pops[rng.random_range(0..4)] = 0.0;
        }
        let total: f64 = pops.iter().sum();
        for p in pops.iter_mut() {
            *p /= total;
        }
        let mut coherence = |bound: f64| {
            let frac = if rng.random::<f64>() < 0.2 { 1.0 } else { rng.random::<f64>() };
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            sign * frac * bound
        };
        let c14 = coherence((pops[0] * pops[3]).sqrt());
        let c23 = coherence((pops[1] * pops[2]).sqrt());
        Self::new(T::lit(pops[0]), T::lit(pops[1]), T::lit(pops[2]), T::lit(pops[3]), T::lit(c14), T::lit(c23))
    }

    /// Dense 4x4 matrix with the X pattern.
    pub fn embed_dense(&self) -> Result<DenseHermitianState<T>> {
        let s = self.checked()?;
        Ok(DenseHermitianState::from_real_unchecked(4, &s.dense_entries()))
    }

    fn dense_entries(&self) -> [T; 16] {
        let z = T::zero();
        [
            self.p11, z, z, self.c14, //
            z, self.p22, self.c23, z, //
            z, self.c23, self.p33, z, //
            self.c14, z, z, self.p44,
        ]
    }
}

/// Bloch coefficients of a valid X-state.
pub fn bloch_coefficients<T: Real>(s: &TwoQubitXState<T>) -> Result<BlochXCoefficients<T>> {
    let s = s.checked()?;
    let two = T::lit(2.0);
    // Grouped so that exchanging the qubits (p22 <-> p33) maps p <-> q bitwise.
    let outer = s.p11 - s.p44;
    let inner = s.p22 - s.p33;
    Ok(BlochXCoefficients {
        c1: two * (s.c14 + s.c23),
        c2: two * (s.c23 - s.c14),
        c3: (s.p11 + s.p44) - (s.p22 + s.p33),
        p: outer + inner,
        q: outer - inner,
    })
}

pub fn validate_xstate<T: Real>(s: &TwoQubitXState<T>) -> std::result::Result<(), Vec<Diagnostic>> {
    s.validate()
}

pub fn embed_dense<T: Real>(s: &TwoQubitXState<T>) -> Result<DenseHermitianState<T>> {
    s.embed_dense()
}

/// Dense density matrix on 1, 2 or 3 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitianState<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> DenseHermitianState<T> {
    /// Validated constructor.
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        let state = Self::new_unchecked(dim, entries);
        state.validate().map_err(Error::InvalidState)?;
        Ok(state)
    }

    /// Stores the matrix as given. Use [`validate`](Self::validate) before
    /// trusting it as a state.
    pub fn new_unchecked(dim: usize, entries: Vec<Complex<T>>) -> Self {
        assert!(matches!(dim, 2 | 4 | 8), "dimension must be 2, 4 or 8");
        assert_eq!(entries.len(), dim * dim, "entry count does not match dimension");
        Self { dim, entries }
    }

    pub fn from_real(dim: usize, entries: &[T]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    fn from_real_unchecked(dim: usize, entries: &[T]) -> Self {
        Self::new_unchecked(dim, entries.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    /// `|v><v|` scaled by `weight`.
    pub fn projector(v: &[Complex<T>], weight: T) -> Result<Self> {
        let dim = v.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in v {
            for b in v {
                entries.push(*a * b.conj() * weight);
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex<T> {
        linalg::trace(&self.entries, self.dim)
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        linalg::hermitian_eigenvalues(&self.entries, self.dim)
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Diagnostic>> {
        let tol = T::lit(STATE_TOL);
        let n = self.dim;
        if self.entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(vec![Diagnostic::NonFinite]);
        }
        let mut diags = Vec::new();
        'outer: for i in 0..n {
            for j in i..n {
                let r = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                if r > tol {
                    diags.push(Diagnostic::NotHermitian { row: i, col: j, residual: r.to_f64_lossy() });
                    break 'outer;
                }
            }
        }
        let tr = self.trace();
        let residual = (tr - Complex::new(T::one(), T::zero())).norm();
        if residual > tol {
            diags.push(Diagnostic::TraceNotOne { residual: residual.to_f64_lossy() });
        }
        if diags.is_empty() {
            match self.eigenvalues() {
                Ok(vals) => {
                    let min = vals[n - 1];
                    if min < -T::lit(EIGEN_TOL) {
                        diags.push(Diagnostic::NegativeEigenvalue { value: min.to_f64_lossy() });
                    }
                }
                Err(_) => diags.push(Diagnostic::NonFinite),
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    pub fn cast<U: Real>(&self) -> DenseHermitianState<U> {
        DenseHermitianState {
            dim: self.dim,
            entries: self.entries.iter().map(|z| Complex::new(cast(z.re), cast(z.im))).collect(),
        }
    }

    /// Two-qubit state with the qubits exchanged.
    pub fn swap_qubits(&self) -> Result<Self> {
        if self.dim != 4 {
            return Err(Error::Dimension { expected: 4, actual: self.dim });
        }
        let perm = [0usize, 2, 1, 3];
        let mut entries = vec![Complex::new(T::zero(), T::zero()); 16];
        for i in 0..4 {
            for j in 0..4 {
                entries[perm[i] * 4 + perm[j]] = self.entry(i, j);
            }
        }
        Ok(Self { dim: 4, entries })
    }
}

/// Reads a 4x4 dense state back into X form.
///
/// Fails when an off-pattern entry or the imaginary part of a coherence
/// exceeds `1e-12`.
pub fn extract_xstate<T: Real>(d: &DenseHermitianState<T>) -> Result<TwoQubitXState<T>> {
    if d.dim() != 4 {
        return Err(Error::Dimension { expected: 4, actual: d.dim() });
    }
    let tol = T::lit(STATE_TOL);
    for i in 0..4 {
        for j in 0..4 {
            let z = d.entry(i, j);
            if i == j || i + j == 3 {
                if z.im.abs() > tol {
                    return Err(Error::ComplexCoherence { row: i, col: j, imag: z.im.to_f64_lossy() });
                }
            } else if z.norm() > tol {
                return Err(Error::NonXReduction { row: i, col: j, magnitude: z.norm().to_f64_lossy() });
            }
        }
    }
    TwoQubitXState::new(
        d.entry(0, 0).re,
        d.entry(1, 1).re,
        d.entry(2, 2).re,
        d.entry(3, 3).re,
        d.entry(0, 3).re,
        d.entry(1, 2).re,
    )
    .checked()
}

/// One of the three field modes of the tripartite state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    A,
    B,
    BBar,
}

impl Mode {
    /// Bit position of the mode in the index `4a + 2b + c`.
    fn shift(self) -> usize {
        match self {
            Mode::A => 2,
            Mode::B => 1,
            Mode::BBar => 0,
        }
    }
}

/// Traces one mode out of a three-qubit state and returns the remaining pair
/// as an X-state, qubit order following `kept`.
pub fn partial_trace<T: Real>(t: &DenseHermitianState<T>, kept: [Mode; 2]) -> Result<TwoQubitXState<T>> {
    if t.dim() != 8 {
        return Err(Error::Dimension { expected: 8, actual: t.dim() });
    }
    assert_ne!(kept[0], kept[1], "kept modes must differ");
    t.validate().map_err(Error::InvalidState)?;
    let traced = [Mode::A, Mode::B, Mode::BBar].into_iter().find(|m| !kept.contains(m)).expect("three modes, two kept");

    let full = |pair: usize, k: usize| {
        (((pair >> 1) & 1) << kept[0].shift()) | ((pair & 1) << kept[1].shift()) | (k << traced.shift())
    };
    let mut reduced = vec![Complex::new(T::zero(), T::zero()); 16];
    for i in 0..4 {
        for j in 0..4 {
            reduced[i * 4 + j] =
                (0..2).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + t.entry(full(i, k), full(j, k)));
        }
    }
    extract_xstate(&DenseHermitianState::new_unchecked(4, reduced))
}
