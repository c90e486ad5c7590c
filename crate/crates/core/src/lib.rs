//! Fermionic EPR-steering of the two-qubit X-states produced by Hawking
//! radiation of a Schwarzschild black hole.
//!
//! Two steering measures are provided: one from the entropic uncertainty
//! relation of the three Pauli observables ([`steering_entropy`]) and one from
//! entanglement of a pair of witness states ([`steering_ent`]). [`hawking`]
//! builds the Alice / Bob / Anti-Bob state as a function of `T/w`, evaluates
//! both measures on all three bipartitions by closed forms and by an explicit
//! density-matrix pipeline, and locates the critical temperatures.
//!
//! Numerics are generic over [`Real`]; the aliases below fix `f64`, and
//! [`Wide`] is the double-double type the eigenvalue oracles use near rank
//! boundaries.

pub mod error;
pub mod hawking;
pub mod linalg;
pub mod qstate;
pub mod roots;
pub mod scalar;
pub mod steering_ent;
pub mod steering_entropy;

pub use error::{Error, Result};
pub use hawking::{GridKind, Pair};
pub use qstate::{Diagnostic, Mode};
pub use scalar::Real;
pub use steering_ent::Branch;
pub use steering_entropy::Direction;

/// Double-double scalar (about 106 significant bits).
pub type Wide = twofloat::TwoFloat;

pub type XState = qstate::TwoQubitXState<f64>;
pub type BlochCoefficients = qstate::BlochXCoefficients<f64>;
pub type DenseState = qstate::DenseHermitianState<f64>;
pub type WideDenseState = qstate::DenseHermitianState<Wide>;
pub type EntropyReport = steering_entropy::EntropySteeringReport<f64>;
pub type EntReport = steering_ent::EntSteeringReport<f64>;
pub type Thresholds = steering_ent::WitnessThresholds<f64>;
pub type Params = hawking::HawkingParams<f64>;
pub type Amplitudes = hawking::HawkingAmplitudes<f64>;
pub type Report = hawking::BipartitionReport<f64>;
pub type Residuals = hawking::MonogamyResiduals<f64>;

pub type XState32 = qstate::TwoQubitXState<f32>;
pub type Params32 = hawking::HawkingParams<f32>;
