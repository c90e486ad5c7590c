//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, ToPrimitive};
use twofloat::TwoFloat;

/// Real scalar usable by the state, steering and eigen routines.
///
/// Implemented for `f32`, `f64` and the double-double [`TwoFloat`]. The last
/// one is what the eigenvalue-based oracles run in when the input sits on a
/// rank boundary and square roots of round-off would otherwise leak into the
/// result.
pub trait Real: Float + FloatConst + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Unit round-off of the representation.
    fn unit_roundoff() -> Self;

    /// Converts an `f64` literal. Exact for `f64` and `TwoFloat`.
    ///
    /// `FromPrimitive::from_f64` is not used: twofloat's implementation falls
    /// back to the integer path and truncates.
    fn lit(x: f64) -> Self;

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `x log2 x` with the convention `0 log 0 = 0`.
    #[inline]
    fn xlog2x(self) -> Self {
        if self <= Self::zero() {
            Self::zero()
        } else {
            self * self.log2()
        }
    }

    /// `(1 + x) log2 (1 + x)`, accurate for small `|x|`.
    #[inline]
    fn xlog2x_1p(self) -> Self {
        if self <= -Self::one() {
            return Self::zero();
        }
        let l = self.ln_1p();
        (l + self * l) / Self::LN_2()
    }

    /// `(1 + x) log2 (1 + x) + (1 - x) log2 (1 - x)` for `|x| <= 1`, without
    /// the cancellation of the two `O(x)` terms.
    #[inline]
    fn pair_xlog2x(self) -> Self {
        let two = Self::one() + Self::one();
        let x = self.abs();
        if x >= Self::one() {
            return two;
        }
        if x > Self::one() / two {
            return (Self::one() + x).xlog2x() + (Self::one() - x).xlog2x();
        }
        ((-x * x).ln_1p() + two * x * x.atanh()) / Self::LN_2()
    }
}

impl Real for f32 {
    fn lit(x: f64) -> Self {
        x as f32
    }

    fn unit_roundoff() -> Self {
        f32::EPSILON / 2.0
    }
}

impl Real for f64 {
    fn lit(x: f64) -> Self {
        x
    }

    fn unit_roundoff() -> Self {
        f64::EPSILON / 2.0
    }
}

impl Real for TwoFloat {
    fn lit(x: f64) -> Self {
        TwoFloat::from(x)
    }

    fn unit_roundoff() -> Self {
        // 2^-104; TwoFloat::EPSILON is the smallest normal, not the round-off.
        TwoFloat::from(2f64.powi(-104))
    }
}

/// Converts between scalar types through `f64` when no exact path exists.
pub fn cast<T: Real, U: Real>(x: T) -> U {
    U::lit(x.to_f64_lossy())
}
