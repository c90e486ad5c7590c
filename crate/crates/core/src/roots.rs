//! Derivative-free bracketing: sign-change scans, bisection and golden-section
//! maximization.

use crate::scalar::Real;

/// Bisects a sign change of `f` on `[lo, hi]` down to an interval of width
/// `tol`. `f(lo)` and `f(hi)` must differ in sign (zero counts as the
/// non-positive side).
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let half = T::lit(0.5);
    let lo_positive = f(lo) > T::zero();
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo + (hi - lo) * half
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) * T::lit(0.5)
}

/// Index `i` of the first grid interval where `g` goes from `<= 0` to `> 0`.
pub fn first_upcrossing<T: Real>(values: &[T]) -> Option<usize> {
    values.windows(2).position(|w| w[0] <= T::zero() && w[1] > T::zero())
}

/// Index `i` of the last grid interval where `g` goes from `> 0` to `<= 0`.
pub fn last_downcrossing<T: Real>(values: &[T]) -> Option<usize> {
    values.windows(2).rposition(|w| w[0] > T::zero() && w[1] <= T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        let r = bisect(|x: f64| 2.0 - x * x, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let x = golden_max(|x: f64| -(x - 0.3).powi(2), -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn crossings() {
        let v = [-1.0, 0.0, 2.0, 3.0, -1.0, 1.0, 0.0];
        assert_eq!(first_upcrossing(&v), Some(1));
        assert_eq!(last_downcrossing(&v), Some(5));
        assert_eq!(first_upcrossing(&[1.0, 2.0]), None);
    }
}
