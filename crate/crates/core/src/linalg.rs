//! Small dense linear algebra: row-major complex matrices and a cyclic Jacobi
//! eigensolver for real symmetric and complex Hermitian input.
//!
//! Matrices here are at most 16x16, so everything is plain `Vec` storage.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a real symmetric matrix.
///
/// `vectors` is row-major; column `k` is the eigenvector of `values[k]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<T>,
    pub dim: usize,
}

/// Cyclic Jacobi iteration on a real symmetric `n x n` matrix.
///
/// Only the upper triangle is read. Iterates until the off-diagonal Frobenius
/// mass drops below the unit round-off of `T` relative to the whole matrix.
pub fn symmetric_eigen<T: Real>(a: &[T], n: usize) -> Result<SymmetricEigen<T>> {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let zero = T::zero();
    let one = T::one();
    let two = T::lit(2.0);

    let mut m = vec![zero; n * n];
    for i in 0..n {
        for j in i..n {
            m[i * n + j] = a[i * n + j];
            m[j * n + i] = a[i * n + j];
        }
    }
    let mut v = vec![zero; n * n];
    for i in 0..n {
        v[i * n + i] = one;
    }

    let frob2 = m.iter().fold(zero, |acc, &x| acc + x * x);
    let tol2 = {
        let u = T::unit_roundoff();
        u * u * frob2
    };

    for _ in 0..MAX_SWEEPS {
        let mut off = zero;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + m[p * n + q] * m[p * n + q];
            }
        }
        if off <= tol2 {
            return Ok(finish(m, v, n));
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == zero {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (two * apq);
                let t = {
                    let denom = theta.abs() + theta.hypot(one);
                    let t = one / denom;
                    if theta < zero {
                        -t
                    } else {
                        t
                    }
                };
                let c = one / t.hypot(one);
                let s = t * c;

                for r in 0..n {
                    let arp = m[r * n + p];
                    let arq = m[r * n + q];
                    m[r * n + p] = c * arp - s * arq;
                    m[r * n + q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = m[p * n + r];
                    let aqr = m[q * n + r];
                    m[p * n + r] = c * apr - s * aqr;
                    m[q * n + r] = s * apr + c * aqr;
                }
                m[p * n + q] = zero;
                m[q * n + p] = zero;

                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn finish<T: Real>(m: Vec<T>, v: Vec<T>, n: usize) -> SymmetricEigen<T> {
    SymmetricEigen { values: (0..n).map(|i| m[i * n + i]).collect(), vectors: v, dim: n }
}

/// Real symmetric `2n x 2n` image `[[Re, -Im], [Im, Re]]` of a Hermitian matrix.
/// Every eigenvalue of `h` appears twice in the image.
pub fn real_embedding<T: Real>(h: &[Complex<T>], n: usize) -> Vec<T> {
    let m = 2 * n;
    let mut out = vec![T::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            out[i * m + j] = z.re;
            out[(i + n) * m + (j + n)] = z.re;
            out[i * m + (j + n)] = -z.im;
            out[(i + n) * m + j] = z.im;
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues<T: Real>(h: &[Complex<T>], n: usize) -> Result<Vec<T>> {
    let eig = symmetric_eigen(&real_embedding(h, n), 2 * n)?;
    let mut vals = eig.values;
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok(vals.into_iter().step_by(2).collect())
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero are treated as zero.
pub fn hermitian_sqrt<T: Real>(h: &[Complex<T>], n: usize) -> Result<Vec<Complex<T>>> {
    let m = 2 * n;
    let eig = symmetric_eigen(&real_embedding(h, n), m)?;
    let roots: Vec<T> = eig.values.iter().map(|&x| if x > T::zero() { x.sqrt() } else { T::zero() }).collect();
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut re = T::zero();
            let mut im = T::zero();
            for (k, &r) in roots.iter().enumerate() {
                re = re + eig.vectors[i * m + k] * r * eig.vectors[j * m + k];
                im = im + eig.vectors[(i + n) * m + k] * r * eig.vectors[j * m + k];
            }
            out[i * n + j] = Complex::new(re, im);
        }
    }
    Ok(out)
}

pub fn matmul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], n: usize) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.re == T::zero() && aik.im == T::zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = out[i * n + j] + aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn kron<T: Real>(a: &[Complex<T>], na: usize, b: &[Complex<T>], nb: usize) -> Vec<Complex<T>> {
    let n = na * nb;
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k) * n + (j * nb + l)] = a[i * na + j] * b[k * nb + l];
                }
            }
        }
    }
    out
}

pub fn trace<T: Real>(a: &[Complex<T>], n: usize) -> Complex<T> {
    (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + a[i * n + i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use twofloat::TwoFloat;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn jacobi_reproduces_known_spectrum() {
        // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 - sqrt2, 2, 2 + sqrt2
        let a = [2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0];
        let mut vals = symmetric_eigen(&a, 3).unwrap().values;
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s2 = 2f64.sqrt();
        for (got, want) in vals.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn jacobi_vectors_diagonalize() {
        let a = [4.0, -2.0, 0.5, -2.0, 1.0, 3.0, 0.5, 3.0, -1.0];
        let eig = symmetric_eigen(&a, 3).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                let av: f64 = (0..3).map(|j| a[i * 3 + j] * eig.vectors[j * 3 + k]).sum();
                assert!((av - eig.values[k] * eig.vectors[i * 3 + k]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn hermitian_spectrum_of_sigma_y() {
        let y = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let vals = hermitian_eigenvalues(&y, 2).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15);
        assert!((vals[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt_squares_back() {
        let h = [c(2.0, 0.0), c(0.5, -0.25), c(0.5, 0.25), c(1.0, 0.0)];
        let r = hermitian_sqrt(&h, 2).unwrap();
        let back = matmul(&r, &r, 2);
        for (x, y) in back.iter().zip(h.iter()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn wide_precision_resolves_rank_deficient_block() {
        // [[a, sqrt(a c)], [sqrt(a c), c]] has an exact zero eigenvalue.
        let a = TwoFloat::from(0.3);
        let cc = TwoFloat::from(0.5);
        let b = (a * cc).sqrt();
        let m = [a, b, b, cc];
        let vals = symmetric_eigen(&m, 2).unwrap().values;
        let small = vals.iter().map(|v| v.abs()).fold(TwoFloat::from(1.0), |x, y| if y < x { y } else { x });
        assert!(small.hi() < 1e-28);
    }
}
