use nalgebra::{DMatrix, DVector};

use super::stability::{is_stable, spectral_abscissa};
use super::CovarianceMatrix;
use crate::error::{Error, Result};

/// Required bound on `‖AV + VAᵀ + D‖_F / ‖D‖_F`.
pub const LYAPUNOV_TOLERANCE: f64 = 1e-10;

/// `‖AV + VAᵀ + D‖_F / ‖D‖_F` (absolute when `D = 0`).
pub fn lyapunov_residual(a: &DMatrix<f64>, v: &DMatrix<f64>, d: &DMatrix<f64>) -> f64 {
    let r = a * v + v * a.transpose() + d;
    let scale = d.norm();
    if scale == 0.0 {
        r.norm()
    } else {
        r.norm() / scale
    }
}

/// Solves the continuous Lyapunov equation `AV + VAᵀ = -D` for a stable `A`.
///
/// The equation is vectorized with the Kronecker identity
/// `(I ⊗ A + A ⊗ I) vec(V) = -vec(D)` and solved by LU with one round of
/// iterative refinement; at n = 12 this is a 144×144 dense system.
pub fn solve_lyapunov(a: &DMatrix<f64>, d: &DMatrix<f64>) -> Result<CovarianceMatrix> {
    let n = a.nrows();
    if !a.is_square() || d.shape() != (n, n) {
        return Err(Error::Argument(format!(
            "Lyapunov equation needs square A and D of equal size, got {:?} and {:?}",
            a.shape(),
            d.shape()
        )));
    }
    if !is_stable(a)? {
        return Err(Error::Unstable {
            max_real_part: spectral_abscissa(a)?,
        });
    }

    let kron = kronecker_sum(a);
    let lu = kron.clone().lu();
    let rhs = -DVector::from_column_slice(d.as_slice());
    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular Kronecker system".into()))?;
    let correction = lu
        .solve(&(&rhs - &kron * &x))
        .ok_or_else(|| Error::Numerical("singular Kronecker system".into()))?;
    x += correction;

    let v = DMatrix::from_column_slice(n, n, x.as_slice());
    let v = (&v + v.transpose()) * 0.5;
    let residual = lyapunov_residual(a, &v, d);
    if residual.is_nan() || residual > LYAPUNOV_TOLERANCE {
        return Err(Error::Numerical(format!(
            "Lyapunov residual {residual:e} exceeds {LYAPUNOV_TOLERANCE:e}"
        )));
    }
    Ok(CovarianceMatrix::from_symmetric(v))
}

/// `I ⊗ A + A ⊗ I` acting on column-major `vec(V)`.
fn kronecker_sum(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut k = DMatrix::zeros(n * n, n * n);
    for j in 0..n {
        for i in 0..n {
            let row = i + n * j;
            for m in 0..n {
                // (I ⊗ A): V[m, j] feeds row (i, j) with A[i, m]
                k[(row, m + n * j)] += a[(i, m)];
                // (A ⊗ I): V[i, m] feeds row (i, j) with A[j, m]
                k[(row, i + n * m)] += a[(j, m)];
            }
        }
    }
    k
}
