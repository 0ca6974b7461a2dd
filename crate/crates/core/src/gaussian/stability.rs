use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative margin for the stability test: `max Re λ < -1e-9 ‖A‖_F`.
pub const STABILITY_MARGIN: f64 = 1e-9;

const SCHUR_MAX_ITERATIONS: usize = 10_000;

pub(crate) fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::Argument(format!(
            "expected a square matrix, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let schur = Schur::try_new(a.clone(), f64::EPSILON, SCHUR_MAX_ITERATIONS)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Largest real part over the spectrum of `a`.
pub fn spectral_abscissa(a: &DMatrix<f64>) -> Result<f64> {
    Ok(eigenvalues(a)?
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Asymptotic stability of `u̇ = A u`: every eigenvalue of `a` lies strictly
/// left of `-1e-9 ‖A‖_F`.
pub fn is_stable(a: &DMatrix<f64>) -> Result<bool> {
    let abscissa = spectral_abscissa(a)?;
    Ok(abscissa < -STABILITY_MARGIN * a.norm())
}

/// Characteristic polynomial `det(λI - A) = λⁿ + c₁λⁿ⁻¹ + … + cₙ` by the
/// Faddeev–LeVerrier recursion; returns `[1, c₁, …, cₙ]`.
fn characteristic_polynomial(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut coeffs = vec![1.0];
    let mut m = DMatrix::<f64>::zeros(n, n);
    let identity = DMatrix::<f64>::identity(n, n);
    for k in 1..=n {
        m = a * &m + &identity * coeffs[k - 1];
        let c = -(a * &m).trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// Routh–Hurwitz test on the characteristic polynomial. Only offered for
/// n ≤ 4, where the Hurwitz determinants are well conditioned; it serves as a
/// cross-check of [`is_stable`] on small matrices.
pub fn hurwitz_stable(a: &DMatrix<f64>) -> Result<bool> {
    let n = a.nrows();
    if !a.is_square() || n == 0 || n > 4 {
        return Err(Error::Argument(format!(
            "Hurwitz cross-check supports square matrices up to 4×4, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let c = characteristic_polynomial(a);
    let coeff = |k: isize| {
        if k < 0 || k as usize > n {
            0.0
        } else {
            c[k as usize]
        }
    };
    // Hurwitz matrix H[i][j] = c_{2(j+1)-(i+1)} (1-based), with c₀ = 1.
    let hurwitz = DMatrix::from_fn(n, n, |i, j| coeff(2 * (j as isize + 1) - (i as isize + 1)));
    Ok((1..=n).all(|k| hurwitz.view((0, 0), (k, k)).determinant() > 0.0))
}
