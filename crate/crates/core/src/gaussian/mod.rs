//! Gaussian-state toolkit: stability of the drift, the steady-state
//! covariance from the Lyapunov equation, and bipartite entanglement from
//! symplectic spectra.
//!
//! Quadratures are normalized so that the vacuum covariance is `I/2`.

mod lyapunov;
mod stability;
mod symplectic;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Mode;

pub use lyapunov::{lyapunov_residual, solve_lyapunov, LYAPUNOV_TOLERANCE};
pub use stability::{hurwitz_stable, is_stable, spectral_abscissa, STABILITY_MARGIN};
pub use symplectic::{
    check_physicality, log_negativity, min_symplectic_eig, min_symplectic_eig_closed_form,
    symplectic_eigenvalues, symplectic_form, BipartiteCm, EntanglementResult,
    PHYSICALITY_TOLERANCE,
};

/// Symmetric `2n × 2n` quadrature covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || !m.nrows().is_multiple_of(2) || m.nrows() == 0 {
            return Err(Error::Argument(format!(
                "covariance matrix must be 2n×2n, got {:?}",
                m.shape()
            )));
        }
        let asym = (&m - m.transpose()).amax();
        if asym > 1e-12 * m.amax().max(1.0) {
            return Err(Error::Argument(format!(
                "covariance matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        Ok(Self::from_symmetric(m))
    }

    pub(crate) fn from_symmetric(m: DMatrix<f64>) -> Self {
        CovarianceMatrix(m)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }

    /// Rows and columns `(2i, 2i+1, 2j, 2j+1)`, in that order.
    pub fn bipartite(&self, i: usize, j: usize) -> Result<BipartiteCm> {
        if i == j {
            return Err(Error::Argument(format!(
                "bipartition needs two distinct modes, got {i} twice"
            )));
        }
        let n = self.modes();
        if i >= n || j >= n {
            return Err(Error::Argument(format!(
                "mode index out of range for a {n}-mode state: ({i}, {j})"
            )));
        }
        let idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
        Ok(BipartiteCm::from_fn(|r, c| self.0[(idx[r], idx[c])]))
    }
}

/// The reduced two-mode covariance of `(s1, s2)` from the six-mode state.
pub fn bipartite_cm(v: &CovarianceMatrix, s1: Mode, s2: Mode) -> Result<BipartiteCm> {
    if s1 == s2 {
        return Err(Error::Argument(format!(
            "bipartition needs two distinct modes, got {s1} twice"
        )));
    }
    v.bipartite(s1.index(), s2.index())
}

/// Scalar diagnostics of a solved covariance, reported per sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceDiagnostics {
    pub lyapunov_residual: f64,
    pub min_symplectic_eig: f64,
}
