use nalgebra::{DMatrix, Matrix2, Matrix4};

use super::stability::eigenvalues;
use super::CovarianceMatrix;

/// Slack on the uncertainty bound `ν ≥ 1/2`.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;

/// Covariance of a two-mode subsystem, ordered `(X₁, Y₁, X₂, Y₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteCm(Matrix4<f64>);

impl BipartiteCm {
    pub fn new(m: Matrix4<f64>) -> Self {
        BipartiteCm((m + m.transpose()) * 0.5)
    }

    pub(crate) fn from_fn(f: impl FnMut(usize, usize) -> f64) -> Self {
        BipartiteCm(Matrix4::from_fn(f))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Momentum reversal of the first mode, `P C P` with `P = diag(1, -1, 1, 1)`.
    pub fn partial_transpose(&self) -> BipartiteCm {
        let p = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, 1.0));
        BipartiteCm(p * self.0 * p)
    }

    fn blocks(&self) -> (Matrix2<f64>, Matrix2<f64>, Matrix2<f64>) {
        let m = &self.0;
        (
            m.fixed_view::<2, 2>(0, 0).into_owned(),
            m.fixed_view::<2, 2>(2, 2).into_owned(),
            m.fixed_view::<2, 2>(0, 2).into_owned(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementResult {
    /// Smallest symplectic eigenvalue of the partially transposed covariance.
    pub nu_min: f64,
    /// Logarithmic negativity `max(0, -ln 2ν)`.
    pub e_n: f64,
}

/// Block-diagonal `⊕ [[0, 1], [-1, 0]]` of dimension `2n`.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// Moduli of the eigenvalues of `Ω M`, ascending. They come in equal pairs.
fn symplectic_moduli(m: &DMatrix<f64>) -> Vec<f64> {
    let omega = symplectic_form(m.nrows() / 2);
    let mut moduli: Vec<f64> = match eigenvalues(&(omega * m)) {
        Ok(ev) => ev.iter().map(|l| l.norm()).collect(),
        Err(e) => {
            log::warn!("symplectic spectrum unavailable: {e}");
            vec![f64::NAN; m.nrows()]
        }
    };
    moduli.sort_by(f64::total_cmp);
    moduli
}

/// The `n` symplectic eigenvalues of a `2n × 2n` covariance, ascending.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Vec<f64> {
    symplectic_moduli(v.matrix())
        .chunks(2)
        .map(|pair| 0.5 * (pair[0] + pair[1]))
        .collect()
}

/// Every symplectic eigenvalue satisfies the uncertainty bound `ν ≥ 1/2`.
pub fn check_physicality(v: &CovarianceMatrix) -> bool {
    symplectic_eigenvalues(v)
        .iter()
        .all(|nu| *nu >= 0.5 - PHYSICALITY_TOLERANCE)
}

/// Smallest modulus among the eigenvalues of `iΩ C` (or `iΩ P C P` when
/// `partial_transpose` is set).
pub fn min_symplectic_eig(c: &BipartiteCm, partial_transpose: bool) -> f64 {
    let m = if partial_transpose {
        c.partial_transpose()
    } else {
        *c
    };
    let dm = DMatrix::from_column_slice(4, 4, m.matrix().as_slice());
    let nu = symplectic_moduli(&dm)[0];
    if !partial_transpose && nu < 0.5 - PHYSICALITY_TOLERANCE {
        log::warn!("two-mode covariance violates the uncertainty bound: ν = {nu}");
    }
    nu
}

/// Two-mode closed form `ν² = (Σ - √(Σ² - 4 det C)) / 2` with
/// `Σ = det α + det β ± 2 det γ` (minus sign after partial transposition),
/// evaluated as `2 det C / (Σ + √(Σ² - 4 det C))` to avoid cancellation.
pub fn min_symplectic_eig_closed_form(c: &BipartiteCm, partial_transpose: bool) -> f64 {
    let (alpha, beta, gamma) = c.blocks();
    let sign = if partial_transpose { -1.0 } else { 1.0 };
    let sigma = alpha.determinant() + beta.determinant() + sign * 2.0 * gamma.determinant();
    let det = c.matrix().determinant();
    let disc = (sigma * sigma - 4.0 * det).max(0.0);
    (2.0 * det / (sigma + disc.sqrt())).sqrt()
}

/// Logarithmic negativity of a two-mode Gaussian state.
pub fn log_negativity(c: &BipartiteCm) -> EntanglementResult {
    let nu_min = min_symplectic_eig(c, true);
    EntanglementResult {
        nu_min,
        e_n: (-(2.0 * nu_min).ln()).max(0.0),
    }
}
