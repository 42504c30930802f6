//! Dense complex linear algebra used by the controllability criteria.
//!
//! Everything works on [`Matrix`] (a dynamically sized complex matrix). Real
//! data is embedded with zero imaginary parts.

mod expm;
mod gramian;
mod hermitian;
mod rank;
mod schur;
mod spectrum;
mod subspace;

pub use expm::expm;
pub use gramian::{output_gramian, state_gramian};
pub use hermitian::{hermitian_eigen, solve_hermitian, HermitianEigen, HermitianSolve};
pub use rank::{rank_of, svd_basis, RankInfo};
pub use spectrum::{spectrum_of, SpectralPoint, Spectrum};
pub use subspace::{image_equal, ImageComparison};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<Complex64>;
pub type Vector = DVector<Complex64>;

pub(crate) const MAX_ITERATIONS: usize = 10_000;

/// Thresholds turning floating-point quantities into exact-arithmetic decisions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ToleranceConfig {
    /// Singular values `s_i > rank_rtol * max(rows, cols) * s_max` count toward the rank.
    pub rank_rtol: f64,
    /// Eigenvalues closer than `eig_cluster_atol * (1 + |A|_F)` form one spectral point.
    pub eig_cluster_atol: f64,
    /// Floor for positive eigenvalues of Hermitian matrices, scaled by `1 + |W|`.
    pub psd_atol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rank_rtol: f64::EPSILON,
            eig_cluster_atol: 1e-8,
            psd_atol: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rtol", self.rank_rtol),
            ("eig_cluster_atol", self.eig_cluster_atol),
            ("psd_atol", self.psd_atol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Tolerance(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }

    /// Largest principal angle still accepted as "same subspace".
    pub fn angle_tol(&self) -> f64 {
        self.rank_rtol.sqrt()
    }
}

/// Build a complex matrix from real row-major data.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> Matrix {
    assert_eq!(data.len(), rows * cols, "real_matrix: data length");
    Matrix::from_row_iterator(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)))
}

pub fn real_vector(data: &[f64]) -> Vector {
    Vector::from_iterator(data.len(), data.iter().map(|&x| Complex64::new(x, 0.0)))
}

pub fn real_diag(d: &[f64]) -> Matrix {
    Matrix::from_diagonal(&real_vector(d))
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn check_finite(field: &str, m: &Matrix) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite {
                    field: field.to_string(),
                    row: i,
                    col: j,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn require_square(field: &str, m: &Matrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::dimension(
            field,
            format!("{field} not square"),
            format!("{0}x{0}", m.nrows()),
            format!("{}x{}", m.nrows(), m.ncols()),
        ));
    }
    Ok(m.nrows())
}

/// Maximum absolute column sum.
pub fn norm1(m: &Matrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn frobenius(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermitize(m: &Matrix) -> Matrix {
    (m + m.adjoint()).scale(0.5)
}

/// Write `blocks` along the diagonal of a zero matrix.
pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Matrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), (b.nrows(), b.ncols())).copy_from(*b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}
