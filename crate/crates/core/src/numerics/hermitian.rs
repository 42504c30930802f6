use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::{hermitize, require_square, Matrix, ToleranceConfig, Vector, MAX_ITERATIONS};
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: Matrix,
}

impl HermitianEigen {
    /// Largest eigenvalue magnitude, i.e. the spectral norm.
    pub fn norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Floor `psd_atol * (1 + |W|)` below which an eigenvalue counts as zero.
    pub fn floor(&self, tol: &ToleranceConfig) -> f64 {
        tol.psd_atol * (1.0 + self.norm())
    }
}

/// Eigendecomposition of the Hermitian part of `w`.
pub fn hermitian_eigen(w: &Matrix) -> Result<HermitianEigen> {
    let n = require_square("W", w)?;
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: Matrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(hermitize(w), f64::EPSILON, MAX_ITERATIONS)
        .ok_or_else(|| Error::NumericFailure(format!("Hermitian eigensolver on {n}x{n} did not converge")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut vectors = Matrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    Ok(HermitianEigen {
        values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        vectors,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSolve {
    pub solution: Vector,
    /// `|W x - rhs|_2`.
    pub residual: f64,
    /// Eigenvalues treated as nonzero.
    pub rank: usize,
}

/// Minimum-norm least-squares solution of `W x = rhs` for Hermitian `W`.
///
/// Eigenvalues with magnitude at or below `psd_atol * (1 + |W|)` are dropped.
/// Fails with [`Error::TargetUnreachable`] when the residual exceeds
/// `sqrt(psd_atol) * (1 + |rhs|)`, i.e. `rhs` is not in the image of `W`.
pub fn solve_hermitian(w: &Matrix, rhs: &Vector, tol: &ToleranceConfig) -> Result<HermitianSolve> {
    let n = require_square("W", w)?;
    if rhs.len() != n {
        return Err(Error::dimension("rhs", "right-hand side length", n, rhs.len()));
    }
    let eig = hermitian_eigen(w)?;
    let floor = eig.floor(tol);
    let mut x = Vector::zeros(n);
    let mut rank = 0;
    for (k, &lambda) in eig.values.iter().enumerate() {
        if lambda.abs() <= floor {
            continue;
        }
        rank += 1;
        let v = eig.vectors.column(k);
        let coeff: Complex64 = v.dotc(rhs) / lambda;
        x += v * coeff;
    }
    let residual = (w * &x - rhs).norm();
    let allowed = tol.psd_atol.sqrt() * (1.0 + rhs.norm());
    if residual > allowed {
        return Err(Error::TargetUnreachable {
            residual,
            tolerance: allowed,
        });
    }
    Ok(HermitianSolve {
        solution: x,
        residual,
        rank,
    })
}
