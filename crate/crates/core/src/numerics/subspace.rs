use super::{svd_basis, Matrix, ToleranceConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageComparison {
    pub equal: bool,
    /// Largest principal angle in radians; `pi/2` when the ranks differ.
    pub max_principal_angle: f64,
    pub rank_first: usize,
    pub rank_second: usize,
}

/// Compare the column spans of two matrices with the same row count.
///
/// With orthonormal bases `Q1`, `Q2` of equal dimension, the sine of the
/// largest principal angle is `|(I - Q1 Q1^H) Q2|_2`, which stays accurate
/// for tiny angles where the cosine form does not.
pub fn image_equal(m1: &Matrix, m2: &Matrix, tol: &ToleranceConfig) -> Result<ImageComparison> {
    if m1.nrows() != m2.nrows() {
        return Err(Error::dimension("M2", "row counts differ", m1.nrows(), m2.nrows()));
    }
    let (q1, r1) = svd_basis(m1, tol)?;
    let (q2, r2) = svd_basis(m2, tol)?;
    if r1.rank != r2.rank {
        return Ok(ImageComparison {
            equal: false,
            max_principal_angle: std::f64::consts::FRAC_PI_2,
            rank_first: r1.rank,
            rank_second: r2.rank,
        });
    }
    let angle = if r1.rank == 0 {
        0.0
    } else {
        let residual = &q2 - &q1 * (q1.adjoint() * &q2);
        let (_, info) = svd_basis(&residual, tol)?;
        info.singular_values.first().copied().unwrap_or(0.0).min(1.0).asin()
    };
    Ok(ImageComparison {
        equal: angle <= tol.angle_tol(),
        max_principal_angle: angle,
        rank_first: r1.rank,
        rank_second: r2.rank,
    })
}
