use super::{Matrix, ToleranceConfig};
use crate::error::{Error, Result};

/// Numerical rank together with the evidence it was decided on.
#[derive(Debug, Clone, PartialEq)]
pub struct RankInfo {
    pub rank: usize,
    /// Singular values in non-increasing order.
    pub singular_values: Vec<f64>,
    /// Values strictly above this count toward the rank.
    pub threshold: f64,
}

impl RankInfo {
    /// The `k`-th largest singular value (1-based), zero if there are fewer.
    pub fn sigma(&self, k: usize) -> f64 {
        if k == 0 {
            return f64::INFINITY;
        }
        self.singular_values.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Ratio `sigma_k / threshold` for the rank decision `rank >= k`.
    ///
    /// Greater than one means the decision is positive. Zero matrices give zero.
    pub fn margin(&self, k: usize) -> f64 {
        let s = self.sigma(k);
        if self.threshold > 0.0 {
            s / self.threshold
        } else if s > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

/// Singular values (unsorted) and, on request, matching left singular vectors.
struct Decomposition {
    singular_values: Vec<f64>,
    u: Option<Matrix>,
}

const MAX_SWEEPS: usize = 80;

/// One-sided Jacobi on the columns of a tall matrix `g`, accumulating the
/// right rotations in `v` when given.
///
/// On return the columns of `g` are mutually orthogonal; their norms are the
/// singular values. Columns below `eps * |g|_F` are left alone: they sit
/// under every rank threshold and rotating them only churns roundoff.
fn jacobi_sweeps(g: &mut Matrix, mut v: Option<&mut Matrix>) -> Result<()> {
    let cols = g.ncols();
    let negligible = (f64::EPSILON * g.norm()).powi(2);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let alpha = g.column(i).norm_squared();
                let beta = g.column(j).norm_squared();
                let gamma = g.column(i).dotc(&g.column(j));
                let abs_gamma = gamma.norm();
                if alpha.min(beta) <= negligible || abs_gamma <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Remove the phase of gamma from column j, then a real rotation.
                let phase = gamma.conj() / abs_gamma;
                let zeta = (beta - alpha) / (2.0 * abs_gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let rotate = |m: &mut Matrix| {
                    for r in 0..m.nrows() {
                        let xi = m[(r, i)];
                        let xj = m[(r, j)] * phase;
                        m[(r, i)] = xi * c - xj * s;
                        m[(r, j)] = xi * s + xj * c;
                    }
                };
                rotate(g);
                if let Some(v) = v.as_deref_mut() {
                    rotate(v);
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NumericFailure(format!(
        "Jacobi SVD of a {}x{} matrix did not converge",
        g.nrows(),
        g.ncols()
    )))
}

fn svd(m: &Matrix, compute_u: bool) -> Result<Decomposition> {
    if m.nrows() >= m.ncols() {
        let mut g = m.clone();
        jacobi_sweeps(&mut g, None)?;
        let singular_values: Vec<f64> = g.column_iter().map(|c| c.norm()).collect();
        let u = compute_u.then(|| {
            let mut u = g;
            for (k, &s) in singular_values.iter().enumerate() {
                if s > 0.0 {
                    u.column_mut(k).unscale_mut(s);
                }
            }
            u
        });
        Ok(Decomposition { singular_values, u })
    } else {
        // M^H = U' S V'^H, so the left singular vectors of M are V'.
        let mut g = m.adjoint();
        let mut v = compute_u.then(|| Matrix::identity(m.nrows(), m.nrows()));
        jacobi_sweeps(&mut g, v.as_mut())?;
        let singular_values = g.column_iter().map(|c| c.norm()).collect();
        Ok(Decomposition { singular_values, u: v })
    }
}

fn threshold(rows: usize, cols: usize, sigma_max: f64, tol: &ToleranceConfig) -> f64 {
    tol.rank_rtol * rows.max(cols) as f64 * sigma_max
}

/// Pseudo-rank: the number of singular values above
/// `rank_rtol * max(rows, cols) * sigma_max`.
pub fn rank_of(m: &Matrix, tol: &ToleranceConfig) -> Result<RankInfo> {
    if m.is_empty() {
        return Ok(RankInfo {
            rank: 0,
            singular_values: Vec::new(),
            threshold: 0.0,
        });
    }
    let mut sv: Vec<f64> = svd(m, false)?.singular_values;
    sv.sort_by(|a, b| b.total_cmp(a));
    let smax = sv[0];
    let thr = threshold(m.nrows(), m.ncols(), smax, tol);
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > thr).count()
    };
    Ok(RankInfo {
        rank,
        singular_values: sv,
        threshold: thr,
    })
}

/// Orthonormal basis of the column span, using the same rank rule as [`rank_of`].
pub fn svd_basis(m: &Matrix, tol: &ToleranceConfig) -> Result<(Matrix, RankInfo)> {
    if m.is_empty() {
        return Ok((
            Matrix::zeros(m.nrows(), 0),
            RankInfo {
                rank: 0,
                singular_values: Vec::new(),
                threshold: 0.0,
            },
        ));
    }
    let d = svd(m, true)?;
    let u = d
        .u
        .as_ref()
        .ok_or_else(|| Error::NumericFailure("SVD returned no left singular vectors".into()))?;
    let mut order: Vec<usize> = (0..d.singular_values.len()).collect();
    order.sort_by(|&i, &j| d.singular_values[j].total_cmp(&d.singular_values[i]));
    let sv: Vec<f64> = order.iter().map(|&i| d.singular_values[i]).collect();
    let smax = sv[0];
    let thr = threshold(m.nrows(), m.ncols(), smax, tol);
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > thr).count()
    };
    let mut basis = Matrix::zeros(m.nrows(), rank);
    for (k, &i) in order.iter().take(rank).enumerate() {
        basis.set_column(k, &u.column(i));
    }
    Ok((
        basis,
        RankInfo {
            rank,
            singular_values: sv,
            threshold: thr,
        },
    ))
}
