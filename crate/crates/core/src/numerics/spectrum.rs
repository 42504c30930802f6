use num_complex::Complex64;

use super::schur::complex_schur;
use super::{frobenius, require_square, Matrix, ToleranceConfig};
use crate::error::Result;

/// One distinct point of the spectrum with its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Eigenvalues of a square matrix, merged within the clustering radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted lexicographically by `(re, im)`.
    pub points: Vec<SpectralPoint>,
    /// Raw eigenvalues from the Schur form before clustering.
    pub raw: Vec<Complex64>,
    /// `|A - Q T Q^H|_F / max(|A|_F, 1)`.
    pub backward_error: f64,
    /// Radius actually used to merge eigenvalues.
    pub cluster_radius: f64,
}

impl Spectrum {
    pub fn dimension(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|p| p.value)
    }

    /// Smallest distance between a point of `self` and a point of `other`.
    pub fn min_gap(&self, other: &Spectrum) -> f64 {
        self.values()
            .flat_map(|a| other.values().map(move |b| (a - b).norm()))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn lex_cmp(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Merge eigenvalues closer than `radius` into weighted centroids.
fn cluster(raw: &[Complex64], radius: f64) -> Vec<SpectralPoint> {
    let mut groups: Vec<(Complex64, usize)> = raw.iter().map(|&z| (z, 1)).collect();
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let d = (groups[i].0 - groups[j].0).norm();
                if d <= radius && best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, _)) = best else { break };
        let (zj, kj) = groups.swap_remove(j);
        let (zi, ki) = groups[i];
        let k = ki + kj;
        groups[i] = ((zi * ki as f64 + zj * kj as f64) / k as f64, k);
    }
    let mut points: Vec<SpectralPoint> = groups
        .into_iter()
        .map(|(value, multiplicity)| SpectralPoint { value, multiplicity })
        .collect();
    points.sort_by(|a, b| lex_cmp(&a.value, &b.value));
    points
}

/// Spectrum via Hessenberg reduction and complex Schur iteration.
///
/// Fails with [`Error::NumericFailure`](crate::Error::NumericFailure) if the
/// QR iteration exhausts its budget.
pub fn spectrum_of(a: &Matrix, tol: &ToleranceConfig) -> Result<Spectrum> {
    let n = require_square("A", a)?;
    let norm = frobenius(a);
    let radius = tol.eig_cluster_atol * (1.0 + norm);
    if n == 0 {
        return Ok(Spectrum {
            points: Vec::new(),
            raw: Vec::new(),
            backward_error: 0.0,
            cluster_radius: radius,
        });
    }
    let (q, t) = complex_schur(a)?;
    let backward_error = frobenius(&(a - &q * &t * q.adjoint())) / norm.max(1.0);

    let mut raw: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    raw.sort_by(lex_cmp);
    Ok(Spectrum {
        points: cluster(&raw, radius),
        raw,
        backward_error,
        cluster_radius: radius,
    })
}
