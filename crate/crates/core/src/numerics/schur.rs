//! Complex Schur form `A = Q T Q^H` by Householder reduction to Hessenberg
//! form followed by single-shift QR iteration with Givens rotations.

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

const ITERATIONS_PER_EIGENVALUE: usize = 60;
const EXCEPTIONAL_EVERY: usize = 10;

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G [a; b] = [r; 0]`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn zeroing(a: Complex64, b: Complex64) -> Self {
        let (na, nb) = (a.norm(), b.norm());
        if nb == 0.0 {
            return Givens { c: 1.0, s: Complex64::new(0.0, 0.0) };
        }
        if na == 0.0 {
            return Givens { c: 0.0, s: Complex64::new(1.0, 0.0) };
        }
        let r = na.hypot(nb);
        Givens {
            c: na / r,
            s: (a / na) * b.conj() / r,
        }
    }

    /// Rows `i`, `j` of `m` over columns `cols`: `m <- G m`.
    fn left(&self, m: &mut Matrix, i: usize, j: usize, cols: std::ops::Range<usize>) {
        for k in cols {
            let (x, y) = (m[(i, k)], m[(j, k)]);
            m[(i, k)] = x * self.c + self.s * y;
            m[(j, k)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `i`, `j` of `m` over rows `rows`: `m <- m G^H`.
    fn right(&self, m: &mut Matrix, i: usize, j: usize, rows: std::ops::Range<usize>) {
        for k in rows {
            let (x, y) = (m[(k, i)], m[(k, j)]);
            m[(k, i)] = x * self.c + y * self.s.conj();
            m[(k, j)] = -x * self.s + y * self.c;
        }
    }
}

fn hessenberg(t: &mut Matrix, q: &mut Matrix) {
    let n = t.nrows();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| t[(i, k)]).collect();
        let alpha = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { Complex64::new(1.0, 0.0) };
        v[0] += phase * alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vn;
        }
        // t <- (I - 2 v v^H) t (I - 2 v v^H), q <- q (I - 2 v v^H)
        for col in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * t[(k + 1 + r, col)]).sum();
            for (r, vr) in v.iter().enumerate() {
                t[(k + 1 + r, col)] -= vr * dot * 2.0;
            }
        }
        for m in [&mut *t, &mut *q] {
            for row in 0..n {
                let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| m[(row, k + 1 + r)] * vr).sum();
                for (r, vr) in v.iter().enumerate() {
                    m[(row, k + 1 + r)] -= dot * vr.conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            t[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let r1 = (a + d) * 0.5 + disc;
    let r2 = (a + d) * 0.5 - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Returns `(Q, T)` with `T` upper triangular and `A = Q T Q^H`.
pub(crate) fn complex_schur(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = a.nrows();
    let mut t = a.clone();
    let mut q = Matrix::identity(n, n);
    hessenberg(&mut t, &mut q);

    let mut hi = n;
    let mut iterations = 0;
    let budget = ITERATIONS_PER_EIGENVALUE * n.max(1);
    let mut since_deflation = 0;
    while hi > 1 {
        // find the start of the unreduced block ending at hi - 1
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let diag = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * diag || sub < f64::MIN_POSITIVE {
                t[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iterations += 1;
        since_deflation += 1;
        if iterations > budget {
            return Err(Error::NumericFailure(format!(
                "complex Schur iteration on {n}x{n} matrix did not converge"
            )));
        }
        let k = hi - 1;
        let shift = if since_deflation % EXCEPTIONAL_EVERY == 0 {
            t[(k, k)] + Complex64::new(0.75 * t[(k, k - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(t[(k - 1, k - 1)], t[(k - 1, k)], t[(k, k - 1)], t[(k, k)])
        };

        // implicit single-shift QR sweep over rows/cols lo..hi
        let mut g = Givens::zeroing(t[(lo, lo)] - shift, t[(lo + 1, lo)]);
        for j in lo..hi - 1 {
            if j > lo {
                g = Givens::zeroing(t[(j, j - 1)], t[(j + 1, j - 1)]);
            }
            let first_col = if j > lo { j - 1 } else { lo };
            g.left(&mut t, j, j + 1, first_col..n);
            g.right(&mut t, j, j + 1, 0..(j + 3).min(hi));
            g.right(&mut q, j, j + 1, 0..n);
            if j > lo {
                t[(j + 1, j - 1)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok((q, t))
}
