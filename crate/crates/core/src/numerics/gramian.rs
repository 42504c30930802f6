use super::{expm, hermitize, norm1, Matrix};
use crate::error::{Error, Result};

/// Reachability Gramian `P(t) = int_0^t e^{sA} B B^H e^{sA^H} ds`.
///
/// The integral over a short step `tau = t / 2^k` is read off the exponential
/// of the block matrix `[[-A, B B^H], [0, A^H]] * tau`: with blocks
/// `[[F1, G1], [0, F2]]` it equals `F2^H G1`. The horizon is then reached by
/// `k` doublings `P(2 tau) = P(tau) + e^{tau A} P(tau) e^{tau A^H}`, each of
/// which only adds positive semidefinite terms.
pub fn state_gramian(a: &Matrix, b: &Matrix, t: f64) -> Result<Matrix> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("Gramian horizon must be positive, got {t}")));
    }
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(Error::dimension(
            "B",
            "state Gramian needs square A and B with n rows",
            format!("A {n}x{n}, B {n}xm"),
            format!("A {}x{}, B {}x{}", a.nrows(), a.ncols(), b.nrows(), b.ncols()),
        ));
    }

    let mut h = Matrix::zeros(2 * n, 2 * n);
    h.view_mut((0, 0), (n, n)).copy_from(&(-a));
    h.view_mut((0, n), (n, n)).copy_from(&(b * b.adjoint()));
    h.view_mut((n, n), (n, n)).copy_from(&a.adjoint());

    let h_norm = norm1(&h) * t;
    let doublings = if h_norm > 1.0 { h_norm.log2().ceil() as i32 } else { 0 };
    let tau = t / 2f64.powi(doublings);

    let e = expm(&h.scale(tau));
    let g1 = e.view((0, n), (n, n)).clone_owned();
    let mut step = e.view((n, n), (n, n)).adjoint();
    let mut p = hermitize(&(&step * g1));
    for _ in 0..doublings {
        p = &p + &step * &p * step.adjoint();
        p = hermitize(&p);
        step = &step * &step;
    }
    Ok(p)
}

/// `W_out = C P C^H`, Hermitized.
pub fn output_gramian(c: &Matrix, p: &Matrix) -> Matrix {
    hermitize(&(c * p * c.adjoint()))
}
