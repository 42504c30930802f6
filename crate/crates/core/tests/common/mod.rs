//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the Padé exponential or the Van Loan Gramian, so
//! agreement with them is evidence rather than tautology.

#![allow(dead_code, clippy::excessive_precision)]

use num_complex::Complex64;
use outctl::numerics::rank_of;
use outctl::{LtiSystem, Matrix, ToleranceConfig};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn spectral_norm(m: &Matrix) -> f64 {
    rank_of(m, &ToleranceConfig::default())
        .unwrap()
        .singular_values
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Rescale `A` so that its spectral norm equals `norm`.
pub fn with_a_norm(sys: LtiSystem, norm: f64) -> LtiSystem {
    let (a, b, c) = sys.into_parts();
    let s = spectral_norm(&a);
    let a = if s > 0.0 { a.scale(norm / s) } else { a };
    LtiSystem::new(a, b, c).unwrap()
}

/// `e^A` by a truncated Taylor series with scaling and squaring.
pub fn taylor_expm(a: &Matrix) -> Matrix {
    let n = a.nrows();
    let norm = a.iter().map(|z| z.norm()).sum::<f64>();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a.scale(scale);
    let mut term = Matrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..40 {
        term = &term * &x / Complex64::from(k as f64);
        sum += &term;
        if term.norm() <= 1e-20 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Gauss–Kronrod 7/15 on `[lo, hi]`: (Kronrod estimate, Gauss estimate).
fn gk15(f: &dyn Fn(f64) -> Matrix, lo: f64, hi: f64) -> (Matrix, Matrix) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut k = fc.scale(WGK[7]);
    let mut g = fc.scale(WG[3]);
    for j in 0..7 {
        let pair = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += pair.scale(WGK[j]);
        if j % 2 == 1 {
            g += pair.scale(WG[j / 2]);
        }
    }
    (k.scale(h), g.scale(h))
}

/// Adaptive Gauss–Kronrod integral of a matrix-valued function.
pub fn adaptive_integral(f: &dyn Fn(f64) -> Matrix, lo: f64, hi: f64, rtol: f64) -> Matrix {
    let (whole, _) = gk15(f, lo, hi);
    let abs_tol = rtol * whole.norm().max(f64::MIN_POSITIVE);
    let mut stack = vec![(lo, hi)];
    let mut total = Matrix::zeros(whole.nrows(), whole.ncols());
    while let Some((a, b)) = stack.pop() {
        let (k, g) = gk15(f, a, b);
        let local = abs_tol * (b - a) / (hi - lo);
        if (&k - &g).norm() <= local || b - a < 1e-9 * (hi - lo) {
            total += k;
        } else {
            let mid = 0.5 * (a + b);
            stack.push((a, mid));
            stack.push((mid, b));
        }
    }
    total
}

/// `int_0^t e^{sA} B B^H e^{sA^H} ds` by adaptive quadrature with Taylor exponentials.
pub fn quadrature_gramian(a: &Matrix, b: &Matrix, t: f64) -> Matrix {
    let f = |s: f64| {
        let e = taylor_expm(&a.scale(s));
        let eb = &e * b;
        &eb * eb.adjoint()
    };
    adaptive_integral(&f, 0.0, t, 1e-13)
}
