//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! of degree 3, 5, 7, 9 or 13, chosen from the 1-norm of the argument.

use super::{norm1, Matrix};

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.53939833006323e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA_13: f64 = 5.371920351148152e0;

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn scaled(m: &Matrix, s: f64) -> Matrix {
    m.map(|z| z * s)
}

/// Numerator `V + U` and denominator `V - U` pieces for degree 3..9.
fn pade_low(a: &Matrix, coeffs: &[f64]) -> (Matrix, Matrix) {
    let n = a.nrows();
    let a2 = a * a;
    let mut even = Matrix::zeros(n, n);
    let mut odd_inner = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n, n);
    for k in 0..coeffs.len() / 2 {
        even += scaled(&power, coeffs[2 * k]);
        odd_inner += scaled(&power, coeffs[2 * k + 1]);
        power = &power * &a2;
    }
    (a * odd_inner, even)
}

fn pade_13(a: &Matrix) -> (Matrix, Matrix) {
    let b = &PADE_13;
    let n = a.nrows();
    let id = Matrix::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = &a6 * (scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]))
        + scaled(&a6, b[7])
        + scaled(&a4, b[5])
        + scaled(&a2, b[3])
        + scaled(&id, b[1]);
    let u = a * inner_u;
    let v = &a6 * (scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]))
        + scaled(&a6, b[6])
        + scaled(&a4, b[4])
        + scaled(&a2, b[2])
        + scaled(&id, b[0]);
    (u, v)
}

/// `e^A` for a square complex matrix.
///
/// # Panics
/// Panics if `a` is not square.
pub fn expm(a: &Matrix) -> Matrix {
    assert_eq!(a.nrows(), a.ncols(), "expm: matrix must be square");
    let n = a.nrows();
    if a.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        return Matrix::identity(n, n);
    }
    let norm = norm1(a);

    for (m, theta) in THETA {
        if norm <= theta {
            let coeffs: &[f64] = match m {
                3 => &PADE_3,
                5 => &PADE_5,
                7 => &PADE_7,
                _ => &PADE_9,
            };
            let (u, v) = pade_low(a, coeffs);
            return solve_pade(&u, &v);
        }
    }

    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a_scaled = scaled(a, 0.5f64.powi(s));
    let (u, v) = pade_13(&a_scaled);
    let mut r = solve_pade(&u, &v);
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// `(V - U)^{-1} (V + U)`.
fn solve_pade(u: &Matrix, v: &Matrix) -> Matrix {
    let p = v + u;
    let q = v - u;
    q.lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular for arguments within theta")
}
