use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::LtiSystem;
use crate::controllability::kalman_output_test;
use crate::error::{Error, Result};
use crate::numerics::{rank_of, Matrix, ToleranceConfig};

const RETRY_BUDGET: usize = 64;
const MAX_SIMILARITY_CONDITION: f64 = 100.0;

/// Families of random test systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// Independent standard complex Gaussian entries.
    Generic,
    /// `C` is a product of thin factors with `rank C = min(p - 1, n)`.
    RankDeficientC,
    /// Full-row-rank `C`, `B = C^H R`, resampled until the Kalman test passes.
    ForcedOutputControllable,
    /// `A` similar to a Jordan matrix with repeated eigenvalues and a random block structure.
    Jordan,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] = [
        SystemKind::Generic,
        SystemKind::RankDeficientC,
        SystemKind::ForcedOutputControllable,
        SystemKind::Jordan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemKind::Generic => "generic",
            SystemKind::RankDeficientC => "rank_deficient_c",
            SystemKind::ForcedOutputControllable => "forced_output_controllable",
            SystemKind::Jordan => "jordan",
        }
    }
}

impl std::str::FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        SystemKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown system kind '{s}'")))
    }
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of independent standard complex Gaussian entries (`E|z|^2 = 1`).
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Split `total` into `parts` positive integers, uniformly over compositions.
fn composition<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = (1..total).collect();
    for i in 0..parts - 1 {
        let j = rng.random_range(i..cuts.len());
        cuts.swap(i, j);
    }
    let mut chosen: Vec<usize> = cuts[..parts - 1].to_vec();
    chosen.sort_unstable();
    chosen.push(total);
    let mut prev = 0;
    chosen
        .into_iter()
        .map(|c| {
            let d = c - prev;
            prev = c;
            d
        })
        .collect()
}

fn jordan_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let distinct = rng.random_range(1..=n.saturating_sub(1).max(1));
    let mut j = Matrix::zeros(n, n);
    let mut pos = 0;
    for mult in composition(rng, n, distinct) {
        let lambda = complex_normal(rng);
        // each of the mult - 1 gaps between diagonal slots starts a new block with probability 1/2
        for k in 0..mult {
            j[(pos + k, pos + k)] = lambda;
            if k + 1 < mult && rng.random_bool(0.5) {
                j[(pos + k, pos + k + 1)] = Complex64::new(1.0, 0.0);
            }
        }
        pos += mult;
    }
    j
}

fn similarity<R: Rng>(rng: &mut R, n: usize) -> Result<(Matrix, Matrix)> {
    let tol = ToleranceConfig::default();
    for _ in 0..RETRY_BUDGET {
        let t = random_matrix(rng, n, n);
        let sv = rank_of(&t, &tol)?.singular_values;
        let smin = *sv.last().unwrap_or(&0.0);
        if smin > 0.0 && sv[0] / smin <= MAX_SIMILARITY_CONDITION {
            if let Some(inv) = t.clone().try_inverse() {
                return Ok((t, inv));
            }
        }
    }
    Err(Error::Generation(format!(
        "no {n}x{n} similarity with condition number <= {MAX_SIMILARITY_CONDITION} in {RETRY_BUDGET} draws"
    )))
}

/// Deterministic random system of the requested family.
pub fn random_system(n: usize, m: usize, p: usize, seed: u64, kind: SystemKind) -> Result<LtiSystem> {
    if n == 0 || m == 0 || p == 0 {
        return Err(Error::Generation(format!("dimensions must be >= 1, got n={n}, m={m}, p={p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = ToleranceConfig::default();
    let sys = match kind {
        SystemKind::Generic => LtiSystem::new(
            random_matrix(&mut rng, n, n),
            random_matrix(&mut rng, n, m),
            random_matrix(&mut rng, p, n),
        )?,
        SystemKind::RankDeficientC => {
            let a = random_matrix(&mut rng, n, n);
            let b = random_matrix(&mut rng, n, m);
            let r = (p - 1).min(n);
            let c = random_matrix(&mut rng, p, r) * random_matrix(&mut rng, r, n);
            LtiSystem::new(a, b, c)?
        }
        SystemKind::ForcedOutputControllable => {
            if p > n {
                return Err(Error::Generation(format!(
                    "a full-row-rank C needs p <= n, got p={p}, n={n}"
                )));
            }
            let mut found = None;
            for _ in 0..RETRY_BUDGET {
                let a = random_matrix(&mut rng, n, n);
                let c = random_matrix(&mut rng, p, n);
                if rank_of(&c, &tol)?.rank < p {
                    continue;
                }
                let b = c.adjoint() * random_matrix(&mut rng, p, m);
                let sys = LtiSystem::new(a, b, c)?;
                if kalman_output_test(&sys, &tol)?.is_positive() {
                    found = Some(sys);
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::Generation(format!(
                    "no output controllable draw for n={n}, m={m}, p={p} in {RETRY_BUDGET} attempts"
                ))
            })?
        }
        SystemKind::Jordan => {
            let j = jordan_matrix(&mut rng, n);
            let (t, t_inv) = similarity(&mut rng, n)?;
            LtiSystem::new(
                &t * j * t_inv,
                random_matrix(&mut rng, n, m),
                random_matrix(&mut rng, p, n),
            )?
        }
    };
    Ok(sys)
}
