//! Decision procedures for output controllability and the parallel
//! connection sufficiency check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lti_model::{parallel_connect, LtiSystem, SystemCollection};
use crate::numerics::{
    hermitian_eigen, output_gramian, rank_of, require_square, spectrum_of, state_gramian,
    HermitianEigen, Matrix, RankInfo, ToleranceConfig,
};
use crate::error::Error;

/// Horizon used when the caller does not pick one.
pub const DEFAULT_GRAMIAN_HORIZON: f64 = 1.0;

/// Margins inside `[1/BOUNDARY_FACTOR, BOUNDARY_FACTOR]` are treated as ambiguous.
pub const BOUNDARY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    OutputControllable,
    NotOutputControllable,
}

impl Decision {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Decision::OutputControllable
        } else {
            Decision::NotOutputControllable
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Kalman,
    HautusOutput,
    Gramian,
    /// Classical test on `(A, B)`; a positive decision means state controllability.
    HautusState,
}

/// Numbers a decision was based on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Rank found (for the Gramian: eigenvalues above the floor).
    pub rank: usize,
    /// Rank the criterion requires (`p`, or `n` for the state test).
    pub required: usize,
    /// Singular values (Gramian: eigenvalues) in non-increasing order.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    /// Deciding value over threshold; above one means positive.
    pub margin: f64,
}

impl Evidence {
    fn from_rank(info: RankInfo, required: usize) -> Self {
        Evidence {
            rank: info.rank,
            required,
            margin: info.margin(required),
            singular_values: info.singular_values,
            threshold: info.threshold,
        }
    }
}

/// Rank of the Hautus matrix at one spectral point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HautusPoint {
    pub z: Complex64,
    pub multiplicity: usize,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    pub criterion: Criterion,
    /// Evidence at the deciding point: the failing point with the smallest
    /// margin, or the weakest passing one.
    pub evidence: Evidence,
    /// Eigenvalue where a Hautus rank drops.
    pub witness: Option<Complex64>,
    /// Per-eigenvalue results of Hautus tests, sorted by `(re, im)`.
    pub points: Vec<HautusPoint>,
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        self.decision == Decision::OutputControllable
    }

    /// True when the deciding value is within a factor of ten of its threshold.
    pub fn near_boundary(&self) -> bool {
        let m = self.evidence.margin.abs();
        (1.0 / BOUNDARY_FACTOR..=BOUNDARY_FACTOR).contains(&m)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{:?}: {:?}, rank {} of {}",
            self.criterion, self.decision, self.evidence.rank, self.evidence.required
        );
        if let Some(z) = self.witness {
            s.push_str(&format!(", rank drops at z = {:.6}{:+.6}i", z.re, z.im));
        }
        s
    }
}

/// `(CB  CAB  ...  CA^{n-1}B)` as a `p x nm` block row.
pub fn kalman_output_matrix(sys: &LtiSystem) -> Matrix {
    extended_kalman_output_matrix(sys, sys.n())
}

/// The first `blocks` blocks `C A^k B`, built as `(C A^k) B` by repeated right
/// multiplication with `A`.
pub fn extended_kalman_output_matrix(sys: &LtiSystem, blocks: usize) -> Matrix {
    let (p, m) = (sys.p(), sys.m());
    let mut out = Matrix::zeros(p, m * blocks);
    let mut row_block = sys.c().clone();
    for k in 0..blocks {
        out.view_mut((0, k * m), (p, m)).copy_from(&(&row_block * sys.b()));
        if k + 1 < blocks {
            row_block = &row_block * sys.a();
        }
    }
    out
}

pub fn kalman_output_test(sys: &LtiSystem, tol: &ToleranceConfig) -> Result<Verdict> {
    let info = rank_of(&kalman_output_matrix(sys), tol)?;
    let p = sys.p();
    Ok(Verdict {
        decision: Decision::from_bool(info.rank == p),
        criterion: Criterion::Kalman,
        evidence: Evidence::from_rank(info, p),
        witness: None,
        points: Vec::new(),
    })
}

/// Run a rank test at every clustered eigenvalue of `a`.
fn hautus_scan(
    a: &Matrix,
    required: usize,
    criterion: Criterion,
    tol: &ToleranceConfig,
    matrix_at: impl Fn(Complex64) -> Matrix,
) -> Result<Verdict> {
    let spectrum = spectrum_of(a, tol)?;
    let mut points = Vec::with_capacity(spectrum.points.len());
    for sp in &spectrum.points {
        let info = rank_of(&matrix_at(sp.value), tol)?;
        points.push(HautusPoint {
            z: sp.value,
            multiplicity: sp.multiplicity,
            evidence: Evidence::from_rank(info, required),
        });
    }
    let weakest = |pts: &mut dyn Iterator<Item = &HautusPoint>| {
        pts.min_by(|x, y| x.evidence.margin.total_cmp(&y.evidence.margin)).cloned()
    };
    let failing = weakest(&mut points.iter().filter(|pt| pt.evidence.rank < required));
    let (decision, witness, evidence) = match failing {
        Some(pt) => (Decision::NotOutputControllable, Some(pt.z), pt.evidence),
        None => {
            let ev = weakest(&mut points.iter())
                .map(|pt| pt.evidence)
                .expect("a nonempty square matrix has at least one eigenvalue");
            (Decision::OutputControllable, None, ev)
        }
    };
    Ok(Verdict {
        decision,
        criterion,
        evidence,
        witness,
        points,
    })
}

/// `rank (zI - A  B) = n` at every eigenvalue `z` of `A`.
pub fn hautus_state_test(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Verdict> {
    let n = require_square("A", a)?;
    if b.nrows() != n {
        return Err(Error::dimension("B", "B row count != n", format!("{n}xm"), format!("{}x{}", b.nrows(), b.ncols())));
    }
    hautus_scan(a, n, Criterion::HautusState, tol, |z| {
        let mut h = Matrix::zeros(n, n + b.ncols());
        h.view_mut((0, 0), (n, n)).copy_from(&(Matrix::identity(n, n) * z - a));
        h.view_mut((0, n), (n, b.ncols())).copy_from(b);
        h
    })
}

/// `[C(zI - A) | CB]`, the `p x (n + m)` matrix probed by the output test.
pub fn hautus_output_matrix(sys: &LtiSystem, z: Complex64) -> Matrix {
    let (n, m, p) = (sys.n(), sys.m(), sys.p());
    let mut h = Matrix::zeros(p, n + m);
    h.view_mut((0, 0), (p, n))
        .copy_from(&(sys.c() * (Matrix::identity(n, n) * z - sys.a())));
    h.view_mut((0, n), (p, m)).copy_from(&(sys.c() * sys.b()));
    h
}

/// `rank (C(zI - A)  CB) = p` at every eigenvalue `z` of `A`.
///
/// Every output controllable system passes. The converse fails in general:
/// `A = diag(1, 2, 3)`, `B = e1`, `C = (0 1 1)` passes at each eigenvalue
/// while `C A^k B = 0` for all `k`. Treat a positive result as a necessary
/// condition unless the Kalman or Gramian test agrees.
pub fn hautus_output_test(sys: &LtiSystem, tol: &ToleranceConfig) -> Result<Verdict> {
    hautus_scan(sys.a(), sys.p(), Criterion::HautusOutput, tol, |z| hautus_output_matrix(sys, z))
}

/// Output controllability Gramian at one horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct Gramian {
    pub horizon: f64,
    pub matrix: Matrix,
    pub eigen: HermitianEigen,
}

impl Gramian {
    pub fn compute(sys: &LtiSystem, t: f64) -> Result<Self> {
        let p = state_gramian(sys.a(), sys.b(), t)?;
        let matrix = output_gramian(sys.c(), &p);
        let eigen = hermitian_eigen(&matrix)?;
        Ok(Gramian { horizon: t, matrix, eigen })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen.min()
    }
}

/// Positive definiteness of `W_out(t) = C P(t) C^H`.
pub fn gramian_output_test(sys: &LtiSystem, t: f64, tol: &ToleranceConfig) -> Result<(Verdict, Gramian)> {
    let g = Gramian::compute(sys, t)?;
    let floor = g.eigen.floor(tol);
    let lambda_min = g.min_eigenvalue();
    let rank = g.eigen.values.iter().filter(|&&v| v > floor).count();
    let verdict = Verdict {
        decision: Decision::from_bool(lambda_min > floor),
        criterion: Criterion::Gramian,
        evidence: Evidence {
            rank,
            required: sys.p(),
            singular_values: g.eigen.values.iter().rev().copied().collect(),
            threshold: floor,
            margin: lambda_min / floor,
        },
        witness: None,
        points: Vec::new(),
    };
    Ok((verdict, g))
}

/// Kalman, Hautus output and Gramian verdicts side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub kalman: Verdict,
    pub hautus_output: Verdict,
    pub gramian: Verdict,
    pub gramian_matrix: Gramian,
    pub agree: bool,
    pub tolerance_used: ToleranceConfig,
}

impl CrossCheckReport {
    pub fn verdicts(&self) -> [&Verdict; 3] {
        [&self.kalman, &self.hautus_output, &self.gramian]
    }

    /// Decision shared by all criteria, if they agree.
    pub fn decision(&self) -> Option<Decision> {
        self.agree.then_some(self.kalman.decision)
    }

    /// Disagreement explained by a deciding value close to its threshold.
    pub fn escaped(&self) -> bool {
        !self.agree && self.verdicts().iter().any(|v| v.near_boundary())
    }
}

pub fn cross_check(sys: &LtiSystem, t: f64, tol: &ToleranceConfig) -> Result<CrossCheckReport> {
    tol.validate()?;
    let kalman = kalman_output_test(sys, tol)?;
    let hautus_output = hautus_output_test(sys, tol)?;
    let (gramian, gramian_matrix) = gramian_output_test(sys, t, tol)?;
    let agree = kalman.decision == hautus_output.decision && kalman.decision == gramian.decision;
    Ok(CrossCheckReport {
        kalman,
        hautus_output,
        gramian,
        gramian_matrix,
        agree,
        tolerance_used: *tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelReport {
    pub connected_system: LtiSystem,
    /// Hautus output verdict of each member.
    pub members: Vec<Verdict>,
    /// No eigenvalue of one member lies within the clustering radius of another's.
    pub disjoint: bool,
    /// Smallest distance between eigenvalues of different members; `None` for one member.
    pub min_cross_gap: Option<f64>,
    /// All members pass and spectra are pairwise disjoint.
    pub applicable: bool,
    /// Hautus output verdict of the connected system.
    pub connected: Verdict,
}

impl ParallelReport {
    /// Applicable but the connected system failed: a counterexample to the
    /// sufficient condition (or a tolerance problem).
    pub fn conclusion_violated(&self) -> bool {
        self.applicable && !self.connected.is_positive()
    }
}

/// Spectral-disjointness sufficient condition for a parallel connection of
/// output controllable systems to remain output controllable.
pub fn parallel_sufficiency_check(coll: &SystemCollection, tol: &ToleranceConfig) -> Result<ParallelReport> {
    let connected_system = parallel_connect(coll)?;
    let members = coll
        .systems()
        .iter()
        .map(|s| hautus_output_test(s, tol))
        .collect::<Result<Vec<_>>>()?;
    let spectra = coll
        .systems()
        .iter()
        .map(|s| spectrum_of(s.a(), tol))
        .collect::<Result<Vec<_>>>()?;

    let mut disjoint = true;
    let mut min_gap: Option<f64> = None;
    for i in 0..spectra.len() {
        for j in i + 1..spectra.len() {
            let gap = spectra[i].min_gap(&spectra[j]);
            let radius = spectra[i].cluster_radius.max(spectra[j].cluster_radius);
            if gap <= radius {
                disjoint = false;
            }
            min_gap = Some(min_gap.map_or(gap, |g| g.min(gap)));
        }
    }
    let applicable = disjoint && members.iter().all(Verdict::is_positive);
    let connected = hautus_output_test(&connected_system, tol)?;
    Ok(ParallelReport {
        connected_system,
        members,
        disjoint,
        min_cross_gap: min_gap,
        applicable,
        connected,
    })
}
