//! Command-line front end over the JSON system format.
//!
//! Four subcommands: `analyze`, `synthesize`, `compose` and `crosscheck`.
//! The process exit status encodes the outcome so shell pipelines can branch
//! on it:
//!
//! | status | meaning                                   |
//! |--------|-------------------------------------------|
//! | 0      | output controllable / no unexplained disagreement |
//! | 1      | not output controllable (synthesis refused) |
//! | 2      | criteria disagree                          |
//! | 3      | error (bad input, unreachable target, failed verification) |
//!
//! [`run`] is the whole program; the `outctl` binary only forwards to it.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::controllability::{
    cross_check, parallel_sufficiency_check, CrossCheckReport, Decision, Verdict, DEFAULT_GRAMIAN_HORIZON,
};
use crate::error::{Error, Result};
use crate::lti_model::{random_system, read_system, to_json, vector_from_json, LtiSystem, SystemCollection, SystemKind};
use crate::numerics::{ToleranceConfig, Vector};
use crate::synthesis::{min_norm_control, steering_error, SteeringProblem, SteeringSummary, DEFAULT_GRID_NODES, DEFAULT_HORIZON};

pub const EXIT_CONTROLLABLE: i32 = 0;
pub const EXIT_NOT_CONTROLLABLE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "outctl", version, about = "Output controllability of linear time-invariant systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative singular-value threshold for numerical rank.
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    /// Absolute floor for positive eigenvalues of Hermitian matrices.
    #[arg(long, global = true)]
    pub tol_psd: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Where to write the command's artifact (report, control signal or composed system).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the Kalman, Hautus output and Gramian tests on one system.
    Analyze {
        system: PathBuf,
        /// Gramian horizon.
        #[arg(short = 't', long = "time", default_value_t = DEFAULT_GRAMIAN_HORIZON)]
        time: f64,
    },
    /// Compute the minimum-energy input steering the output to a target.
    Synthesize {
        system: PathBuf,
        /// Initial state: inline JSON array or a file holding one. Defaults to zero.
        #[arg(long)]
        x0: Option<String>,
        /// Output target: inline JSON array or a file holding one.
        #[arg(long = "y-target", visible_alias = "y")]
        y_target: String,
        #[arg(short = 'T', long = "horizon", default_value_t = DEFAULT_HORIZON)]
        horizon: f64,
        /// Number of grid nodes (4k + 1).
        #[arg(long, default_value_t = DEFAULT_GRID_NODES)]
        grid: usize,
        /// Relative tolerance of the refined-grid verification.
        #[arg(long, default_value_t = 1e-6)]
        rtol: f64,
    },
    /// Connect systems in parallel and check the spectral-disjointness condition.
    Compose {
        #[arg(required = true)]
        systems: Vec<PathBuf>,
    },
    /// Compare the criteria on seeded random systems.
    Crosscheck {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest n, m, p as `N,M,P` (or just `N`).
        #[arg(long, default_value = "6,4,4")]
        dims: Dims,
        #[arg(long, value_delimiter = ',', default_value = "generic,rank_deficient_c,jordan")]
        kinds: Vec<SystemKind>,
        #[arg(short = 't', long = "time", default_value_t = DEFAULT_GRAMIAN_HORIZON)]
        time: f64,
    },
}

/// Upper bounds for the random dimensions; each is drawn from `1..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub n: usize,
    pub m: usize,
    pub p: usize,
}

impl Default for Dims {
    fn default() -> Self {
        Dims { n: 6, m: 4, p: 4 }
    }
}

impl FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("--dims '{s}': {e}")))?;
        let dims = match parts[..] {
            [n] => Dims { n, ..Dims::default() },
            [n, m, p] => Dims { n, m, p },
            _ => return Err(Error::Parse(format!("--dims '{s}': expected N or N,M,P"))),
        };
        if dims.n == 0 || dims.m == 0 || dims.p == 0 {
            return Err(Error::Parse(format!("--dims '{s}': bounds must be at least 1")));
        }
        Ok(dims)
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub system: String,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub time: f64,
    pub kalman: Verdict,
    pub hautus_output: Verdict,
    pub gramian: Verdict,
    pub gramian_min_eigenvalue: f64,
    pub agree: bool,
    /// Disagreement explained by a value near its threshold.
    pub escaped: bool,
    pub tolerance_used: ToleranceConfig,
}

impl AnalyzeReport {
    fn new(system: String, sys: &LtiSystem, r: CrossCheckReport) -> Self {
        AnalyzeReport {
            system,
            n: sys.n(),
            m: sys.m(),
            p: sys.p(),
            time: r.gramian_matrix.horizon,
            gramian_min_eigenvalue: r.gramian_matrix.min_eigenvalue(),
            agree: r.agree,
            escaped: r.escaped(),
            tolerance_used: r.tolerance_used,
            kalman: r.kalman,
            hautus_output: r.hautus_output,
            gramian: r.gramian,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if !self.agree {
            EXIT_DISAGREE
        } else {
            decision_code(self.kalman.decision)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthesisStatus {
    Steered,
    VerificationFailed,
    Refused,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesizeReport {
    pub system: String,
    pub status: SynthesisStatus,
    pub steering: Option<SteeringSummary>,
    /// `|y(T) - y_target|` re-simulated on the refined grid.
    pub verification_error: Option<f64>,
    pub verification_rtol: f64,
    /// Hautus output verdict carrying the witness when synthesis is refused.
    pub refusal: Option<Verdict>,
    pub control_file: Option<String>,
    /// The control signal itself when no `--out` file was given.
    pub control: Option<serde_json::Value>,
}

impl SynthesizeReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            SynthesisStatus::Steered => EXIT_CONTROLLABLE,
            SynthesisStatus::Refused => EXIT_NOT_CONTROLLABLE,
            SynthesisStatus::VerificationFailed => EXIT_ERROR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComposeReport {
    pub systems: Vec<String>,
    pub members: Vec<Verdict>,
    pub disjoint: bool,
    pub min_cross_gap: Option<f64>,
    pub applicable: bool,
    pub connected: Verdict,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub output_file: Option<String>,
    /// The connected system itself when no `--out` file was given.
    pub connected_system: Option<serde_json::Value>,
}

impl ComposeReport {
    pub fn exit_code(&self) -> i32 {
        decision_code(self.connected.decision)
    }
}

fn decision_code(d: Decision) -> i32 {
    match d {
        Decision::OutputControllable => EXIT_CONTROLLABLE,
        Decision::NotOutputControllable => EXIT_NOT_CONTROLLABLE,
    }
}

// ---------------------------------------------------------------------------
// Crosscheck batch

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckConfig {
    pub seed: u64,
    pub samples: usize,
    pub dims: Dims,
    pub kinds: Vec<SystemKind>,
    pub time: f64,
    pub tol: ToleranceConfig,
}

impl CrosscheckConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        CrosscheckConfig {
            seed,
            samples,
            dims: Dims::default(),
            kinds: vec![SystemKind::Generic, SystemKind::RankDeficientC, SystemKind::Jordan],
            time: DEFAULT_GRAMIAN_HORIZON,
            tol: ToleranceConfig::default(),
        }
    }
}

/// Recipe for one random system of a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub index: usize,
    pub kind: SystemKind,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn build(&self) -> Result<LtiSystem> {
        random_system(self.n, self.m, self.p, self.seed, self.kind)
    }
}

/// Draw the batch recipes sequentially from one seeded stream.
///
/// Kinds cycle in the given order; `p` is capped at `n` for the forced kind,
/// which needs a full-row-rank `C`.
pub fn sample_specs(cfg: &CrosscheckConfig) -> Result<Vec<SampleSpec>> {
    if cfg.samples == 0 {
        return Err(Error::Domain("crosscheck needs at least one sample".into()));
    }
    if cfg.kinds.is_empty() {
        return Err(Error::Domain("crosscheck needs at least one system kind".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..cfg.samples)
        .map(|index| {
            let kind = cfg.kinds[index % cfg.kinds.len()];
            let n = rng.random_range(1..=cfg.dims.n);
            let m = rng.random_range(1..=cfg.dims.m);
            let mut p = rng.random_range(1..=cfg.dims.p);
            if kind == SystemKind::ForcedOutputControllable {
                p = p.min(n);
            }
            SampleSpec {
                index,
                kind,
                n,
                m,
                p,
                seed: rng.random(),
            }
        })
        .collect())
}

/// Everything needed to reproduce and triage one disagreeing instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDump {
    pub sample: SampleSpec,
    pub escaped: bool,
    pub system: serde_json::Value,
    pub kalman: Verdict,
    pub hautus_output: Verdict,
    pub gramian: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionCounts {
    pub output_controllable: usize,
    pub not_output_controllable: usize,
    pub mixed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckSummary {
    pub seed: u64,
    pub samples: usize,
    pub dims: Dims,
    pub kinds: Vec<SystemKind>,
    pub time: f64,
    pub tolerance_used: ToleranceConfig,
    pub agree: usize,
    pub disagree: usize,
    pub escaped: usize,
    pub unexplained: usize,
    pub decisions: DecisionCounts,
    /// Disagreeing instances in sample order.
    pub instances: Vec<InstanceDump>,
}

impl CrosscheckSummary {
    pub fn exit_code(&self) -> i32 {
        if self.unexplained > 0 {
            EXIT_DISAGREE
        } else {
            EXIT_CONTROLLABLE
        }
    }
}

/// Run the three criteria over a seeded batch.
///
/// Samples are evaluated in parallel; the result depends only on `cfg`.
pub fn crosscheck_batch(cfg: &CrosscheckConfig) -> Result<CrosscheckSummary> {
    cfg.tol.validate()?;
    let specs = sample_specs(cfg)?;
    let reports = specs
        .par_iter()
        .map(|s| {
            let sys = s.build()?;
            let r = cross_check(&sys, cfg.time, &cfg.tol)?;
            Ok((*s, sys, r))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut decisions = DecisionCounts::default();
    let mut instances = Vec::new();
    for (spec, sys, r) in reports {
        match r.decision() {
            Some(Decision::OutputControllable) => decisions.output_controllable += 1,
            Some(Decision::NotOutputControllable) => decisions.not_output_controllable += 1,
            None => {
                decisions.mixed += 1;
                instances.push(InstanceDump {
                    sample: spec,
                    escaped: r.escaped(),
                    system: serde_json::from_str(&to_json(&sys))?,
                    kalman: r.kalman,
                    hautus_output: r.hautus_output,
                    gramian: r.gramian,
                });
            }
        }
    }
    let escaped = instances.iter().filter(|d| d.escaped).count();
    Ok(CrosscheckSummary {
        seed: cfg.seed,
        samples: cfg.samples,
        dims: cfg.dims,
        kinds: cfg.kinds.clone(),
        time: cfg.time,
        tolerance_used: cfg.tol,
        agree: cfg.samples - instances.len(),
        disagree: instances.len(),
        escaped,
        unexplained: instances.len() - escaped,
        decisions,
        instances,
    })
}

// ---------------------------------------------------------------------------
// Driver

/// Parse `args` (including the program name) and run; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { EXIT_ERROR };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn tolerances(cli: &Cli) -> Result<ToleranceConfig> {
    let mut tol = ToleranceConfig::default();
    if let Some(r) = cli.tol_rank {
        tol.rank_rtol = r;
    }
    if let Some(p) = cli.tol_psd {
        tol.psd_atol = p;
    }
    tol.validate()?;
    Ok(tol)
}

/// Inline JSON array, or the path of a file containing one.
fn vector_arg(flag: &str, value: &str) -> Result<Vector> {
    let text = if value.trim_start().starts_with('[') {
        value.to_string()
    } else {
        std::fs::read_to_string(value).map_err(|e| Error::Parse(format!("{flag} {value}: {e}")))?
    };
    vector_from_json(&text).map_err(|e| Error::Parse(format!("{flag}: {e}")))
}

fn emit<R: Serialize>(cli: &Cli, out: &mut dyn Write, report: &R, human: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(report)?)?,
        Format::Human => human(out)?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Analyze { system, time } => {
            let sys = read_system(system)?;
            let report = AnalyzeReport::new(system.display().to_string(), &sys, cross_check(&sys, *time, &tol)?);
            if let Some(path) = &cli.out {
                std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
            }
            emit(cli, out, &report, |w| print_analyze(w, &report))?;
            Ok(report.exit_code())
        }
        Command::Synthesize {
            system,
            x0,
            y_target,
            horizon,
            grid,
            rtol,
        } => {
            let sys = read_system(system)?;
            let x0 = match x0 {
                Some(v) => vector_arg("--x0", v)?,
                None => Vector::zeros(sys.n()),
            };
            let y = vector_arg("--y-target", y_target)?;
            let report = synthesize(system.display().to_string(), sys, x0, y, *horizon, *grid, *rtol, &tol, cli.out.as_deref())?;
            emit(cli, out, &report, |w| print_synthesize(w, &report))?;
            Ok(report.exit_code())
        }
        Command::Compose { systems } => {
            let members = systems.iter().map(read_system).collect::<Result<Vec<_>>>()?;
            let coll = SystemCollection::new(members)?;
            let r = parallel_sufficiency_check(&coll, &tol)?;
            let (output_file, connected_system) = match &cli.out {
                Some(path) => {
                    crate::lti_model::write_system(path, &r.connected_system)?;
                    (Some(path.display().to_string()), None)
                }
                None => (None, Some(serde_json::from_str(&to_json(&r.connected_system))?)),
            };
            let report = ComposeReport {
                systems: systems.iter().map(|p| p.display().to_string()).collect(),
                n: r.connected_system.n(),
                m: r.connected_system.m(),
                p: r.connected_system.p(),
                members: r.members,
                disjoint: r.disjoint,
                min_cross_gap: r.min_cross_gap,
                applicable: r.applicable,
                connected: r.connected,
                output_file,
                connected_system,
            };
            emit(cli, out, &report, |w| print_compose(w, &report))?;
            Ok(report.exit_code())
        }
        Command::Crosscheck {
            seed,
            samples,
            dims,
            kinds,
            time,
        } => {
            let cfg = CrosscheckConfig {
                seed: *seed,
                samples: *samples,
                dims: *dims,
                kinds: kinds.clone(),
                time: *time,
                tol,
            };
            let summary = crosscheck_batch(&cfg)?;
            if let Some(path) = &cli.out {
                std::fs::write(path, serde_json::to_string_pretty(&summary)? + "\n")?;
            }
            emit(cli, out, &summary, |w| print_crosscheck(w, &summary))?;
            Ok(summary.exit_code())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn synthesize(
    name: String,
    sys: LtiSystem,
    x0: Vector,
    y: Vector,
    horizon: f64,
    grid: usize,
    rtol: f64,
    tol: &ToleranceConfig,
    out: Option<&Path>,
) -> Result<SynthesizeReport> {
    let prob = SteeringProblem::new(sys, x0, y.clone(), horizon)?;
    let result = match min_norm_control(&prob, grid, tol) {
        Ok(r) => r,
        Err(Error::NotOutputControllable(verdict)) => {
            return Ok(SynthesizeReport {
                system: name,
                status: SynthesisStatus::Refused,
                steering: None,
                verification_error: None,
                verification_rtol: rtol,
                refusal: Some(*verdict),
                control_file: None,
                control: None,
            })
        }
        Err(e) => return Err(e),
    };
    let error = steering_error(&prob, &result.control)?;
    let verified = error <= rtol * (1.0 + y.norm());
    let (control_file, control) = match out {
        Some(path) => {
            result.control.write(path)?;
            (Some(path.display().to_string()), None)
        }
        None => (None, Some(serde_json::from_str(&result.control.to_json())?)),
    };
    Ok(SynthesizeReport {
        system: name,
        status: if verified {
            SynthesisStatus::Steered
        } else {
            SynthesisStatus::VerificationFailed
        },
        steering: Some(result.summary()),
        verification_error: Some(error),
        verification_rtol: rtol,
        refusal: None,
        control_file,
        control,
    })
}

// ---------------------------------------------------------------------------
// Human-readable output

fn decision_str(d: Decision) -> &'static str {
    match d {
        Decision::OutputControllable => "output controllable",
        Decision::NotOutputControllable => "NOT output controllable",
    }
}

fn print_verdict(w: &mut dyn Write, label: &str, v: &Verdict) -> std::io::Result<()> {
    write!(
        w,
        "  {label:<14} {:<24} rank {}/{}  margin {:.3e}",
        decision_str(v.decision),
        v.evidence.rank,
        v.evidence.required,
        v.evidence.margin
    )?;
    if let Some(z) = v.witness {
        write!(w, "  witness z = {:.6}{:+.6}i", z.re, z.im)?;
    }
    writeln!(w)
}

fn print_analyze(w: &mut dyn Write, r: &AnalyzeReport) -> std::io::Result<()> {
    writeln!(w, "{} (n={}, m={}, p={})", r.system, r.n, r.m, r.p)?;
    print_verdict(w, "kalman", &r.kalman)?;
    print_verdict(w, "hautus_output", &r.hautus_output)?;
    print_verdict(w, "gramian", &r.gramian)?;
    writeln!(w, "  gramian min eigenvalue at t={}: {:.6e}", r.time, r.gramian_min_eigenvalue)?;
    if r.agree {
        writeln!(w, "criteria agree: {}", decision_str(r.kalman.decision))
    } else if r.escaped {
        writeln!(w, "criteria DISAGREE (a deciding value is within 10x of its threshold)")
    } else {
        writeln!(w, "criteria DISAGREE")
    }
}

fn print_synthesize(w: &mut dyn Write, r: &SynthesizeReport) -> std::io::Result<()> {
    writeln!(w, "{}", r.system)?;
    if let Some(v) = &r.refusal {
        writeln!(w, "refused: system is not output controllable")?;
        return print_verdict(w, "hautus_output", v);
    }
    if let Some(s) = &r.steering {
        writeln!(w, "  horizon {}  nodes {}", s.horizon, s.nodes)?;
        writeln!(w, "  residual {:.3e}  energy {:.6e}", s.residual, s.energy)?;
    }
    if let Some(e) = r.verification_error {
        let ok = r.status == SynthesisStatus::Steered;
        writeln!(
            w,
            "  refined-grid error {:.3e} (rtol {:.1e}): {}",
            e,
            r.verification_rtol,
            if ok { "verified" } else { "FAILED" }
        )?;
    }
    match &r.control_file {
        Some(f) => writeln!(w, "  control written to {f}"),
        None => writeln!(w, "  control not written (pass --out FILE)"),
    }
}

fn print_compose(w: &mut dyn Write, r: &ComposeReport) -> std::io::Result<()> {
    for (name, v) in r.systems.iter().zip(&r.members) {
        print_verdict(w, name, v)?;
    }
    match r.min_cross_gap {
        Some(g) => writeln!(w, "spectra disjoint: {} (min cross gap {:.3e})", r.disjoint, g)?,
        None => writeln!(w, "spectra disjoint: {} (single member)", r.disjoint)?,
    }
    writeln!(w, "disjointness condition applicable: {}", r.applicable)?;
    writeln!(w, "connected system (n={}, m={}, p={}):", r.n, r.m, r.p)?;
    print_verdict(w, "hautus_output", &r.connected)?;
    if let Some(f) = &r.output_file {
        writeln!(w, "connected system written to {f}")?;
    }
    Ok(())
}

fn print_crosscheck(w: &mut dyn Write, s: &CrosscheckSummary) -> std::io::Result<()> {
    let kinds: Vec<&str> = s.kinds.iter().map(|k| k.as_str()).collect();
    writeln!(
        w,
        "crosscheck seed={} samples={} dims<={},{},{} kinds={} t={}",
        s.seed,
        s.samples,
        s.dims.n,
        s.dims.m,
        s.dims.p,
        kinds.join(","),
        s.time
    )?;
    writeln!(
        w,
        "agree {}  disagree {} (escaped {}, unexplained {})",
        s.agree, s.disagree, s.escaped, s.unexplained
    )?;
    writeln!(
        w,
        "decisions: output_controllable {}  not_output_controllable {}  mixed {}",
        s.decisions.output_controllable, s.decisions.not_output_controllable, s.decisions.mixed
    )?;
    for d in &s.instances {
        writeln!(
            w,
            "instance #{} {} n={} m={} p={} seed={}{}",
            d.sample.index,
            d.sample.kind,
            d.sample.n,
            d.sample.m,
            d.sample.p,
            d.sample.seed,
            if d.escaped { " (escaped)" } else { "" }
        )?;
        print_verdict(w, "kalman", &d.kalman)?;
        print_verdict(w, "hautus_output", &d.hautus_output)?;
        print_verdict(w, "gramian", &d.gramian)?;
        writeln!(w, "  {}", serde_json::to_string(d).unwrap_or_default())?;
    }
    Ok(())
}
