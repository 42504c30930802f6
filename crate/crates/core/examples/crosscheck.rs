//! Seeded batch cross-validation of the three criteria.

use outctl::cli::{crosscheck_batch, CrosscheckConfig};

fn main() -> outctl::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let summary = crosscheck_batch(&CrosscheckConfig::new(seed, 300))?;
    println!(
        "seed {seed}: {} samples, {} agree, {} disagree ({} near a threshold, {} unexplained)",
        summary.samples, summary.agree, summary.disagree, summary.escaped, summary.unexplained
    );
    println!(
        "decisions: {} controllable, {} not, {} mixed",
        summary.decisions.output_controllable, summary.decisions.not_output_controllable, summary.decisions.mixed
    );
    for inst in &summary.instances {
        println!(
            "  sample {} ({:?}, n = {}): kalman margin {:.3}, hautus margin {:.3}",
            inst.sample.index,
            inst.sample.kind,
            inst.sample.n,
            inst.kalman.evidence.margin,
            inst.hautus_output.evidence.margin
        );
    }
    Ok(())
}
