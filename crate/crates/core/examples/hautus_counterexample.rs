//! The Hautus-type output test is necessary but not sufficient.
//!
//! Two nilpotent Jordan blocks share one input; each output observes the top
//! of a different block. The Kalman matrix has rank one, so only a line of
//! outputs is reachable, yet `[C(zI - A) | CB]` keeps full rank at z = 0.

use outctl::numerics::real_matrix;
use outctl::{cross_check, kalman_output_matrix, LtiSystem, ToleranceConfig};

fn main() -> outctl::Result<()> {
    let a = real_matrix(4, 4, &[0., 1., 0., 0., 0., 0., 0., 0., 0., 0., 0., 1., 0., 0., 0., 0.]);
    let b = real_matrix(4, 1, &[0., 1., 0., 1.]);
    let c = real_matrix(2, 4, &[1., 0., 0., 0., 0., 0., 1., 0.]);
    let sys = LtiSystem::new(a, b, c)?;

    println!("Kalman output matrix:\n{:.1}", kalman_output_matrix(&sys).map(|z| z.re));
    let report = cross_check(&sys, 1.0, &ToleranceConfig::default())?;
    for v in report.verdicts() {
        println!("  {}", v.summary());
    }
    for p in &report.hautus_output.points {
        println!(
            "  Hautus at z = {:.3}: rank {} (required {}), singular values {:.3?}",
            p.z, p.evidence.rank, p.evidence.required, p.evidence.singular_values
        );
    }
    println!("criteria agree: {}", report.agree);
    Ok(())
}
