//! Decide output controllability of a small system with all three criteria.
//!
//! Run with `cargo run --example analyze`.

use outctl::numerics::real_matrix;
use outctl::{cross_check, LtiSystem, ToleranceConfig};

fn main() -> outctl::Result<()> {
    // A damped oscillator driven through its velocity and observed in both
    // coordinates. A single input still reaches every (position, velocity)
    // pair because the state itself is controllable.
    let a = real_matrix(2, 2, &[0.0, 1.0, -4.0, -0.4]);
    let b = real_matrix(2, 1, &[0.0, 1.0]);
    let c = real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0]);
    let sys = LtiSystem::new(a, b, c)?.with_name("oscillator");

    let report = cross_check(&sys, 1.0, &ToleranceConfig::default())?;
    for v in report.verdicts() {
        println!("{}", v.summary());
    }
    println!("smallest Gramian eigenvalue at t = 1: {:.3e}", report.gramian_matrix.min_eigenvalue());

    // Observing position only leaves a single output, which one input reaches.
    let position = sys.with_output(real_matrix(1, 2, &[1.0, 0.0]))?;
    let report = cross_check(&position, 1.0, &ToleranceConfig::default())?;
    println!("position only: {:?} (criteria agree: {})", report.decision(), report.agree);
    Ok(())
}
