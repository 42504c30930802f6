//! Minimum-energy steering of the output and export of the control signal.
//!
//! Pass a path to write the control as JSON: `cargo run --example steering -- u.json`.

use num_complex::Complex64;
use outctl::numerics::real_matrix;
use outctl::synthesis::steering_error;
use outctl::{min_norm_control, LtiSystem, SteeringProblem, ToleranceConfig, Vector};

fn main() -> outctl::Result<()> {
    // Double integrator: steer the position from rest to 1 in two seconds.
    let a = real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let b = real_matrix(2, 1, &[0.0, 1.0]);
    let c = real_matrix(1, 2, &[1.0, 0.0]);
    let sys = LtiSystem::new(a, b, c)?;

    let prob = SteeringProblem::new(sys, Vector::zeros(2), Vector::from_element(1, Complex64::from(1.0)), 2.0)?;
    let res = min_norm_control(&prob, 129, &ToleranceConfig::default())?;

    println!("energy {:.6} (velocity is free at T, so the optimum is 3/8)", res.energy);
    println!("residual on the synthesis grid {:.2e}", res.residual);
    println!("error on a refined grid {:.2e}", steering_error(&prob, &res.control)?);
    for k in 0..=4 {
        let t = 0.5 * k as f64;
        println!("  u({t:.1}) = {:+.4}", res.control.eval(t)[0].re);
    }

    if let Some(path) = std::env::args().nth(1) {
        res.control.write(&path)?;
        println!("control written to {path}");
    }
    Ok(())
}
