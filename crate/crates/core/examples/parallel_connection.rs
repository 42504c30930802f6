//! Parallel connection of systems sharing one input.
//!
//! When every member is output controllable and no two members share an
//! eigenvalue, the connection stays output controllable. Identical members
//! break the condition and the connection indeed loses controllability.

use outctl::numerics::real_matrix;
use outctl::{parallel_sufficiency_check, LtiSystem, SystemCollection, ToleranceConfig};

fn first_order(pole: f64) -> outctl::Result<LtiSystem> {
    LtiSystem::new(real_matrix(1, 1, &[pole]), real_matrix(1, 1, &[1.0]), real_matrix(1, 1, &[1.0]))
}

fn show(label: &str, members: Vec<LtiSystem>) -> outctl::Result<()> {
    let report = parallel_sufficiency_check(&SystemCollection::new(members)?, &ToleranceConfig::default())?;
    println!("{label}");
    println!("  members pass: {}", report.members.iter().all(|v| v.is_positive()));
    println!("  spectra disjoint: {} (closest gap {:?})", report.disjoint, report.min_cross_gap);
    println!("  condition applies: {}", report.applicable);
    println!("  connected system: {}", report.connected.summary());
    Ok(())
}

fn main() -> outctl::Result<()> {
    show("poles -1 and -2", vec![first_order(-1.0)?, first_order(-2.0)?])?;
    show("two copies of pole -1", vec![first_order(-1.0)?, first_order(-1.0)?])?;
    Ok(())
}
