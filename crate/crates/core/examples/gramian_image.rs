//! The output Gramian and the Kalman output matrix span the same subspace.

use outctl::numerics::{hermitian_eigen, image_equal, output_gramian, state_gramian};
use outctl::{kalman_output_matrix, random_system, SystemKind, ToleranceConfig};

fn main() -> outctl::Result<()> {
    let tol = ToleranceConfig::default();
    for kind in [SystemKind::Generic, SystemKind::RankDeficientC, SystemKind::Jordan] {
        let sys = random_system(4, 2, 3, 2024, kind)?;
        let w = output_gramian(sys.c(), &state_gramian(sys.a(), sys.b(), 1.0)?);
        let eig = hermitian_eigen(&w)?;
        let cmp = image_equal(&w, &kalman_output_matrix(&sys), &tol)?;
        let values: Vec<String> = eig.values.iter().map(|v| format!("{v:.2e}")).collect();
        println!(
            "{:<18} eig(W) = [{}]  ranks {}/{}  largest principal angle {:.1e}",
            kind.as_str(),
            values.join(", "),
            cmp.rank_first,
            cmp.rank_second,
            cmp.max_principal_angle
        );
    }
    Ok(())
}
