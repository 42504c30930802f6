mod common;

use num_complex::Complex64;
use outctl::controllability::hautus_output_matrix;
use outctl::numerics::{rank_of, real_matrix, spectrum_of};
use outctl::{
    cross_check, gramian_output_test, hautus_output_test, hautus_state_test, kalman_output_test, random_system,
    LtiSystem, Matrix, SystemKind, ToleranceConfig, Verdict,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_matrix;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn robust_kind() -> impl Strategy<Value = SystemKind> {
    prop::sample::select(vec![
        SystemKind::Generic,
        SystemKind::RankDeficientC,
        SystemKind::ForcedOutputControllable,
    ])
}

fn system(seed: u64, n: usize, m: usize, p: usize, kind: SystemKind) -> LtiSystem {
    let p = if kind == SystemKind::ForcedOutputControllable { p.min(n) } else { p };
    random_system(n, m, p, seed, kind).unwrap()
}

/// Well-conditioned invertible matrix `I + 0.3 G`, redrawn until invertible.
fn well_conditioned(seed: u64, n: usize) -> (Matrix, Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let t = Matrix::identity(n, n) + random_matrix(&mut rng, n, n).scale(0.3);
        if let Some(inv) = t.clone().try_inverse() {
            if t.norm() * inv.norm() < 100.0 {
                return (t, inv);
            }
        }
    }
}

fn same_decision(a: &Verdict, b: &Verdict) -> bool {
    a.decision == b.decision || a.near_boundary() || b.near_boundary()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decisions_survive_similarity(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 1usize..4, kind in robust_kind()) {
        let sys = system(seed, n, m, p, kind);
        let (t, t_inv) = well_conditioned(seed ^ 0xabc, n);
        let moved = sys.transformed(&t, &t_inv).unwrap();
        let (a, b) = (cross_check(&sys, 1.0, &tol()).unwrap(), cross_check(&moved, 1.0, &tol()).unwrap());
        prop_assert!(same_decision(&a.kalman, &b.kalman));
        prop_assert!(same_decision(&a.hautus_output, &b.hautus_output));
        prop_assert!(same_decision(&a.gramian, &b.gramian));
    }

    #[test]
    fn decisions_survive_output_change_of_basis(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 1usize..4, kind in robust_kind()) {
        let sys = system(seed, n, m, p, kind);
        let (s, _) = well_conditioned(seed ^ 0xdef, sys.p());
        let moved = sys.with_output(&s * sys.c()).unwrap();
        let (a, b) = (cross_check(&sys, 1.0, &tol()).unwrap(), cross_check(&moved, 1.0, &tol()).unwrap());
        prop_assert!(same_decision(&a.kalman, &b.kalman));
        prop_assert!(same_decision(&a.hautus_output, &b.hautus_output));
        prop_assert!(same_decision(&a.gramian, &b.gramian));
    }

    #[test]
    fn kalman_positive_implies_hautus_positive(seed in any::<u64>(), n in 1usize..7, m in 1usize..4, p in 1usize..5) {
        for kind in [SystemKind::Generic, SystemKind::Jordan, SystemKind::RankDeficientC] {
            let sys = system(seed, n, m, p, kind);
            let k = kalman_output_test(&sys, &tol()).unwrap();
            let h = hautus_output_test(&sys, &tol()).unwrap();
            prop_assert!(!k.is_positive() || h.is_positive() || k.near_boundary() || h.near_boundary());
        }
    }

    #[test]
    fn gramian_agrees_with_kalman_off_the_boundary(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 1usize..4, kind in robust_kind()) {
        let sys = system(seed, n, m, p, kind);
        let k = kalman_output_test(&sys, &tol()).unwrap();
        let (g, _) = gramian_output_test(&sys, 1.0, &tol()).unwrap();
        prop_assert!(same_decision(&k, &g));
    }

    #[test]
    fn hautus_rank_off_the_spectrum_is_rank_c(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 1usize..5, kind in robust_kind()) {
        let sys = system(seed, n, m, p, kind);
        let spec = spectrum_of(sys.a(), &tol()).unwrap();
        // A point at distance >= 1 from every eigenvalue.
        let far = spec.raw.iter().map(|z| z.norm()).fold(0.0, f64::max) + 1.0;
        let z = Complex64::new(far, 0.5);
        let rank_c = rank_of(sys.c(), &tol()).unwrap().rank;
        let rank_h = rank_of(&hautus_output_matrix(&sys, z), &tol()).unwrap().rank;
        prop_assert_eq!(rank_h, rank_c);
    }

    #[test]
    fn identity_output_reduces_to_state_test(seed in any::<u64>(), n in 1usize..7, m in 1usize..4) {
        for kind in [SystemKind::Generic, SystemKind::Jordan] {
            let (a, b, _) = random_system(n, m, 1, seed, kind).unwrap().into_parts();
            let sys = LtiSystem::new(a.clone(), b.clone(), Matrix::identity(n, n)).unwrap();
            let out = hautus_output_test(&sys, &tol()).unwrap();
            let state = hautus_state_test(&a, &b, &tol()).unwrap();
            prop_assert_eq!(out.decision, state.decision);
            prop_assert_eq!(out.witness, state.witness);
        }
    }

    #[test]
    fn rank_deficient_output_fails_everything(seed in any::<u64>(), n in 1usize..7, m in 1usize..5, p in 1usize..5) {
        let sys = system(seed, n, m, p, SystemKind::RankDeficientC);
        let r = cross_check(&sys, 1.0, &tol()).unwrap();
        prop_assert!(r.verdicts().iter().all(|v| !v.is_positive()));
        prop_assert!(r.hautus_output.witness.is_some());
    }

    #[test]
    fn forced_systems_pass_everything(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 1usize..4) {
        let sys = system(seed, n, m, p, SystemKind::ForcedOutputControllable);
        let r = cross_check(&sys, 1.0, &tol()).unwrap();
        prop_assert!(r.verdicts().iter().all(|v| v.is_positive() || v.near_boundary()));
    }

    #[test]
    fn witness_only_on_negative_hautus(seed in any::<u64>(), n in 1usize..6, m in 1usize..4, p in 1usize..4, kind in robust_kind()) {
        let sys = system(seed, n, m, p, kind);
        let r = cross_check(&sys, 1.0, &tol()).unwrap();
        prop_assert_eq!(r.hautus_output.witness.is_some(), !r.hautus_output.is_positive());
        prop_assert!(r.kalman.witness.is_none() && r.gramian.witness.is_none());
    }
}

#[test]
fn hautus_output_alone_can_be_fooled() {
    // Two Jordan blocks at 0 observed so that each output sees a different
    // block; one input cannot drive both independently, yet no single
    // eigenvalue exposes a rank drop of [C(zI - A) | CB].
    let a = real_matrix(
        4,
        4,
        &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    );
    let b = real_matrix(4, 1, &[0.0, 1.0, 0.0, 1.0]);
    let c = real_matrix(2, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let sys = LtiSystem::new(a, b, c).unwrap();
    let r = cross_check(&sys, 1.0, &tol()).unwrap();
    assert!(!r.kalman.is_positive());
    assert!(!r.gramian.is_positive());
    assert!(r.hautus_output.is_positive());
    assert!(!r.agree);
}
