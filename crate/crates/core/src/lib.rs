//! Output controllability of finite-dimensional LTI systems
//! `x' = Ax + Bu`, `y = Cx` over the complex field.
//!
//! The crate decides whether every output target is reachable using three
//! independent criteria that must agree:
//!
//! - the Kalman output rank test on `(CB CAB ... CA^{n-1}B)`,
//! - the Hautus-type output test `rank (C(zI-A) CB) = p` at every eigenvalue,
//! - positive definiteness of the output controllability Gramian.
//!
//! It also builds parallel connections of systems sharing an input, checks the
//! spectral-disjointness sufficient condition for them, and synthesizes
//! minimum-energy open-loop inputs that steer the output to a target.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability, and the `outctl` binary for the JSON command-line front end.

pub mod cli;
pub mod controllability;
pub mod error;
pub mod lti_model;
pub mod numerics;
pub mod synthesis;

pub use controllability::{
    cross_check, gramian_output_test, BOUNDARY_FACTOR, hautus_output_test, hautus_state_test,
    kalman_output_matrix, kalman_output_test, parallel_sufficiency_check, Criterion,
    CrossCheckReport, Decision, ParallelReport, Verdict,
};
pub use error::{Error, Result};
pub use lti_model::{parallel_connect, random_system, LtiSystem, SystemCollection, SystemKind};
pub use numerics::{Matrix, ToleranceConfig, Vector};
pub use synthesis::{
    min_norm_control, simulate, verify_steering, ControlSignal, SteeringProblem, SteeringResult,
};
