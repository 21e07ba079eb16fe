//! Randomized verification, matrix file I/O and report formats for the
//! inequalities in [`meanbound_core`].

pub mod claims;
pub mod config;
pub mod error;
pub mod harness;
pub mod matrix_io;
pub mod number;
pub mod report;
pub mod rng;
pub mod sampling;

pub use config::{Selection, SuiteConfig};
pub use error::{Error, Result};
pub use harness::{
    boundary_probe, replay_scalar, run_comparison_suite, run_operator_suite, run_scalar_suite, run_suites,
};
pub use report::{SuiteReport, TrialRecord};
pub use sampling::{random_spd, sample_weight, Region};
