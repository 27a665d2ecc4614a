//! Batch verification harness: experiment configs, machine-readable reports,
//! and the built-in identity suites behind the CLI.
//!
//! Reports are deterministic: given the same config and seed, two runs
//! produce byte-identical output (no timestamps or timing data are written
//! into report files; the CLI logs timing to stderr instead).

pub mod config;
pub mod report;
pub mod runner;
pub mod suites;

pub use config::{CaseConfig, ExperimentConfig, FieldSpec, PairSpec, SurfaceSpec};
pub use report::{CaseResult, CheckResult, RunReport, Summary};
pub use runner::execute;
pub use suites::{list_suites, run_suite, SuiteInfo};
