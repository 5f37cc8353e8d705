//! Scripted scenarios with machine-checked assertions.

pub mod compare;
pub mod contextuality;
pub mod mp;
pub mod pbr;
pub mod report;

pub use compare::{compare_to_oracle, random_circuit, BackendComparison, ComparisonReport};
pub use report::{Assertion, ExperimentReport, DEFAULT_SIGMA};
