//! Scenario ingestion, named verification suites and report emission for
//! `displace-core`.

pub mod element;
pub mod runner;
pub mod scenario;
pub mod suites;

pub use runner::{run_scenario, RunError, Settings, SuiteReport};
pub use scenario::{ScenarioError, ScenarioSpec};
