//! Experiment harness, file formats and command-line front end for
//! `cmab-core`.

pub mod cli;
pub mod config;
pub mod harness;
pub mod output;

pub use config::{
    builtin_scenario, ConfigError, Experiment, OracleMode, PolicyName, RunConfig, Scenario,
};
pub use harness::{
    compare, run, run_experiment, Comparison, HarnessError, RunOutput, Summary, TraceRow,
};
