//! Configuration, orchestration and output for the `lgryd` command.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::ScenarioConfig;
pub use error::CliError;
pub use run::Scenario;
