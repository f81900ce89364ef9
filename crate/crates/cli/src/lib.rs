//! Command-line front end: builds chains, extracts spectra, runs verification
//! suites, solves for Q-functions and renders reports.

pub mod commands;
pub mod config;
pub mod instances;
pub mod report;
pub mod suites;

pub use commands::{run, Outcome};
pub use config::{Cli, Command, Format, Model, RunConfig, Suite, TopologyArg};
pub use report::{Record, Report, Summary};
