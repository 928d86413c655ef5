//! Configuration, suite dispatch and reporting for the `cherednik` binary.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{parse_config, ConfigError, Parameters, RunConfig};
pub use report::{CheckReport, RunReport, Status};
pub use suites::{run_suite, Suite};
