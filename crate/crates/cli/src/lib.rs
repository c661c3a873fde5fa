//! Verification suites, demos and report plumbing behind the `liecv` binary.

pub mod config;
pub mod demo;
pub mod report;
pub mod suites;

pub use config::{Config, ConfigError, Profile};
pub use report::Check;
