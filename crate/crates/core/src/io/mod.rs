//! Scenario files, SVG scenes and the command-line front end.

pub mod cli;
mod scenario;
pub mod svg;

pub use scenario::{FtiInput, Scenario, StrataInput, StratumInput, SuiteInput, SCHEMA};
