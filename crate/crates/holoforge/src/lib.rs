pub mod commands;
pub mod data;
pub mod error;
pub mod matfile;
pub mod report;
pub mod repro;
pub mod spec;
pub mod suites;

pub use error::{Error, Result};
pub use report::{ReportBuilder, RunReport};
