//! Front end for the `adlv` binary: argument types, chart documents, SVG
//! figures, run reports and the verification suites.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;
pub mod suites;
pub mod svg;

pub use document::{ChartDocument, ChartLine};
pub use error::{CliError, CliResult};
pub use report::{Check, RunReport};
