//! Command surface of the `tensemv` tool: the input document format, the
//! verbs, and their text and JSON reports.

pub mod commands;
pub mod doc;
pub mod error;
pub mod report;

pub use doc::SpecDocument;
pub use error::CliError;
pub use report::Report;
