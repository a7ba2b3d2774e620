//! Instance files, reports and subcommands of the `reflexive` tool.

pub mod commands;
pub mod instance_file;
pub mod load;
pub mod report;
