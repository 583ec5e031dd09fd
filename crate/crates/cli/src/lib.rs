//! Front end for `latact`: the action-file format, reports and subcommands.

pub mod action_file;
pub mod commands;
pub mod report;
