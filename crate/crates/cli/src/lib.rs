//! Command implementations and report rendering for the `kirwan` binary.

pub mod commands;
pub mod report;
