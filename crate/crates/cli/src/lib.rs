//! Library surface of the command line, split out so the scenario parser and
//! command implementations are testable in-process.

pub mod commands;
pub mod output;
pub mod scenario;
