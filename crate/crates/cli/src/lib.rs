//! Front end for the `vacnoise` binary: configuration, commands, output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod validate;
