use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;

pub const SPECTRUM_HEADER: [&str; 7] = ["omega", "C_d33", "C_d13", "C_d23", "C_d12", "C_d12p", "C_trace"];

/// Seventeen significant digits in scientific notation, e.g. `3.2000000000000002e0`.
/// Rust float formatting ignores the process locale.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn metadata(config: &RunConfig, command: &str) -> Value {
    json!({
        "library": "vacnoise",
        "version": vacnoise::VERSION,
        "command": command,
        "channels": vacnoise::ChannelSelect::from(config.channels).name(),
        "config": config,
    })
}

pub fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes the whole document at once, to `path` or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}
