//! Command-line front end: spectra, wavefunction samples, verification
//! reports and figure sweeps as CSV or JSON.

pub mod commands;
pub mod manifest;
pub mod output;

use std::io::Write;

use clap::Parser;
use serde::Serialize;

pub use manifest::{Cli, Command, Format, Options, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_MANIFEST: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
    value: Option<f64>,
}

/// Runs a validated manifest, writing output to `--out` or `stdout` and
/// errors to `stderr`. Returns the process exit code.
pub fn run(m: &RunManifest, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let rendered = match commands::execute(m) {
        Ok(r) => r,
        Err(e) => {
            let report = ErrorReport { error: e.kind(), message: e.to_string(), value: e.value() };
            let _ = stderr.write_all(&output::to_json(&report));
            return EXIT_CONSTRUCTION;
        }
    };
    let written = match &m.out {
        Some(path) => std::fs::write(path, &rendered.bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(&rendered.bytes).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "{msg}");
        return EXIT_INVALID_MANIFEST;
    }
    if rendered.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

/// Parses arguments, resolves the manifest and runs it.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_MANIFEST } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (command, options) = cli.command.split();
    match RunManifest::resolve(command, options) {
        Ok(m) => run(&m, stdout, stderr),
        Err(msg) => {
            let _ = writeln!(stderr, "invalid manifest: {msg}");
            EXIT_INVALID_MANIFEST
        }
    }
}
