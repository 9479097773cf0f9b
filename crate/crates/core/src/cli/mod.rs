//! The `qft` command-line front end.

mod commands;
mod config;
mod fnspec;
mod selfcheck;

use std::ffi::OsString;
use std::io::Write;

pub use commands::{run, Report};
pub use config::{parse_config, Command, Format, Grid, RunConfig, UsageError};
pub use fnspec::parse_function;
pub use selfcheck::{run_selfcheck, CheckResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn error_json(kind: &str, field: Option<&str>, message: &str) -> String {
    let mut obj = serde_json::json!({ "error": { "kind": kind, "message": message } });
    if let Some(field) = field {
        obj["error"]["field"] = field.into();
    }
    obj.to_string()
}

/// Parse, run, and write outputs. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_config(args, None) {
        Ok(c) => c,
        Err(e) if e.is_informational() => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(UsageError::Clap(e)) => {
            eprint!("{}", e.render());
            return EXIT_USAGE;
        }
        Err(UsageError::Invalid { field, message }) => {
            eprintln!("{}", error_json("usage", Some(field), &message));
            return EXIT_USAGE;
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), None, &e.to_string()));
            return EXIT_FAILURE;
        }
    };
    let written = match config.out_path() {
        Some(path) => std::fs::write(path, &report.body).map(|_| {
            for line in &report.notes {
                println!("{line}");
            }
        }),
        None => std::io::stdout()
            .write_all(report.body.as_bytes())
            .map(|_| {
                for line in &report.notes {
                    eprintln!("{line}");
                }
            }),
    };
    if let Err(e) = written {
        eprintln!("{}", error_json("io", None, &e.to_string()));
        return EXIT_FAILURE;
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}
