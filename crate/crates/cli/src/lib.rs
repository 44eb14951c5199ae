//! Command-line front end: argument handling, output encoding and the
//! on-disk coefficient cache.  [`run`] is the whole program minus the
//! process exit, so it can be driven from tests.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod output;

use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::cache::CoeffCache;
use crate::commands::Output;
use crate::error::{Result, EXIT_USAGE};
use crate::output::{write_records, write_table, Format};

/// Runs the program on `argv` (including the program name), writing results
/// to `out` and diagnostics to `err`; returns the process exit code.
pub fn run<I, T, O, E>(argv: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute<O: Write>(cli: &Cli, out: &mut O) -> Result<i32> {
    let cache = cli.cache.as_ref().map(CoeffCache::new);
    let cache = cache.as_ref();
    let output = match &cli.command {
        Command::Coeffs(a) => commands::coeffs(a, cli.digits, cli.format.is_none(), cache)?,
        Command::Eval(a) => commands::eval(a, cache)?,
        Command::Bounds(a) => commands::bounds(a, cache)?,
        Command::Remainder(a) => commands::remainder(a, cache)?,
        Command::Terminant(a) => commands::terminant(a)?,
        Command::Stokes(a) => commands::stokes(a)?,
        Command::Late(a) => commands::late(a, cli.digits, cache)?,
        Command::Selfcheck => {
            let ok = commands::selfcheck(out)?;
            return Ok(if ok { 0 } else { error::EXIT_FAILURE });
        }
    };
    match output {
        Output::Text(lines) => {
            for l in lines {
                writeln!(out, "{l}")?;
            }
        }
        Output::Records(r) => write_records(out, &r, cli.format.unwrap_or(Format::Json))?,
        Output::Table { header, rows, records } => match cli.format.unwrap_or(Format::Csv) {
            Format::Csv => write_table(out, &header, &rows)?,
            Format::Json => write_records(out, &records, Format::Json)?,
        },
    }
    if let Some(c) = cache {
        c.persist()?;
    }
    Ok(0)
}

