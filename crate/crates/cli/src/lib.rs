//! Library half of the `charsum` binary. Each subcommand writes its records
//! to a sink and returns the process exit code, so tests can drive it in
//! process.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod records;
mod scan;
mod sum;
mod table;
mod verify;

pub use scan::{scan_range, ScanArgs};
pub use sum::SumArgs;
pub use table::TableArgs;
pub use verify::VerifyArgs;

/// All claims pass (or the command succeeded).
pub const EXIT_OK: i32 = 0;
/// At least one verdict failed or was skipped.
pub const EXIT_FAIL: i32 = 1;
/// Bad arguments, bad input, or a precondition violation.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "charsum",
    version,
    about = "Character sums over subgroups of F_p*"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one sum.
    Sum(SumArgs),
    /// Check identities and bounds over a range of moduli.
    Verify(VerifyArgs),
    /// Record extremal statistics for the open problems over a prime range.
    Scan(ScanArgs),
    /// Summarize a verify or scan output file as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Numeric,
    /// Exact when `p - 1 <= 10^4`, numeric above.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<charsum_core::Error> for UsageError {
    fn from(e: charsum_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(format!("io: {e}"))
    }
}

impl From<csv::Error> for UsageError {
    fn from(e: csv::Error) -> Self {
        UsageError(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for UsageError {
    fn from(e: serde_json::Error) -> Self {
        UsageError(format!("json: {e}"))
    }
}

/// Worker count: the flag, else `CHARSUM_WORKERS`, else the machine's
/// available parallelism.
pub(crate) fn resolve_workers(flag: Option<usize>) -> Result<usize, UsageError> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var("CHARSUM_WORKERS") {
            Ok(s) => s.trim().parse().map_err(|_| {
                UsageError(format!(
                    "CHARSUM_WORKERS must be a positive integer, got {s:?}"
                ))
            })?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if n == 0 {
        return Err(UsageError("worker count must be positive".into()));
    }
    Ok(n)
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool, UsageError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| UsageError(format!("thread pool: {e}")))
}

pub(crate) fn open_out<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, UsageError> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                UsageError(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(stdout),
    })
}

/// Runs a parsed command line.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Sum(args) => sum::run(&args, stdout),
        Command::Verify(args) => verify::run(&args, stdout, stderr),
        Command::Scan(args) => scan::run(&args, stdout),
        Command::Table(args) => table::run(&args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Parses `args` (including the program name) and runs them. Argument
/// errors print clap's diagnostic and return 2.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, stdout, stderr),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            }
        }
    }
}
