//! Command-line surface: configuration, the structure-constant cache,
//! reports, and the verification suites.

mod cache;
mod commands;
mod config;
mod props;
mod report;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use cache::{cache_path, load, store, CacheRecord, CachedClass, Contexts, CACHE_VERSION};
pub use commands::{cmd_blocks, cmd_fusion, cmd_verify};
pub use config::{Cli, Command, CommonArgs, FieldDegree, Format, GroupArg, JobConfig, Suite, CACHE_ENV, DEFAULT_MAX_TUPLES};
pub use report::{BlockRow, BlocksReport, FieldInfo, FusionOutput, Header, VerifyOutput};
pub use verify::{default_targets, run_suite, select_targets, Event, SuiteReport, Target};

use crate::error::Result;

/// Exit status for a passing run.
pub const EXIT_OK: i32 = 0;
/// A verdict or verification check failed.
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `args`, runs the command, writes the report to `out`, and returns
/// the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Blocks { common } => {
            let config = JobConfig::from_args(common)?;
            let report = cmd_blocks(&config)?;
            out.write_all(report.render(config.format)?.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Fusion { common, block } => {
            let config = JobConfig::from_args(common)?;
            let report = cmd_fusion(&config, *block)?;
            out.write_all(report.render(config.format)?.as_bytes())?;
            Ok(if report.falsified() { EXIT_FALSIFIED } else { EXIT_OK })
        }
        Command::Verify { suite, common } => {
            let config = JobConfig::from_args(common)?;
            let report = cmd_verify(&config, *suite)?;
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            out.write_all(report.render(config.format)?.as_bytes())?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FALSIFIED })
        }
    }
}
