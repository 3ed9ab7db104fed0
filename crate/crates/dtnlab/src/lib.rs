//! File formats and the command-line front end of the DtN laboratory.
//!
//! Every subcommand resolves its flags into a [`cli::Cli`] (the run
//! configuration), calls into `dtnlab-core`, and produces a [`report::Report`]:
//! JSON data, a list of pass/fail contracts, optional CSV tables and an
//! optional OBJ mesh. The exit code is 0 when every contract passes, 1 when one
//! fails or a computation errors, 2 on usage errors.

pub mod cli;
pub mod export;
pub mod report;
pub mod studies;

use std::path::PathBuf;

use anyhow::Result;

pub use cli::{Cli, Command};
pub use report::{Contract, Report};

/// Environment variable giving the default artifact directory.
pub const OUT_DIR_ENV: &str = "DTNLAB_OUT_DIR";

/// Report and rendered JSON for one run, plus the files written.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub json: String,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Execute the configured study and write its artifacts.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let report = studies::run(&cli.command)?;
    let json = report::render(cli, &report)?;
    let files = match &cli.output.out_dir {
        Some(dir) => export::write_artifacts(dir, cli, &report, &json)?,
        None => Vec::new(),
    };
    Ok(Outcome {
        report,
        json,
        files,
    })
}

/// Exit code for an error: 2 for malformed input, 1 otherwise.
pub fn error_exit_code(err: &anyhow::Error) -> i32 {
    use dtnlab_core::Error as E;
    match err.downcast_ref::<E>() {
        Some(
            E::Parse { .. }
            | E::InvalidArgument(_)
            | E::UnsupportedDimension(_)
            | E::InvalidIndex { .. },
        ) => 2,
        _ => 1,
    }
}
