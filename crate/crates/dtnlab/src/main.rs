use std::process::ExitCode;

use clap::Parser;
use dtnlab::{error_exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if (cli.output.csv || cli.output.obj) && cli.output.out_dir.is_none() {
        eprintln!(
            "error: --csv and --obj need --out-dir or {}",
            dtnlab::OUT_DIR_ENV
        );
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(outcome) => {
            if !cli.output.quiet {
                print!("{}", outcome.json);
            }
            for f in outcome.report.failures() {
                eprintln!(
                    "contract failed: {} = {:e} (required {} {:e})",
                    f.name, f.value, f.relation, f.bound
                );
            }
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
