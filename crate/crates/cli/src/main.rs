use std::io::Write;
use std::process::ExitCode;

use bsf_cli::commands::{self, Cli};
use bsf_cli::CliError;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = commands::run(&cli);
    let mut out = std::io::stdout().lock();
    match result {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::CheckReport(report)) => {
            let _ = out.write_all(report.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
