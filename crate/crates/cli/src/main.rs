mod args;
mod commands;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use report::{write_atomically, Report, EXIT_INTERNAL, EXIT_USAGE};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let command = argv[1..].join(" ");
    let start = Instant::now();
    let outcome = commands::run(&cli.command, cli.threads);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let report = match outcome {
        Ok((status, data)) => Report::new(command, status, data, ms),
        Err(e) => Report::from_error(command, e, ms),
    };
    let text = report.render(cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = write_atomically(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code as u8)
}
