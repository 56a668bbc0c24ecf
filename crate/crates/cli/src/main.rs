use std::io;
use std::process::ExitCode;

use bnq_cli::{run, Cli};
use clap::Parser;
use log::LevelFilter;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { bnq_cli::exit::INVALID_INPUT } else { bnq_cli::exit::OK });
        }
    };
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        _ => LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    ExitCode::from(run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock()))
}
