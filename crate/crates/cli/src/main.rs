use std::process::ExitCode;

use clap::Parser;
use entbreak_cli::args::Cli;
use entbreak_cli::{run, CliError, Streams};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr());
    let mut streams = Streams {
        out: &mut out,
        err: &mut err,
    };
    match run(cli, &mut streams) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            for note in e.notes() {
                eprintln!("  {note}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
