use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pv_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if outcome.output.ends_with('\n') {
                write!(stdout, "{}", outcome.output)
            } else {
                writeln!(stdout, "{}", outcome.output)
            };
            ExitCode::from(outcome.exit_code(cli.strict) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
