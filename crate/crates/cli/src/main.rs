use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use zeck_cli::{format::digits_from_env, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = digits_from_env();
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out, digits).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // Keep whatever data was produced before the failure.
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
