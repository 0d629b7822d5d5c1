use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use polyad_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            print!("{}", output.summary);
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(output.body.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            eprint!("{}", output.summary);
        }
    }
    ExitCode::from(output.status)
}
