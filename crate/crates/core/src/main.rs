use std::io::Write;
use std::process::ExitCode;

use mmatrix::cli::{run_from_args, EXIT_USAGE};

fn main() -> ExitCode {
    let outcome = run_from_args(std::env::args_os());
    if !outcome.message.is_empty() {
        eprintln!("{}", outcome.message.trim_end());
    }
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &outcome.output)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.output.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.status as u8)
}
