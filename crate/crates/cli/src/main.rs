mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::Failure;
use config::Cli;

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("RMT_THREADS") else {
        return Ok(());
    };
    let n: usize = match v.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(Failure::Usage(format!("RMT_THREADS must be a positive integer, got '{v}'"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Numeric(format!("cannot start worker threads: {e}")))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    init_threads()?;
    let (artifact, ok) = commands::execute(&cli.command)?;
    let out = cli.command.output();
    output::render(&cli.command, &artifact, out.format)
        .and_then(|b| output::emit(out.out.as_deref(), &b))
        .map_err(|e| Failure::Numeric(format!("cannot write output: {e}")))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
