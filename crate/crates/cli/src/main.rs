use std::io::{self, Write};
use std::process::ExitCode;

use beatty_games_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = io::stdout().lock();
    let code = match run(cli, &mut input, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {:#}", f.error);
            f.code
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
