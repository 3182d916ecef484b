mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use output::Report;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = commands::run(&cli);
    let (text, code) = match report {
        Ok(r) => {
            let code = if r.verified == Some(false) { 1 } else { 0 };
            (r.render(&cli, code), code)
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!("dmv: {e}");
            (Report::from_error(&e).render(&cli, code), code)
        }
    };
    println!("{text}");
    ExitCode::from(code)
}
