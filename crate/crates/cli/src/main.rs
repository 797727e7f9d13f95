use std::process::ExitCode;

use clap::Parser;
use nullcone_cli::{render_human, render_json, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(record) => {
            if cli.command.json() {
                println!("{}", render_json(&record));
            } else {
                print!("{}", render_human(&record));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
