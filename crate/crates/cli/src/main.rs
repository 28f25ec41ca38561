use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = crclist_cli::Cli::parse();
    match crclist_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("crclist: {e}");
            e.exit_code()
        }
    }
}
