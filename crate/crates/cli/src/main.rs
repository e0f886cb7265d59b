use clap::Parser;
use sco_cli::args::Cli;
use sco_cli::error::exit_code;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = sco_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
