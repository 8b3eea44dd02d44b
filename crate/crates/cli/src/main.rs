use clap::Parser;
use qdotto_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = execute(&cli) {
        eprintln!("qdotto: {e}");
        std::process::exit(e.exit_code());
    }
}
