use clap::Parser;

use superfringe_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(error) = superfringe_cli::run(cli) {
        eprintln!("{}", error.diagnostic_line());
        std::process::exit(error.exit_code());
    }
}
