use clap::Parser;

fn main() {
    let cli = omegalp::cli::Cli::parse();
    if let Err(err) = omegalp::cli::run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
