use clap::Parser;

fn main() {
    let cli = btt::cli::Cli::parse();
    if let Err(e) = btt::cli::run(cli) {
        eprintln!("btt: {e}");
        std::process::exit(e.exit_code());
    }
}
