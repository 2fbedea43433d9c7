use clap::Parser;

fn main() {
    let cli = cabinet_psa_cli::Cli::parse();
    let code = match cabinet_psa_cli::execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
