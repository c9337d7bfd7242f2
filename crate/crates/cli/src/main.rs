use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = scg_cli::Cli::parse();
    if let Err(err) = scg_cli::execute(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(scg_cli::exit_code(&err));
    }
}
