use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod output;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                output::EXIT_USAGE
            } else {
                output::EXIT_OK
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CASIMIR_LOG", "warn"))
        .target(env_logger::Target::Stderr)
        .init();
    ExitCode::from(commands::run(cli.command))
}
