use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

mod app;
mod report;

fn main() -> ExitCode {
    let cli = match app::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("bad invocation")
                .trim_start_matches("error: ");
            eprintln!("error: ConfigError: {first}");
            return ExitCode::from(3);
        }
    };
    ExitCode::from(app::run(cli))
}
