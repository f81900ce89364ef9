use std::process::ExitCode;

use clap::Parser;
use hirota_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("hirota: {msg}");
    }
    if let Some(report) = &outcome.report {
        let text = report.render(cli.config.format);
        match &cli.config.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("hirota: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{text}"),
        }
    }
    ExitCode::from(outcome.exit_code)
}
