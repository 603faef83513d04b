use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use forge::report::EXIT_INTERNAL;
use forge::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let text = report.to_json();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("forge: error: cannot write {}: {}", path.display(), e);
                        return ExitCode::from(EXIT_INTERNAL as u8);
                    }
                }
                None => {
                    let _ = writeln!(std::io::stdout(), "{}", text);
                }
            }
            for w in &report.warnings {
                eprintln!("forge: warning: {}", w);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("forge: error: {}", e);
            ExitCode::from(e.code as u8)
        }
    }
}
