use std::process::ExitCode;

use clap::Parser;

use quadlie_cli::{commands, report, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match commands::execute(&cli) {
        Ok(report) => {
            let code = if report.ok { 0 } else { 1 };
            (report, code)
        }
        Err(commands::Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(commands::Failure::Diagnostic(report)) => (*report, 1),
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Table => report::render_table(&report),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(msg) = &report.error {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code)
}
