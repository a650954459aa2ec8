use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use hahn_cli::{run, to_json, to_text, Cli, Command, OutputArg, EXIT_CONFIG, EXIT_FAILED, EXIT_OK};
use hahn_core::{builtin_presentation, Suite};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Show { name } => match builtin_presentation(&name) {
            Ok(p) => {
                print!("{}", p.to_text());
                ExitCode::from(EXIT_OK)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_CONFIG)
            }
        },
        Command::Verify(args) => {
            let cfg = match args.config() {
                Ok(c) => c,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(EXIT_CONFIG);
                }
            };
            let suites = args.suite.suites();
            if args.cg_csv.is_some() && !suites.contains(&Suite::Cg) {
                eprintln!("error: --cg-csv needs the cg suite");
                return ExitCode::from(EXIT_CONFIG);
            }
            let report = match run(&suites, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {}", e.message);
                    return ExitCode::from(e.code);
                }
            };
            if let (Some(path), Some(cg)) = (&args.cg_csv, report.suites.iter().find_map(|o| o.cg.as_ref())) {
                let written = File::create(path)
                    .map_err(|e| e.to_string())
                    .and_then(|f| cg.write_csv(f).map_err(|e| e.to_string()));
                if let Err(e) = written {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(EXIT_FAILED);
                }
            }
            let text = match args.output {
                OutputArg::Json => to_json(&report),
                OutputArg::Text => to_text(&report),
            };
            // a closed stdout is not a verification failure
            let _ = io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
    }
}
