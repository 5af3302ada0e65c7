mod config;
mod run;

use std::process::ExitCode;

use clap::Parser;

use config::{Args, FileConfig, RunConfig};
use run::CliError;

fn load(args: Args) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            toml::from_str::<FileConfig>(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    RunConfig::resolve(args, file).map_err(CliError::Config)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match load(args).and_then(|cfg| run::run(&cfg)) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("psl: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
