mod args;
mod commands;
mod error;
mod input;
mod report;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::{CliError, CliResult};
use report::{AnalysisReport, Status};

fn write_output(body: &str, path: Option<&Path>) -> CliResult<()> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |e: std::io::Error| CliError::Io { path, source: e }
    };
    match path {
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(io(Path::new("<stdout>"))),
        Some(path) => {
            let dir = path
                .parent()
                .filter(|d| !d.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
            tmp.write_all(body.as_bytes()).map_err(io(path))?;
            tmp.persist(path).map_err(|e| io(path)(e.error))?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CliResult<Status> {
    let budget = cli.global.budget.resolve();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let report = AnalysisReport::new(command, budget, cli.global.timings);
    let mut outcome = commands::run(&cli.command, report)?;
    outcome.report.apply_expectations(&cli.global.expect)?;
    let body = match outcome.text {
        Some(text) => text,
        None if cli.global.pretty => outcome.report.render_pretty(),
        None => outcome.report.render_json(),
    };
    write_output(&body, cli.global.output.as_deref())?;
    Ok(outcome.report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::AssertionFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
