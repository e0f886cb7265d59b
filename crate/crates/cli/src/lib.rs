//! Front end for building, verifying and exporting symmetric chain
//! decompositions.

pub mod args;
pub mod artifact;
pub mod build;
pub mod catalog;
pub mod error;
pub mod explore;

use std::io::Write;
use std::time::Duration;

use sco_core::pipeline::PipelineConfig;
use sco_core::scd::SearchConfig;

use args::{Cli, Command, Format};
use artifact::{dot, summary, Artifact};
use error::{CliError, CliResult};

pub fn config(cli: &Cli) -> CliResult<PipelineConfig> {
    if !cli.timeout.is_finite() || cli.timeout < 0.0 {
        return Err(sco_core::Error::InvalidArgument("--timeout must be a non-negative number of seconds".into()).into());
    }
    Ok(PipelineConfig {
        search: SearchConfig {
            timeout: Duration::from_secs_f64(cli.timeout),
            max_elements: cli.cap,
            ..SearchConfig::default()
        },
        ..PipelineConfig::default()
    })
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn emit_artifact(cli: &Cli, a: &Artifact, passed: bool) -> CliResult<()> {
    let poset = sco_core::RankedPoset::from_json(&a.poset)?;
    let text = summary(a, &poset, passed);
    match cli.format {
        Format::Json => {
            eprint!("{text}");
            emit(cli, &a.to_json_string()?)
        }
        Format::Text => emit(cli, &text),
        Format::Dot => {
            eprint!("{text}");
            emit(cli, &dot(&poset, &a.decomposition.chains))
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Build(args) => {
            let a = build::build(args, &cfg)?;
            // Fresh verification from the serialized form, independent of
            // the construction's own checks.
            a.verified()?;
            emit_artifact(cli, &a, true)
        }
        Command::Verify { path } => {
            let a = Artifact::read(path)?;
            let (poset, report) = a.check()?;
            let failures = report.failures();
            match cli.format {
                Format::Json => {
                    let v = serde_json::json!({
                        "passed": report.passed(),
                        "elements": poset.len(),
                        "chains": a.decomposition.chains.len(),
                        "failures": failures,
                    });
                    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&v)?))?;
                }
                Format::Text => {
                    let mut text = summary(&a, &poset, report.passed());
                    for f in &failures {
                        text.push_str(&format!("  {f}\n"));
                    }
                    emit(cli, &text)?;
                }
                Format::Dot => emit(cli, &dot(&poset, &a.decomposition.chains))?,
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verification(failures.join("; ")))
            }
        }
        Command::Catalog { n, file } => {
            let cat = catalog::load(*n, file.as_deref())?;
            let reports = catalog::run(&cat, &cfg);
            let table = catalog::table(&reports);
            match cli.format {
                Format::Json => {
                    eprint!("{table}");
                    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&reports)?))?;
                }
                _ => emit(cli, &table)?,
            }
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| format!("row {} ({}, {})", r.row, r.generators, r.description))
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Catalog(failed.join(", ")))
            }
        }
        Command::Explore(args) => {
            let r = explore::explore(args, &cfg.search)?;
            match (cli.format, &r.artifact) {
                (Format::Json, _) => emit(cli, &format!("{}\n", serde_json::to_string_pretty(&r)?))?,
                (Format::Dot, Some(a)) => {
                    eprint!("{}", explore::text(&r));
                    let poset = sco_core::RankedPoset::from_json(&a.poset)?;
                    emit(cli, &dot(&poset, &a.decomposition.chains))?;
                }
                _ => emit(cli, &explore::text(&r))?,
            }
            if r.found {
                Ok(())
            } else {
                Err(CliError::Absent(r.instance))
            }
        }
    }
}
