use std::fs;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context as _, Result};
use biaslab_cli::{report, run_experiment, run_spec, Cli, Context, Experiment, TopCommand};
use clap::Parser;

fn run(cli: Cli) -> Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("starting the worker pool")?;
    }
    let ctx = Context { cache_dir: cli.cache_dir.clone() };
    let timestamp = cli.timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    let doc = match cli.command {
        TopCommand::Op(command) => {
            let exp = Experiment { globals: cli.globals, command };
            report(&exp, run_experiment(&exp, &ctx)?, timestamp)
        }
        TopCommand::Run { spec } => {
            let text = fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            run_spec(&text, &ctx)?
        }
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    match &cli.json {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
