use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use belief_cli::{run, Cli};
use clap::Parser;

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let outcome = run(&cli, &mut io::stdin().lock());
    io::stdout().write_all(outcome.stdout.as_bytes()).context("writing stdout")?;
    io::stderr().write_all(outcome.stderr.as_bytes()).context("writing stderr")?;
    Ok(ExitCode::from(outcome.code))
}
