mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::RunConfig;

fn run(cli: Cli) -> Result<bool, commands::CliError> {
    let c = &cli.common;
    match cli.command {
        Command::Classical {
            energy,
            v0,
            periods,
            t_steps,
            phase,
            events,
        } => commands::classical(c, energy, v0, periods, t_steps, phase, events.as_deref())?,
        Command::Check { perturb_spectrum } => return commands::check(c, perturb_spectrum),
        cmd => {
            let cfg = RunConfig::from_common(c)?;
            match cmd {
                Command::Density => commands::density(&cfg)?,
                Command::Autocorrelation { peaks, prominence } => commands::autocorrelation(&cfg, peaks, prominence)?,
                Command::Expectation { observable } => commands::expectation(&cfg, observable)?,
                Command::Uncertainty => commands::uncertainty(&cfg)?,
                Command::Distribution => commands::distribution(&cfg)?,
                Command::Statistics => commands::statistics(&cfg)?,
                Command::Classical { .. } | Command::Check { .. } => unreachable!(),
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wellcs: {e}");
            ExitCode::from(2)
        }
    }
}
