//! `dgeom` command-line front-end.

mod args;
mod output;
mod perc;
mod rc;
mod saw;
mod spec;
mod sweep;

use std::process::ExitCode;

use clap::Parser;
use dgeom::{Error, ErrorKind, Result};
use serde_json::Value;

use output::{envelope, error_object, Output};
use spec::{Cli, Command, ExperimentSpec, Format, SawCmd};

/// Run-wide settings shared by every command.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub seed: u64,
    pub workers: usize,
    pub budget: Option<u64>,
}

impl Ctx {
    /// Fails with a budget error if `steps * size` exceeds the budget.
    pub fn charge(&self, steps: usize, size: usize) -> Result<()> {
        match self.budget {
            Some(b) if (steps as u128) * (size as u128) > b as u128 => Err(Error::BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }
}

pub fn command_name(c: &Command) -> String {
    let v = serde_json::to_value(c).expect("spec serialises");
    let mut name = Vec::new();
    let mut cur = &v;
    while let Value::Object(o) = cur {
        match o.iter().next() {
            Some((k, inner)) if o.len() == 1 => {
                name.push(k.clone());
                cur = inner;
            }
            _ => break,
        }
    }
    name.join(" ")
}

pub fn spec_of(cli: &Cli) -> ExperimentSpec {
    let seedless = matches!(cli.command, Command::Saw(SawCmd::Count { seedless: true, .. }));
    ExperimentSpec { command: cli.command.clone(), seed: if seedless { None } else { Some(cli.seed) }, budget: cli.budget }
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let ctx = Ctx { seed: cli.seed, workers: cli.workers.max(1), budget: cli.budget };
    match &cli.command {
        Command::Saw(c) => saw::run(c, &ctx),
        Command::Perc(c) => perc::run(c, &ctx),
        Command::Rc(c) => rc::run(c, &ctx),
        Command::Sweep(s) => sweep::run(s, cli),
    }
}

/// Text written for a successful run.
pub fn render(cli: &Cli, out: &Output) -> String {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Sweep(_) => Format::Csv,
        _ => Format::Json,
    });
    match format {
        Format::Csv => out.table.to_csv(),
        Format::Json => {
            let spec = serde_json::to_value(spec_of(cli)).expect("spec serialises");
            let mut s = serde_json::to_string(&envelope(&command_name(&cli.command), &spec, out)).expect("json");
            s.push('\n');
            s
        }
    }
}

fn fail(kind: ErrorKind, message: &str) -> ExitCode {
    let (name, code) = match kind {
        ErrorKind::Validation => ("validation", 2),
        ErrorKind::Budget => ("budget", 3),
        ErrorKind::Internal => ("internal", 4),
    };
    eprintln!("{}", error_object(name, code, message));
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(ErrorKind::Validation, e.to_string().trim());
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => return fail(e.kind(), &e.to_string()),
    };
    let text = render(&cli, &out);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return fail(ErrorKind::Validation, &format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
