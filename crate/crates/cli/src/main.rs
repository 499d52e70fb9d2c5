// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! `qmslab` command-line front end.
//!
//! Exit codes: 0 ok, 1 check failure, 2 bad input, 3 resource limit.

mod config;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qmslab::experiments::{
    kernel_table, named_kernel_table, run_example, transferred_table, Format, Spacing, Table, Unit,
};
use qmslab::verify::{run_suite, Suite};
use qmslab::{Error, FiniteGroup};

use config::{parse_chain, parse_list, Command, ExperimentConfig, RatesSpec, RepKind, RepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "qmslab",
    version,
    about = "Transferred quantum Markov semigroups: examples and checks"
)]
struct Cli {
    /// Overrides the command in the config file.
    command: Option<Command>,
    /// JSON experiment config; flags take precedence over its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Render entropic quantities in bits instead of e-bits.
    #[arg(long)]
    bits: bool,
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    example: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    t_start: Option<f64>,
    #[arg(long)]
    t_stop: Option<f64>,
    #[arg(long)]
    t_points: Option<usize>,
    #[arg(long)]
    log_grid: bool,
    /// Comma-separated accuracy targets.
    #[arg(long)]
    eps: Option<String>,
    /// Random states per distance maximization.
    #[arg(long)]
    states: Option<usize>,
    /// Named chain for `kernel`, e.g. `complete:5`.
    #[arg(long)]
    chain: Option<String>,
    /// Group JSON for `kernel`; needs `--rates`.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// A single rate for every element, or a comma-separated list indexed by element.
    #[arg(long)]
    rates: Option<String>,
    /// Representation for `kernel`: weyl, char or perm (sizes from `--n`, `--d`).
    #[arg(long, value_parser = ["weyl", "char", "perm"])]
    rep: Option<String>,
}

enum Failure {
    Checks(usize),
    Error(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(count)) => {
            eprintln!("qmslab: {count} check(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("qmslab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("qmslab: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) | Error::Domain(_) => 2,
                Error::ResourceLimit(_) => 3,
                Error::Numerical(_) => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = resolve(cli)?;
    let command = config
        .command
        .ok_or_else(|| Error::InvalidArgument("no command given (verify, example or kernel)".into()))?;
    let format = config.output.format.unwrap_or(match command {
        Command::Verify => Format::Json,
        _ => Format::Csv,
    });
    match command {
        Command::Verify => {
            let suite = config.suite.unwrap_or(Suite::All);
            let report = run_suite(suite, config.seed.unwrap_or(0));
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
            };
            emit(&config, &text)?;
            let failures: Vec<_> = report.failures().collect();
            for check in &failures {
                eprintln!("FAIL {}/{}: {}", check.suite, check.name, check.detail);
            }
            eprintln!(
                "verify {suite}: {} checks, {} failed",
                report.checks.len(),
                failures.len()
            );
            if failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Checks(failures.len()))
            }
        }
        Command::Example => {
            let name = config
                .example
                .ok_or_else(|| Error::InvalidArgument("example: --example NAME is required".into()))?;
            let table = run_example(name, &config.example_params(), &config.t_grid)?;
            emit_table(&config, &table, format)
        }
        Command::Kernel => {
            let table = kernel(&config)?;
            emit_table(&config, &table, format)
        }
    }
}

fn kernel(config: &ExperimentConfig) -> Result<Table, Failure> {
    let sources = [
        config.chain.is_some(),
        config.group_file.is_some(),
        config.rep.is_some(),
    ];
    if sources.iter().filter(|s| **s).count() != 1 {
        return Err(Error::InvalidArgument("kernel: give exactly one of --chain, --group-file, --rep".into()).into());
    }
    if let Some(chain) = &config.chain {
        if config.rates.is_some() {
            return Err(Error::InvalidArgument("kernel: --rates does not apply to a named chain".into()).into());
        }
        return Ok(named_kernel_table(parse_chain(chain)?, &config.t_grid)?);
    }
    if let Some(path) = &config.group_file {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let group = FiniteGroup::from_json(&text)?;
        let rates = config
            .rates
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("kernel: --group-file needs --rates".into()))?;
        let label = group.label.clone();
        return Ok(kernel_table(&rates.generator(group)?, &label, &config.t_grid)?);
    }
    let rep = config.rep.as_ref().expect("one source is set").build()?;
    let rates = config
        .rates
        .clone()
        .unwrap_or(RatesSpec::Uniform(1.0 / rep.group.order as f64));
    let gen = rates.generator(rep.group.clone())?;
    let label = rep.label.clone();
    Ok(transferred_table(
        &rep,
        &gen,
        &label,
        &config.t_grid,
        &config.example_params(),
    )?)
}

/// Loads the config file, if any, then applies the flags.
fn resolve(cli: Cli) -> Result<ExperimentConfig, Failure> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if cli.command.is_some() {
        config.command = cli.command;
    }
    if let Some(path) = cli.out {
        config.output.path = Some(path);
    }
    if let Some(f) = cli.format {
        config.output.format = Some(if f == "json" { Format::Json } else { Format::Csv });
    }
    if cli.seed.is_some() {
        config.seed = cli.seed;
    }
    if cli.bits {
        config.unit = Unit::Bits;
    }
    if let Some(s) = cli.suite {
        config.suite = Some(s.parse()?);
    }
    if let Some(e) = cli.example {
        config.example = Some(e.parse()?);
    }
    if cli.n.is_some() {
        config.n = cli.n;
    }
    if cli.d.is_some() {
        config.d = cli.d;
    }
    if let Some(v) = cli.t_start {
        config.t_grid.start = v;
    }
    if let Some(v) = cli.t_stop {
        config.t_grid.stop = v;
    }
    if let Some(v) = cli.t_points {
        config.t_grid.points = v;
    }
    if cli.log_grid {
        config.t_grid.spacing = Spacing::Log;
    }
    if let Some(e) = cli.eps {
        config.eps = Some(parse_list(&e, "eps")?);
    }
    if cli.states.is_some() {
        config.states = cli.states;
    }
    if let Some(c) = cli.chain {
        config.chain = Some(c);
    }
    if let Some(g) = cli.group_file {
        config.group_file = Some(g);
    }
    if let Some(r) = cli.rates {
        config.rates = Some(RatesSpec::parse(&r)?);
    }
    if let Some(kind) = cli.rep {
        let kind = match kind.as_str() {
            "weyl" => RepKind::Weyl,
            "char" => RepKind::Char,
            _ => RepKind::Perm,
        };
        config.rep = Some(RepSpec {
            kind,
            n: config.n.unwrap_or(2),
            d: config.d,
        });
    } else if let Some(rep) = &mut config.rep {
        if let Some(n) = cli.n {
            rep.n = n;
        }
        if cli.d.is_some() {
            rep.d = cli.d;
        }
    }
    config.t_grid.validate()?;
    Ok(config)
}

fn emit_table(config: &ExperimentConfig, table: &Table, format: Format) -> Result<(), Failure> {
    emit(config, &table.render(format, config.unit))
}

fn emit(config: &ExperimentConfig, text: &str) -> Result<(), Failure> {
    match &config.output.path {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}
