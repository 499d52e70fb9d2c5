// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! JSON experiment configuration. Command-line flags are applied on top.

use std::collections::BTreeMap;
use std::path::PathBuf;

use qmslab::experiments::{ExampleName, ExampleParams, Format, TimeGrid, Unit};
use qmslab::rep::{char_rep, perm_rep, weyl_rep, ProjectiveRep};
use qmslab::verify::Suite;
use qmslab::{ClassicalGenerator, Error, FiniteGroup, NamedChain, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Run the property suites.
    Verify,
    /// Reproduce one of the example tables.
    Example,
    /// Kernel norms of a classical chain, optionally transferred to a representation.
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    Weyl,
    Char,
    Perm,
}

/// `weyl`/`char` use `n`; `perm` acts on `n` factors of dimension `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub kind: RepKind,
    pub n: usize,
    #[serde(default)]
    pub d: Option<usize>,
}

impl RepSpec {
    pub fn build(&self) -> Result<ProjectiveRep> {
        match self.kind {
            RepKind::Weyl => weyl_rep(self.n),
            RepKind::Char => char_rep(self.n),
            RepKind::Perm => perm_rep(self.n, self.d.unwrap_or(2)),
        }
    }
}

/// A single number means the same rate on every group element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatesSpec {
    Uniform(f64),
    List(Vec<f64>),
    /// Element index (as a JSON key) to rate; missing elements get rate 0.
    Map(BTreeMap<String, f64>),
}

impl RatesSpec {
    pub fn generator(&self, group: FiniteGroup) -> Result<ClassicalGenerator> {
        match self {
            RatesSpec::Uniform(c) => ClassicalGenerator::uniform(group, *c),
            RatesSpec::List(rates) => ClassicalGenerator::new(group, rates),
            RatesSpec::Map(rates) => {
                let rates = rates
                    .iter()
                    .map(|(k, v)| {
                        k.parse::<usize>()
                            .map(|k| (k, *v))
                            .map_err(|_| Error::InvalidArgument(format!("rates: '{k}' is not an element index")))
                    })
                    .collect::<Result<BTreeMap<usize, f64>>>()?;
                ClassicalGenerator::from_map(group, &rates)
            }
        }
    }

    /// Accepts `c` or a comma-separated list `c0,c1,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let values = parse_list(s, "rates")?;
        Ok(if values.len() == 1 && !s.contains(',') {
            RatesSpec::Uniform(values[0])
        } else {
            RatesSpec::List(values)
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Option<Command>,
    pub suite: Option<Suite>,
    pub example: Option<ExampleName>,
    /// Named chain as `name:param`, e.g. `complete:5`.
    pub chain: Option<String>,
    pub group_file: Option<PathBuf>,
    pub rates: Option<RatesSpec>,
    pub rep: Option<RepSpec>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub eps: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub states: Option<usize>,
    pub t_grid: TimeGrid,
    pub output: OutputSpec,
    pub unit: Unit,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("config: {e}")))
    }

    pub fn example_params(&self) -> ExampleParams {
        let defaults = ExampleParams::default();
        ExampleParams {
            n: self.n,
            d: self.d,
            eps: self.eps.clone().unwrap_or(defaults.eps),
            seed: self.seed.unwrap_or(defaults.seed),
            states: self.states.unwrap_or(defaults.states),
        }
    }
}

pub fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("{what}: cannot parse '{x}' as a number")))
        })
        .collect()
}

/// `hypercube:n`, `circle:m`, `complete:m` or `transpositions:n`.
pub fn parse_chain(s: &str) -> Result<NamedChain> {
    let bad = || {
        Error::InvalidArgument(format!(
            "chain '{s}': expected hypercube:N, circle:M, complete:M or transpositions:N"
        ))
    };
    let (name, param) = s.split_once(':').ok_or_else(bad)?;
    let param: usize = param.trim().parse().map_err(|_| bad())?;
    match name.trim() {
        "hypercube" => Ok(NamedChain::Hypercube(param)),
        "circle" => Ok(NamedChain::Circle(param)),
        "complete" => Ok(NamedChain::Complete(param)),
        "transpositions" => Ok(NamedChain::Transpositions(param)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rates_forms() {
        assert_eq!(RatesSpec::parse("0.5").unwrap(), RatesSpec::Uniform(0.5));
        assert_eq!(RatesSpec::parse("0,1,1").unwrap(), RatesSpec::List(vec![0.0, 1.0, 1.0]));
        assert!(RatesSpec::parse("0,x").is_err());
        let map: RatesSpec = serde_json::from_str(r#"{"1": 0.5, "2": 0.5}"#).unwrap();
        assert!(matches!(map, RatesSpec::Map(m) if m.len() == 2));
    }

    #[test]
    fn chain_names() {
        assert_eq!(parse_chain("complete:5").unwrap(), NamedChain::Complete(5));
        assert!(parse_chain("complete").is_err());
        assert!(parse_chain("torus:3").is_err());
    }

    #[test]
    fn config_rejects_unknown_fields() {
        assert!(ExperimentConfig::from_json(r#"{"comand": "verify"}"#).is_err());
        let c = ExperimentConfig::from_json(
            r#"{"command": "example", "example": "wcd", "n": 2, "t_grid": {"stop": 2.0, "points": 3},
                "output": {"format": "json"}, "unit": "bits", "rep": {"kind": "perm", "n": 2, "d": 2}}"#,
        )
        .unwrap();
        assert_eq!(c.example, Some(ExampleName::Wcd));
        assert_eq!(c.t_grid.points, 3);
        assert_eq!(c.unit, Unit::Bits);
    }
}
