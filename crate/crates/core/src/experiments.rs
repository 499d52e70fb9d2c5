// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Example tables: per-time rows of distances, bounds and capacities for the
//! standard transferred semigroups, plus CSV and JSON rendering.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::capacity::{
    capacity_sandwich_from_eps, dephasing_2way_display, eb_time_bound, limiting_capacities, ppt_eb_time,
    reference_exact, CapacityReport, Reference,
};
use crate::error::{Error, Result};
use crate::fixed_point::{block_decomposition, schur_weyl_blocks};
use crate::linalg::{c, collective, random_pure, sigma_z, trace_norm, CMatrix};
use crate::markov::{complete_graph_mixing_bound, log_grid, ClassicalGenerator, LieGroup, NamedChain};
use crate::rep::{char_rep, perm_rep, weyl_rep, ProjectiveRep};
use crate::semigroup::{
    conditional_expectation, decoherence_time_lower_bound, diffusive_lindbladian, quantum_spectral_gap,
    transferred_lindbladian, DensityMatrix, DiffusiveNormalization, Propagator, Superoperator,
};

/// Largest number of grid points accepted.
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Times at which table rows are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: 10.0,
            points: 41,
            spacing: Spacing::Linear,
        }
    }
}

impl TimeGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.start >= 0.0) || !self.stop.is_finite() || !(self.stop >= self.start) {
            return Err(Error::invalid(format!(
                "time grid needs 0 <= start <= stop < inf, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.points == 0 {
            return Err(Error::invalid("time grid needs at least one point"));
        }
        if self.points > MAX_GRID_POINTS {
            return Err(Error::limit(format!(
                "{} grid points exceed the limit of {MAX_GRID_POINTS}",
                self.points
            )));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(Error::invalid("log-spaced grid needs start > 0"));
        }
        Ok(())
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        self.validate()?;
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        Ok(match self.spacing {
            Spacing::Linear => {
                let step = (self.stop - self.start) / (self.points - 1) as f64;
                (0..self.points).map(|i| self.start + step * i as f64).collect()
            }
            Spacing::Log => log_grid(self.start, self.stop, self.points),
        })
    }
}

/// Unit in which entropic quantities are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    #[default]
    Ebits,
    Bits,
}

impl Unit {
    pub fn scale(self) -> f64 {
        match self {
            Unit::Ebits => 1.0,
            Unit::Bits => std::f64::consts::LOG2_E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleName {
    Depolarizing,
    DephasingDiscrete,
    DephasingTorusBounds,
    Wcd,
    ScdBounds,
    Swap,
}

impl ExampleName {
    pub const ALL: [ExampleName; 6] = [
        ExampleName::Depolarizing,
        ExampleName::DephasingDiscrete,
        ExampleName::DephasingTorusBounds,
        ExampleName::Wcd,
        ExampleName::ScdBounds,
        ExampleName::Swap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::Depolarizing => "depolarizing",
            ExampleName::DephasingDiscrete => "dephasing_discrete",
            ExampleName::DephasingTorusBounds => "dephasing_torus_bounds",
            ExampleName::Wcd => "wcd",
            ExampleName::ScdBounds => "scd_bounds",
            ExampleName::Swap => "swap",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|e| e.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|e| e.as_str()).collect();
            Error::invalid(format!("unknown example '{s}'; expected one of {}", names.join(", ")))
        })
    }
}

/// Parameters shared by the examples; unset sizes take per-example defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExampleParams {
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub eps: Vec<f64>,
    pub seed: u64,
    /// Random pure states over which distances are maximized.
    pub states: usize,
}

impl Default for ExampleParams {
    fn default() -> Self {
        Self {
            n: None,
            d: None,
            eps: vec![0.5, 0.1, 0.01],
            seed: 0,
            states: 20,
        }
    }
}

impl ExampleParams {
    fn validate(&self) -> Result<()> {
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0) || !e.is_finite()) {
            return Err(Error::invalid(format!("eps entries must be positive, got {e}")));
        }
        Ok(())
    }
}

/// One table column; entropic columns are rescaled by the output unit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub entropic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SummaryValue {
    Number { value: f64, entropic: bool },
    Text(String),
}

/// A computed table; `NaN` cells are rendered empty (CSV) or null (JSON).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub params: Map<String, Value>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    pub summary: Vec<(String, SummaryValue)>,
}

impl Table {
    fn new(name: &str, params: Map<String, Value>, columns: &[(&str, bool)]) -> Self {
        Self {
            name: name.to_owned(),
            params,
            columns: columns
                .iter()
                .map(|&(n, e)| Column {
                    name: n.to_owned(),
                    entropic: e,
                })
                .collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    fn number(&mut self, key: impl Into<String>, value: f64) {
        self.summary
            .push((key.into(), SummaryValue::Number { value, entropic: false }));
    }

    fn entropy(&mut self, key: impl Into<String>, value: f64) {
        self.summary
            .push((key.into(), SummaryValue::Number { value, entropic: true }));
    }

    fn text(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.summary.push((key.into(), SummaryValue::Text(value.into())));
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c.name == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn summary_number(&self, key: &str) -> Option<f64> {
        self.summary.iter().find_map(|(k, v)| match v {
            SummaryValue::Number { value, .. } if k == key => Some(*value),
            _ => None,
        })
    }

    pub fn render(&self, format: Format, unit: Unit) -> String {
        match format {
            Format::Csv => self.to_csv(unit),
            Format::Json => self.to_json(unit),
        }
    }

    /// Summary lines prefixed with `#`, then a header and one line per row.
    pub fn to_csv(&self, unit: Unit) -> String {
        let mut out = String::new();
        out.push_str(&format!("# example={}\n", self.name));
        for (k, v) in &self.params {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&format!("# unit={}\n", unit_name(unit)));
        for (k, v) in &self.summary {
            let shown = match v {
                SummaryValue::Number { value, entropic } => cell(scaled(*value, *entropic, unit)),
                SummaryValue::Text(s) => s.clone(),
            };
            out.push_str(&format!("# {k}={shown}\n"));
        }
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&self.columns)
                .map(|(x, c)| cell(scaled(*x, c.entropic, unit)))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, unit: Unit) -> String {
        let columns: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .zip(&self.columns)
                        .map(|(x, c)| json_number(scaled(*x, c.entropic, unit)))
                        .collect(),
                )
            })
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| {
                let value = match v {
                    SummaryValue::Number { value, entropic } => json_number(scaled(*value, *entropic, unit)),
                    SummaryValue::Text(s) => Value::String(s.clone()),
                };
                (k.clone(), value)
            })
            .collect();
        let doc = json!({
            "example": self.name,
            "params": self.params,
            "unit": unit_name(unit),
            "columns": columns,
            "rows": rows,
            "summary": summary,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}

fn unit_name(unit: Unit) -> &'static str {
    match unit {
        Unit::Ebits => "ebits",
        Unit::Bits => "bits",
    }
}

fn scaled(x: f64, entropic: bool, unit: Unit) -> f64 {
    if entropic {
        x * unit.scale()
    } else {
        x
    }
}

fn cell(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x}")
    }
}

/// Finite numbers as numbers, `±inf` as strings, `NaN` as null.
fn json_number(x: f64) -> Value {
    if x.is_nan() {
        Value::Null
    } else if x.is_infinite() {
        Value::String(if x > 0.0 { "inf" } else { "-inf" }.into())
    } else {
        json!(x)
    }
}

/// Runs one example over `grid`.
pub fn run_example(name: ExampleName, params: &ExampleParams, grid: &TimeGrid) -> Result<Table> {
    params.validate()?;
    let times = grid.times()?;
    match name {
        ExampleName::Depolarizing => depolarizing(params, &times),
        ExampleName::DephasingDiscrete => dephasing_discrete(params, &times),
        ExampleName::DephasingTorusBounds => dephasing_torus_bounds(params, &times),
        ExampleName::Wcd => wcd(params, &times),
        ExampleName::ScdBounds => scd_bounds(params, &times),
        ExampleName::Swap => swap(params, &times),
    }
}

fn size(value: Option<usize>, default: usize, range: std::ops::RangeInclusive<usize>, what: &str) -> Result<usize> {
    let v = value.unwrap_or(default);
    if v < *range.start() {
        return Err(Error::invalid(format!(
            "{what} = {v} is below the minimum {}",
            range.start()
        )));
    }
    if v > *range.end() {
        return Err(Error::limit(format!(
            "{what} = {v} exceeds the maximum {}",
            range.end()
        )));
    }
    Ok(v)
}

fn params_map(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect()
}

/// `|0⟩⟨0|`, the uniform superposition, then `count` seeded random pure states.
pub fn sample_states(d: usize, count: usize, seed: u64) -> Result<Vec<DensityMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count + 2);
    let mut basis = CMatrix::zeros(d, d);
    basis[(0, 0)] = c(1.0, 0.0);
    out.push(DensityMatrix::new(basis)?);
    out.push(DensityMatrix::new(CMatrix::from_element(d, d, c(1.0 / d as f64, 0.0)))?);
    for _ in 0..count {
        out.push(DensityMatrix::new(random_pure(d, &mut rng))?);
    }
    Ok(out)
}

/// `max_ρ ‖T_t(ρ) − E(ρ)‖_1` over `states`, for a self-adjoint semigroup.
pub fn max_distance_to_fix(prop: &Propagator, e: &Superoperator, states: &[DensityMatrix], t: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for rho in states {
        let diff = prop.apply(t, &rho.matrix)? - e.apply(&rho.matrix);
        worst = worst.max(trace_norm(&diff));
    }
    Ok(worst)
}

const CAPACITY_COLUMNS: [(&str, bool); 9] = [
    ("t", false),
    ("eps", false),
    ("Q_lo", true),
    ("Q_hi", true),
    ("C_lo", true),
    ("C_hi", true),
    ("CEA_lo", true),
    ("CEA_hi", true),
    ("ref_exact", true),
];

fn capacity_cells(r: &CapacityReport, reference: f64) -> Vec<f64> {
    vec![
        r.t,
        r.eps,
        r.q.lower,
        r.q.upper,
        r.c.lower,
        r.c.upper,
        r.c_ea.lower,
        r.c_ea.upper,
        reference,
    ]
}

/// Rows shared by the finite transferred examples.
struct FiniteSetup {
    rep: ProjectiveRep,
    gen: ClassicalGenerator,
    lind: Superoperator,
    prop: Propagator,
    expectation: Superoperator,
    blocks: Vec<(usize, usize)>,
    states: Vec<DensityMatrix>,
}

impl FiniteSetup {
    fn new(rep: ProjectiveRep, rate: f64, params: &ExampleParams) -> Result<Self> {
        let gen = ClassicalGenerator::uniform(rep.group.clone(), rate)?;
        let lind = transferred_lindbladian(&rep, &gen)?;
        let prop = Propagator::new(&lind)?;
        let expectation = conditional_expectation(&rep)?;
        let blocks = block_decomposition(&rep, params.seed)?.blocks;
        let states = sample_states(rep.dim, params.states, params.seed)?;
        Ok(Self {
            rep,
            gen,
            lind,
            prop,
            expectation,
            blocks,
            states,
        })
    }

    /// Capacity cells, then trace distance and `‖k_t − 1‖_1`.
    fn rows(&self, times: &[f64], reference: impl Fn(f64) -> Result<f64> + Sync) -> Result<Vec<Vec<f64>>> {
        let evaluator = self.gen.evaluator()?;
        times
            .par_iter()
            .map(|&t| {
                let k = evaluator.kernel(t);
                let report = capacity_sandwich_from_eps(&self.blocks, t, k.distance_to_uniform(f64::INFINITY));
                let mut row = capacity_cells(&report, reference(t)?);
                row.push(max_distance_to_fix(&self.prop, &self.expectation, &self.states, t)?);
                row.push(k.distance_to_uniform(1.0));
                Ok(row)
            })
            .collect()
    }

    fn summary(&self, table: &mut Table, eps: &[f64], logsob_order: Option<usize>) -> Result<()> {
        table.text("blocks", blocks_text(&self.blocks));
        table.number("classical_gap", self.gen.spectral_gap()?);
        table.number("quantum_gap", quantum_spectral_gap(&self.lind)?);
        let ppt = ppt_eb_time(&self.lind)?;
        table.number("ppt_time", ppt.time);
        table.text("ppt_time_exact", ppt.exact.to_string());
        match eb_time_bound(&self.gen, &self.rep) {
            Ok(t) => table.number("eb_time_bound", t),
            Err(Error::Domain(_)) => table.text("eb_time_bound", "not primitive"),
            Err(e) => return Err(e),
        }
        let lim = limiting_capacities(&self.blocks);
        table.entropy("Q_limit", lim.quantum);
        table.entropy("C_limit", lim.classical);
        table.entropy("CEA_limit", lim.entanglement_assisted);
        for &e in eps {
            table.number(format!("t_mix[{e}]"), self.gen.mixing_time(e)?);
            table.number(
                format!("t_deco_lower[{e}]"),
                decoherence_time_lower_bound(&self.lind, &self.rep, &self.states, e)?,
            );
            if let Some(m) = logsob_order {
                table.number(format!("t_mix_logsob_bound[{e}]"), complete_graph_mixing_bound(m, e)?);
            }
        }
        Ok(())
    }
}

fn blocks_text(blocks: &[(usize, usize)]) -> String {
    let parts: Vec<String> = blocks.iter().map(|(n, d)| format!("({n},{d})")).collect();
    parts.join(" ")
}

fn depolarizing(params: &ExampleParams, times: &[f64]) -> Result<Table> {
    let n = size(params.n, 2, 2..=5, "n")?;
    let setup = FiniteSetup::new(weyl_rep(n)?, 1.0 / (n * n) as f64, params)?;
    let mut columns = CAPACITY_COLUMNS.to_vec();
    columns.extend([("trace_distance", false), ("l1_bound", false)]);
    let mut table = Table::new(
        "depolarizing",
        params_map(&[("n", json!(n)), ("seed", json!(params.seed))]),
        &columns,
    );
    table.rows = setup.rows(times, |t| reference_exact(Reference::Depolarizing2Way { n, t }))?;
    setup.summary(&mut table, &params.eps, Some(n * n))?;
    Ok(table)
}

fn dephasing_discrete(params: &ExampleParams, times: &[f64]) -> Result<Table> {
    let n = size(params.n, 3, 2..=8, "n")?;
    let setup = FiniteSetup::new(char_rep(n)?, 1.0 / n as f64, params)?;
    let mut columns = CAPACITY_COLUMNS.to_vec();
    columns.extend([("trace_distance", false), ("l1_bound", false), ("ref_display", true)]);
    let mut table = Table::new(
        "dephasing_discrete",
        params_map(&[("n", json!(n)), ("seed", json!(params.seed))]),
        &columns,
    );
    let mut rows = setup.rows(times, |t| reference_exact(Reference::Dephasing2Way { n, t }))?;
    for (row, &t) in rows.iter_mut().zip(times) {
        row.push(dephasing_2way_display(n, t));
    }
    table.rows = rows;
    setup.summary(&mut table, &params.eps, (n >= 3).then_some(n))?;
    Ok(table)
}

fn dephasing_torus_bounds(params: &ExampleParams, times: &[f64]) -> Result<Table> {
    let n = size(params.n, 3, 2..=1_000_000, "n")?;
    let torus = LieGroup::TorusN(n);
    let mut table = Table::new(
        "dephasing_torus_bounds",
        params_map(&[("n", json!(n))]),
        &[("t", false), ("kernel_bound", false)],
    );
    table.rows = times
        .iter()
        .map(|&t| Ok(vec![t, if t > 0.0 { torus.kernel_bound(t)? } else { f64::NAN }]))
        .collect::<Result<_>>()?;
    for &e in &params.eps {
        table.number(format!("t_deco_bound[{e}]"), torus.time_to(e)?);
        if n >= 3 {
            table.number(
                format!("t_deco_bound_discrete[{e}]"),
                complete_graph_mixing_bound(n, e)?,
            );
        }
    }
    Ok(table)
}

fn wcd(params: &ExampleParams, times: &[f64]) -> Result<Table> {
    let n = size(params.n, 3, 1..=5, "n")?;
    let d = 1usize << n;
    let lind = diffusive_lindbladian(&[collective(&sigma_z(), n)], DiffusiveNormalization::Halved)?;
    let prop = Propagator::new(&lind)?;
    let limit = prop.stationary_projection()?;
    let states = sample_states(d, params.states, params.seed)?;
    let mut table = Table::new(
        "wcd",
        params_map(&[("n", json!(n)), ("seed", json!(params.seed))]),
        &[("t", false), ("trace_distance", false), ("bound", false)],
    );
    table.rows = times
        .par_iter()
        .map(|&t| {
            let bound = if t > 0.0 {
                LieGroup::Torus1.kernel_bound(t / 2.0)?
            } else {
                f64::NAN
            };
            Ok(vec![t, max_distance_to_fix(&prop, &limit, &states, t)?, bound])
        })
        .collect::<Result<_>>()?;
    table.number("gap", quantum_spectral_gap(&lind)?);
    for &e in &params.eps {
        table.number(format!("t_deco_bound[{e}]"), 2.0 * LieGroup::Torus1.time_to(e)?);
    }
    Ok(table)
}

fn scd_bounds(params: &ExampleParams, times: &[f64]) -> Result<Table> {
    let su2 = LieGroup::Semisimple(3);
    let mut table = Table::new("scd_bounds", Map::new(), &[("t", false), ("bound", false)]);
    table.rows = times
        .iter()
        .map(|&t| Ok(vec![t, if t > 0.0 { su2.kernel_bound(t / 2.0)? } else { f64::NAN }]))
        .collect::<Result<_>>()?;
    for &e in &params.eps {
        table.number(format!("t_deco_bound[{e}]"), 2.0 * su2.time_to(e)?);
    }
    Ok(table)
}

fn swap(params: &ExampleParams, times: &[f64]) -> Result<Table> {
    let n = size(params.n, 2, 2..=5, "n")?;
    let d = size(params.d, 2, 2..=64, "d")?;
    let total = (d as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > 64 {
        return Err(Error::limit(format!("d^n = {total} exceeds 64")));
    }
    // Validates the representation; the blocks come from Schur–Weyl duality.
    perm_rep(n, d)?;
    let blocks = schur_weyl_blocks(n, d)?;
    let gen = NamedChain::Transpositions(n).generator()?;
    let evaluator = gen.evaluator()?;
    let mut columns = CAPACITY_COLUMNS.to_vec();
    columns.push(("deviation_bound", true));
    let mut table = Table::new("swap", params_map(&[("n", json!(n)), ("d", json!(d))]), &columns);
    let (nf, gap) = (n as f64, gen.spectral_gap()?);
    table.rows = times
        .par_iter()
        .map(|&t| {
            let eps = evaluator.kernel(t).distance_to_uniform(f64::INFINITY);
            let mut row = capacity_cells(&capacity_sandwich_from_eps(&blocks, t, eps), f64::NAN);
            row.push(swap_deviation_bound(n, t));
            row
        })
        .collect();
    table.text("blocks", blocks_text(&blocks));
    table.number("classical_gap", gap);
    table.number("mixing_onset", nf * nf.ln());
    let lim = limiting_capacities(&blocks);
    table.entropy("Q_limit", lim.quantum);
    table.entropy("C_limit", lim.classical);
    table.entropy("CEA_limit", lim.entanglement_assisted);
    Ok(table)
}

/// `e^{−(2/(n−1))(t − n ln n)}` for `t > n ln n`, `NaN` before.
pub fn swap_deviation_bound(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    let onset = nf * nf.ln();
    if t > onset {
        (-(2.0 / (nf - 1.0)) * (t - onset)).exp()
    } else {
        f64::NAN
    }
}

/// Kernel norms `‖k_t − 1‖_p` for `p ∈ {1, 2, ∞}` of a classical chain.
pub fn kernel_table(gen: &ClassicalGenerator, label: &str, grid: &TimeGrid) -> Result<Table> {
    let times = grid.times()?;
    let evaluator = gen.evaluator()?;
    let mut table = Table::new(
        "kernel",
        params_map(&[("chain", json!(label)), ("order", json!(gen.order()))]),
        &[
            ("t", false),
            ("norm_p1", false),
            ("norm_p2", false),
            ("norm_inf", false),
        ],
    );
    table.rows = times
        .par_iter()
        .map(|&t| {
            let k = evaluator.kernel(t);
            vec![
                t,
                k.distance_to_uniform(1.0),
                k.distance_to_uniform(2.0),
                k.distance_to_uniform(f64::INFINITY),
            ]
        })
        .collect();
    let report = gen.spectral_gap_report(crate::markov::ZERO_EIGENVALUE_THRESHOLD)?;
    table.number("gap", report.gap);
    table.text("reversible", gen.reversible.to_string());
    Ok(table)
}

/// [`kernel_table`] for a named chain, with its tabulated constants.
pub fn named_kernel_table(chain: NamedChain, grid: &TimeGrid) -> Result<Table> {
    let gen = chain.generator()?;
    let mut table = kernel_table(&gen, &format!("{chain:?}"), grid)?;
    let constants = chain.constants()?;
    table.number("tabulated_gap", constants.gap);
    table.number("tabulated_logsob", constants.logsob.unwrap_or(f64::NAN));
    table.text("source", constants.source);
    Ok(table)
}

/// [`kernel_table`] plus the transferred semigroup's distance to its
/// fixed points, maximized over sampled states.
pub fn transferred_table(
    rep: &ProjectiveRep,
    gen: &ClassicalGenerator,
    label: &str,
    grid: &TimeGrid,
    params: &ExampleParams,
) -> Result<Table> {
    let mut table = kernel_table(gen, label, grid)?;
    table.params.insert("rep".into(), json!(rep.label));
    let lind = transferred_lindbladian(rep, gen)?;
    let prop = Propagator::new(&lind.adjoint())?;
    let expectation = conditional_expectation(rep)?.adjoint();
    let states = sample_states(rep.dim, params.states, params.seed)?;
    table.columns.push(Column {
        name: "trace_distance".into(),
        entropic: false,
    });
    let times: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
    let distances: Vec<f64> = times
        .par_iter()
        .map(|&t| max_distance_to_fix(&prop, &expectation, &states, t))
        .collect::<Result<_>>()?;
    for (row, d) in table.rows.iter_mut().zip(distances) {
        row.push(d);
    }
    if lind.selfadjoint_hs {
        table.number("quantum_gap", quantum_spectral_gap(&lind)?);
    }
    table.text("blocks", blocks_text(&block_decomposition(rep, params.seed)?.blocks));
    Ok(table)
}
