// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Property suites over the example semigroups. Every check records a
//! slack: the margin by which the property holds, tolerance included, so a
//! check passes iff its slack is nonnegative.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{
    capacity_sandwich, dephasing_2way_display, eb_time_bound, limiting_capacities, mlsi_capacity_bounds, ppt_eb_time,
    reference_exact, simple_generator_constant, Reference,
};
use crate::entropic::{d_nfix_with, entropy_comparison_check, relative_entropy, renyi_comparison_check};
use crate::error::{Error, Result};
use crate::fixed_point::{block_decomposition, schur_weyl_blocks};
use crate::group::FiniteGroup;
use crate::linalg::{
    c, collective, identity, max_abs, random_density, random_gaussian_matrix, random_pure, sigma_x, sigma_z,
    trace_norm, CMatrix,
};
use crate::markov::{kernel_estimate, ClassicalGenerator, NamedChain};
use crate::rep::{char_rep, perm_rep, weyl_rep, ProjectiveRep};
use crate::semigroup::{
    conditional_expectation, decoherence_time_lower_bound, diffusive_lindbladian, monte_carlo_unravel,
    quantum_spectral_gap, transferred_lindbladian, DensityMatrix, DiffusiveNormalization, FactorizationCheck,
    Propagator,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "all")]
    All,
    #[serde(rename = "transference")]
    Transference,
    #[serde(rename = "entropy")]
    Entropy,
    #[serde(rename = "capacities")]
    Capacities,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::All,
        Suite::Transference,
        Suite::Entropy,
        Suite::Capacities,
        Suite::MonteCarlo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Transference => "transference",
            Suite::Entropy => "entropy",
            Suite::Capacities => "capacities",
            Suite::MonteCarlo => "montecarlo",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|x| x.as_str() == s).ok_or_else(|| {
            Error::invalid(format!(
                "unknown suite '{s}'; expected all, transference, entropy, capacities or montecarlo"
            ))
        })
    }
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    /// Margin by which the property holds; `NaN` for yes/no checks.
    #[serde(serialize_with = "finite_or_null")]
    pub slack: f64,
    pub detail: String,
}

fn finite_or_null<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

impl Check {
    fn margin(suite: &'static str, name: impl Into<String>, slack: f64, detail: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            passed: slack >= 0.0,
            slack,
            detail: detail.into(),
        }
    }

    fn flag(suite: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            passed,
            slack: f64::NAN,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check: `suite,name,passed,slack,detail`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,name,passed,slack,detail\n");
        for c in &self.checks {
            let slack = if c.slack.is_nan() {
                String::new()
            } else {
                format!("{}", c.slack)
            };
            out.push_str(&format!(
                "{},{},{},{},\"{}\"\n",
                c.suite,
                c.name,
                c.passed,
                slack,
                c.detail.replace('"', "'")
            ));
        }
        out
    }
}

/// A transferred semigroup used throughout the suites.
pub struct ExampleSetup {
    pub label: String,
    pub rep: ProjectiveRep,
    pub gen: ClassicalGenerator,
}

/// Depolarizing (`n = 2, 3`), dephasing (`n = 2, 3, 4`) and random-swap
/// (two and three qubits) semigroups.
pub fn example_setups() -> Result<Vec<ExampleSetup>> {
    let mut out = Vec::new();
    for n in [2, 3] {
        let rep = weyl_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / (n * n) as f64)?;
        out.push(ExampleSetup {
            label: format!("depolarizing({n})"),
            rep,
            gen,
        });
    }
    for n in [2, 3, 4] {
        let rep = char_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / n as f64)?;
        out.push(ExampleSetup {
            label: format!("dephasing({n})"),
            rep,
            gen,
        });
    }
    for n in [2, 3] {
        out.push(ExampleSetup {
            label: format!("swap({n},2)"),
            rep: perm_rep(n, 2)?,
            gen: NamedChain::Transpositions(n).generator()?,
        });
    }
    Ok(out)
}

/// Symmetric random rates in `[0.05, 1]`, so the chain is reversible and primitive.
pub fn random_reversible_rates<R: Rng>(group: &FiniteGroup, rng: &mut R) -> Vec<f64> {
    let mut rates = vec![0.0; group.order];
    for g in group.elements() {
        let inv = group.inverse(g);
        if g != group.identity && inv >= g {
            let r = rng.random_range(0.05..1.0);
            rates[g] = r;
            rates[inv] = r;
        }
    }
    rates
}

type Group = fn(u64) -> Result<Vec<Check>>;

/// Runs `suite` with randomness derived from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
    let groups: Vec<(&'static str, &'static str, Group)> = registry()
        .into_iter()
        .filter(|(s, _, _)| suite == Suite::All || *s == suite.as_str())
        .collect();
    let checks: Vec<Check> = groups
        .par_iter()
        .map(|(s, name, f)| match f(seed) {
            Ok(checks) => checks,
            Err(e) => vec![Check::flag(s, *name, false, format!("error: {e}"))],
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    VerifyReport {
        suite,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn registry() -> Vec<(&'static str, &'static str, Group)> {
    vec![
        ("transference", "generator_identities", generator_identities),
        ("transference", "factorization", factorization),
        ("transference", "gap_transference", gap_transference),
        ("transference", "wcd_gap", wcd_gap),
        ("transference", "trace_norm_transference", trace_norm_transference),
        ("transference", "kernel_identities", kernel_identities),
        ("transference", "channel_semigroup", channel_semigroup),
        ("transference", "classical_constants", classical_constants),
        ("transference", "kernel_estimate", kernel_estimate_check),
        ("transference", "decoherence_times", decoherence_times),
        ("entropy", "entropy_comparison", entropy_comparison),
        ("entropy", "renyi_sandwich", renyi_sandwich),
        ("entropy", "divergence_sanity", divergence_sanity),
        ("entropy", "entropic_decay", entropic_decay),
        ("capacities", "capacity_theorems", capacity_theorems),
        ("montecarlo", "unraveling", unraveling),
    ]
}

const T: &str = "transference";
const E: &str = "entropy";
const CAP: &str = "capacities";
const MC: &str = "montecarlo";

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(salt);
    rng
}

fn generator_identities(_seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=5 {
        let rep = weyl_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / (n * n) as f64)?;
        let lind = transferred_lindbladian(&rep, &gen)?;
        // ρ ↦ ρ − Tr(ρ) I/n is id − vec(I) vec(I)†/n.
        let v = crate::linalg::vectorize(&identity(n));
        let expected = identity(n * n) - &v * v.adjoint() / c(n as f64, 0.0);
        let err = max_abs(&(&lind.matrix - expected));
        out.push(Check::margin(
            T,
            format!("depolarizing_generator[n={n}]"),
            1e-10 - err,
            format!("max deviation {err:e}"),
        ));
    }
    for n in 2..=6 {
        let rep = char_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / n as f64)?;
        let lind = transferred_lindbladian(&rep, &gen)?;
        // id − E_diag: keeps off-diagonal matrix units, kills diagonal ones.
        let mut expected = identity(n * n);
        for i in 0..n {
            expected[(i + n * i, i + n * i)] = c(0.0, 0.0);
        }
        let err = max_abs(&(&lind.matrix - expected));
        out.push(Check::margin(
            T,
            format!("dephasing_generator[n={n}]"),
            1e-10 - err,
            format!("max deviation {err:e}"),
        ));
    }
    Ok(out)
}

fn factorization(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 1);
    let mut out = Vec::new();
    for setup in example_setups()? {
        let mut worst: f64 = 0.0;
        for t in [0.1, 1.0, 10.0] {
            let check = FactorizationCheck::new(&setup.rep, &setup.gen, t)?;
            for _ in 0..10 {
                let x = random_gaussian_matrix(setup.rep.dim, setup.rep.dim, &mut rng);
                for g in setup.rep.group.elements() {
                    worst = worst.max(check.residual(&x, g));
                }
            }
        }
        out.push(Check::margin(
            T,
            format!("factorization[{}]", setup.label),
            1e-9 - worst,
            format!("max residual {worst:e}"),
        ));
    }
    Ok(out)
}

fn gap_transference(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 2);
    let setups = example_setups()?;
    let mut worst = f64::INFINITY;
    let mut detail = String::new();
    for i in 0..24 {
        let setup = &setups[i % setups.len()];
        let rates = random_reversible_rates(&setup.rep.group, &mut rng);
        let gen = ClassicalGenerator::new(setup.rep.group.clone(), &rates)?;
        let lind = transferred_lindbladian(&setup.rep, &gen)?;
        let slack = quantum_spectral_gap(&lind)? - gen.spectral_gap()? + 1e-8;
        if slack < worst {
            worst = slack;
            detail = format!("tightest on {}", setup.label);
        }
    }
    Ok(vec![Check::margin(
        T,
        "gap_transference[24 random reversible chains]",
        worst,
        detail,
    )])
}

fn wcd_gap(_seed: u64) -> Result<Vec<Check>> {
    (2..=5)
        .map(|n| {
            let lind = diffusive_lindbladian(&[collective(&sigma_z(), n)], DiffusiveNormalization::Halved)?;
            let gap = quantum_spectral_gap(&lind)?;
            Ok(Check::margin(
                T,
                format!("wcd_gap[n={n}]"),
                1e-8 - (gap - 2.0).abs(),
                format!("gap {gap}"),
            ))
        })
        .collect()
}

fn trace_norm_transference(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 3);
    let mut out = Vec::new();
    for setup in example_setups()? {
        let lind = transferred_lindbladian(&setup.rep, &setup.gen)?;
        let prop = Propagator::new(&lind.adjoint())?;
        let e = conditional_expectation(&setup.rep)?.adjoint();
        let states: Vec<CMatrix> = (0..100).map(|_| random_density(setup.rep.dim, &mut rng)).collect();
        let mut worst = f64::INFINITY;
        for t in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let bound = setup.gen.kernel_norm(t, 1.0)?;
            for rho in &states {
                let dist = trace_norm(&(prop.apply(t, rho)? - e.apply(rho)));
                worst = worst.min(bound + 1e-8 - dist);
            }
        }
        out.push(Check::margin(
            T,
            format!("trace_norm_transference[{}]", setup.label),
            worst,
            "‖T_t ρ − E ρ‖_1 ≤ ‖k_t − 1‖_1",
        ));
    }
    Ok(out)
}

fn kernel_identities(_seed: u64) -> Result<Vec<Check>> {
    let chains = [
        NamedChain::Hypercube(3),
        NamedChain::Circle(6),
        NamedChain::Complete(5),
        NamedChain::Transpositions(4),
    ];
    let mut out = Vec::new();
    for chain in chains {
        let gen = chain.generator()?;
        let (mut l2, mut conv, mut mono) = (0.0f64, 0.0f64, f64::INFINITY);
        let mut previous = f64::INFINITY;
        for t in [0.05, 0.2, 0.5, 1.0, 2.0, 4.0] {
            let k = gen.kernel_at(t)?;
            let k2 = gen.kernel_at(2.0 * t)?;
            let lhs = k.distance_to_uniform(2.0).powi(2);
            l2 = l2.max((lhs - (k2.values[gen.group.identity] - 1.0)).abs());
            let convolved = k.convolve(&k, &gen.group);
            conv = conv.max(
                convolved
                    .values
                    .iter()
                    .zip(&k2.values)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            );
            let norm = k.distance_to_uniform(2.0);
            mono = mono.min(previous - norm + 1e-12);
            previous = norm;
        }
        out.push(Check::margin(
            T,
            format!("kernel_l2_identity[{chain:?}]"),
            1e-9 - l2,
            format!("max |‖k_t−1‖_2² − (k_2t(e)−1)| = {l2:e}"),
        ));
        out.push(Check::margin(
            T,
            format!("kernel_semigroup[{chain:?}]"),
            1e-9 - conv,
            format!("max |k_t * k_t − k_2t| = {conv:e}"),
        ));
        out.push(Check::margin(
            T,
            format!("kernel_l2_monotone[{chain:?}]"),
            mono,
            "‖k_t − 1‖_2 nonincreasing",
        ));
    }
    Ok(out)
}

fn channel_semigroup(_seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for setup in example_setups()? {
        let lind = transferred_lindbladian(&setup.rep, &setup.gen)?;
        let prop = Propagator::new(&lind)?;
        let (s, t) = (0.3, 1.1);
        let composed = prop.channel(s)?.compose(&prop.channel(t)?)?;
        let err = max_abs(&(prop.channel(s + t)?.matrix - composed.matrix));
        out.push(Check::margin(
            T,
            format!("channel_semigroup[{}]", setup.label),
            1e-9 - err,
            format!("{err:e}"),
        ));
        let d = setup.rep.dim;
        let mixed = identity(d) / c(d as f64, 0.0);
        let image = prop.channel(t)?.adjoint().apply(&mixed);
        let err = max_abs(&(image - &mixed));
        out.push(Check::margin(
            T,
            format!("doubly_stochastic[{}]", setup.label),
            1e-12 - err,
            format!("{err:e}"),
        ));
    }
    Ok(out)
}

/// Gaps of the named chains. Circle and transposition gaps are compared
/// with their tabulated values; hypercube and complete-graph gaps with the
/// eigenvalues of `id − K` (`2/(n+1)` and `1`), the tabulated values being
/// reported alongside.
fn classical_constants(_seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut push = |chain: NamedChain, expected: f64| -> Result<()> {
        let gap = chain.generator()?.spectral_gap()?;
        let tab = chain.constants()?.gap;
        out.push(Check::margin(
            T,
            format!("classical_gap[{chain:?}]"),
            1e-8 - (gap - expected).abs(),
            format!("computed {gap}, expected {expected}, tabulated {tab}"),
        ));
        Ok(())
    };
    for n in 1..=5 {
        push(NamedChain::Hypercube(n), 2.0 / (n as f64 + 1.0))?;
    }
    for m in 4..=12 {
        let chain = NamedChain::Circle(m);
        push(chain, chain.constants()?.gap)?;
    }
    for m in 3..=16 {
        push(NamedChain::Complete(m), 1.0)?;
    }
    for n in 2..=5 {
        let chain = NamedChain::Transpositions(n);
        push(chain, chain.constants()?.gap)?;
    }
    Ok(out)
}

/// `‖k_t − 1‖_2 ≤ e^{1−γ}` at `t = (c/2) ln ln m + γ/λ` with the tabulated
/// complete-graph constants.
fn kernel_estimate_check(_seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in [5, 9, 16] {
        let chain = NamedChain::Complete(m);
        let consts = chain.constants()?;
        let c_ls = consts.logsob.expect("complete graph has a tabulated constant");
        let gen = chain.generator()?;
        for gamma in [1.0, 2.0, 4.0] {
            let (t, bound) = kernel_estimate(c_ls, consts.gap, m, gamma)?;
            // Right invariance: every g·⁻¹ translate has the same L_2 distance.
            let value = gen.kernel_at(t)?.distance_to_uniform(2.0);
            out.push(Check::margin(
                T,
                format!("kernel_estimate[m={m},gamma={gamma}]"),
                bound - value,
                format!("t = {t}, ‖k_t − 1‖_2 = {value}, bound {bound}"),
            ));
        }
    }
    Ok(out)
}

fn decoherence_times(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 4);
    let mut out = Vec::new();
    for setup in example_setups()?.into_iter().filter(|s| !s.label.starts_with("swap")) {
        let lind = transferred_lindbladian(&setup.rep, &setup.gen)?;
        let states: Vec<DensityMatrix> = (0..200)
            .map(|_| DensityMatrix::new(random_pure(setup.rep.dim, &mut rng)))
            .collect::<Result<_>>()?;
        for eps in [0.5, 0.1, 0.01] {
            let lower = decoherence_time_lower_bound(&lind, &setup.rep, &states, eps)?;
            let mix = setup.gen.mixing_time(eps)?;
            out.push(Check::margin(
                T,
                format!("t_deco_le_t_mix[{},eps={eps}]", setup.label),
                mix - lower + 1e-8,
                format!("t_deco >= {lower}, t_mix = {mix}"),
            ));
        }
    }
    Ok(out)
}

/// `σ = E(ω)` for a random full-rank `ω`: a faithful fixed-point state.
fn fixed_state<R: Rng>(rep: &ProjectiveRep, rng: &mut R) -> Result<CMatrix> {
    Ok(conditional_expectation(rep)?.apply(&random_density(rep.dim, rng)))
}

fn entropy_comparison(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 5);
    let mut out = Vec::new();
    for setup in example_setups()? {
        let mut worst = f64::INFINITY;
        for t in [0.2, 1.0] {
            let k = setup.gen.kernel_at(t)?;
            for _ in 0..50 {
                let rho = random_density(setup.rep.dim, &mut rng);
                let sigma = fixed_state(&setup.rep, &mut rng)?;
                worst = worst.min(entropy_comparison_check(&setup.rep, &k, &rho, &sigma)?.slack + 1e-8);
            }
        }
        out.push(Check::margin(
            E,
            format!("entropy_comparison[{}]", setup.label),
            worst,
            "D(T_t ρ‖σ) ≤ D(E ρ‖σ) + ∫k ln k",
        ));
    }
    Ok(out)
}

fn renyi_sandwich(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 6);
    let mut out = Vec::new();
    for setup in example_setups()? {
        for eps in [1.0, 0.1] {
            let t = setup.gen.t_eps(eps)?;
            let k = setup.gen.kernel_at(t)?;
            let mut worst = f64::INFINITY;
            for _ in 0..10 {
                let rho = random_density(setup.rep.dim, &mut rng);
                let sigma = fixed_state(&setup.rep, &mut rng)?;
                for p in [1.0, 1.5, 2.0, f64::INFINITY] {
                    let s = renyi_comparison_check(&setup.rep, &k, &rho, &sigma, p)?;
                    let gap_slack = eps.ln_1p() - s.gap;
                    worst = worst.min(s.lower_slack).min(s.upper_slack).min(gap_slack);
                }
            }
            out.push(Check::margin(
                E,
                format!("renyi_sandwich[{},eps={eps}]", setup.label),
                worst + 1e-8,
                format!("p in {{1, 1.5, 2, inf}} at t(eps) = {t}"),
            ));
            let integral = k.entropy_integral();
            out.push(Check::margin(
                E,
                format!("kernel_entropy[{},eps={eps}]", setup.label),
                eps.ln_1p() - integral + 1e-8,
                format!("∫k ln k = {integral}"),
            ));
        }
    }
    Ok(out)
}

fn divergence_sanity(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 7);
    let mut out = Vec::new();
    for setup in example_setups()? {
        let e = conditional_expectation(&setup.rep)?;
        let (mut dpi, mut pinsker) = (f64::INFINITY, f64::INFINITY);
        for _ in 0..50 {
            let rho = random_density(setup.rep.dim, &mut rng);
            let sigma = random_density(setup.rep.dim, &mut rng);
            let d = relative_entropy(&rho, &sigma)?;
            let de = relative_entropy(&e.apply(&rho), &e.apply(&sigma))?;
            dpi = dpi.min(d - de + 1e-8);
            pinsker = pinsker.min(2.0 * d - trace_norm(&(&rho - &sigma)).powi(2) + 1e-8);
        }
        out.push(Check::margin(
            E,
            format!("data_processing[{}]", setup.label),
            dpi,
            "D(Eρ‖Eσ) ≤ D(ρ‖σ)",
        ));
        out.push(Check::margin(
            E,
            format!("pinsker[{}]", setup.label),
            pinsker,
            "‖ρ−σ‖_1² ≤ 2 D(ρ‖σ)",
        ));
    }
    Ok(out)
}

fn entropic_decay(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 8);
    let mut out = Vec::new();
    for setup in example_setups()? {
        let lind = transferred_lindbladian(&setup.rep, &setup.gen)?;
        let prop = Propagator::new(&lind.adjoint())?;
        let e = conditional_expectation(&setup.rep)?;
        for eps in [0.5, 0.1, 0.01] {
            let t = setup.gen.mixing_time(eps)?;
            let mut worst: f64 = 0.0;
            for _ in 0..50 {
                let rho = random_density(setup.rep.dim, &mut rng);
                worst = worst.max(d_nfix_with(&prop.apply(t, &rho)?, &e)?);
            }
            out.push(Check::margin(
                E,
                format!("entropic_decay[{},eps={eps}]", setup.label),
                eps + 1e-8 - worst,
                format!("max D_Nfix(T_t ρ) = {worst:e} at t_mix = {t}"),
            ));
        }
    }
    Ok(out)
}

fn capacity_theorems(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let grid: Vec<f64> = (0..64).map(|i| 8.0 * i as f64 / 63.0).collect();

    // Limiting values against independently known block structures.
    type Known = (String, ProjectiveRep, Vec<(usize, usize)>);
    let known: Vec<Known> = vec![
        ("depolarizing(3)".into(), weyl_rep(3)?, vec![(1, 3)]),
        ("dephasing(4)".into(), char_rep(4)?, vec![(1, 1); 4]),
        ("swap(2,2)".into(), perm_rep(2, 2)?, schur_weyl_blocks(2, 2)?),
        ("swap(3,2)".into(), perm_rep(3, 2)?, schur_weyl_blocks(3, 2)?),
    ];
    for (label, rep, blocks) in known {
        let numeric = block_decomposition(&rep, seed)?;
        let ok = numeric.blocks == blocks;
        out.push(Check::flag(
            CAP,
            format!("block_structure[{label}]"),
            ok,
            format!("{:?}", numeric.blocks),
        ));
        let lim = limiting_capacities(&numeric.blocks);
        let ln = |x: usize| (x as f64).ln();
        let q = ln(blocks.iter().map(|b| b.0).max().unwrap_or(1));
        let cl = ln(blocks.iter().map(|b| b.0).sum());
        let ea = ln(blocks.iter().map(|b| b.0 * b.0).sum());
        let err = (lim.quantum - q)
            .abs()
            .max((lim.classical - cl).abs())
            .max((lim.entanglement_assisted - ea).abs());
        out.push(Check::margin(
            CAP,
            format!("limiting_capacities[{label}]"),
            1e-14 - err,
            format!("Q {q}, C {cl}, C_EA {ea}"),
        ));
    }

    // Dephasing two-way quantum capacity below the sandwich.
    for n in [2, 3, 4] {
        let rep = char_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / n as f64)?;
        let blocks = block_decomposition(&rep, seed)?.blocks;
        let (mut exact, mut display) = (f64::INFINITY, f64::INFINITY);
        for &t in &grid {
            let upper = capacity_sandwich(&blocks, &gen, t)?.q2way.upper;
            exact = exact.min(upper - reference_exact(Reference::Dephasing2Way { n, t })?);
            display = display.min(upper - dephasing_2way_display(n, t));
        }
        out.push(Check::margin(
            CAP,
            format!("dephasing_q2way_dominated[n={n}]"),
            exact + 1e-8,
            "corrected formula, 64 times on [0, 8]",
        ));
        out.push(Check::margin(
            CAP,
            format!("dephasing_q2way_display_dominated[n={n}]"),
            display + 1e-8,
            "formula as displayed",
        ));
    }

    // Depolarizing reference, ranges, monotonicity, EB ordering.
    for n in [2, 3] {
        let rep = weyl_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / (n * n) as f64)?;
        let blocks = block_decomposition(&rep, seed)?.blocks;
        let log_d2 = 2.0 * (n as f64).ln();
        let (mut dominance, mut range, mut mono) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut previous: Option<[f64; 6]> = None;
        for &t in &grid {
            let report = capacity_sandwich(&blocks, &gen, t)?;
            dominance = dominance.min(report.q2way.upper - reference_exact(Reference::Depolarizing2Way { n, t })?);
            let uppers = report.families().map(|(_, b)| b.upper);
            for (_, b) in report.families() {
                range = range
                    .min(b.lower)
                    .min(b.upper)
                    .min(log_d2 - b.upper)
                    .min(log_d2 - b.lower);
            }
            if let Some(prev) = previous {
                for (a, b) in prev.iter().zip(&uppers) {
                    mono = mono.min(a - b);
                }
            }
            previous = Some(uppers);
        }
        out.push(Check::margin(
            CAP,
            format!("depolarizing_q2way_dominated[n={n}]"),
            dominance + 1e-8,
            "64 times on [0, 8]",
        ));
        out.push(Check::margin(
            CAP,
            format!("capacity_range[depolarizing({n})]"),
            range + 1e-12,
            "0 ≤ value ≤ ln d²",
        ));
        out.push(Check::margin(
            CAP,
            format!("upper_bound_monotone[depolarizing({n})]"),
            mono + 1e-12,
            "upper bounds nonincreasing in t",
        ));

        let lind = transferred_lindbladian(&rep, &gen)?;
        let ppt = ppt_eb_time(&lind)?;
        let eb = eb_time_bound(&gen, &rep)?;
        out.push(Check::margin(
            CAP,
            format!("ppt_before_eb_bound[depolarizing({n})]"),
            eb - ppt.time + 1e-8,
            format!("PPT at {}, t(1/d) = {eb}", ppt.time),
        ));
        if n == 2 {
            out.push(Check::margin(
                CAP,
                "ppt_qubit_depolarizing",
                1e-6 - (ppt.time - 3f64.ln()).abs(),
                format!("{} vs ln 3", ppt.time),
            ));
        }
    }
    let deph = {
        let rep = char_rep(2)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 0.5)?;
        ppt_eb_time(&transferred_lindbladian(&rep, &gen)?)?
    };
    out.push(Check::flag(
        CAP,
        "dephasing_never_eb",
        deph.time.is_infinite(),
        format!("PPT time {}", deph.time),
    ));

    // MLSI route with α₁ = 1 for L = id − E, against the dephasing capacity.
    for n in [2, 3] {
        let rep = char_rep(n)?;
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / n as f64)?;
        let lind = transferred_lindbladian(&rep, &gen)?;
        let alpha = simple_generator_constant(&lind, &rep)?;
        let Some(alpha) = alpha else {
            out.push(Check::flag(
                CAP,
                format!("mlsi_dephasing[n={n}]"),
                false,
                "generator not recognized as id − E",
            ));
            continue;
        };
        let blocks = block_decomposition(&rep, seed)?.blocks;
        let mut worst = f64::INFINITY;
        for &t in &grid {
            let b = mlsi_capacity_bounds(&blocks, alpha, None, n, t)?;
            worst = worst.min(b.qp - reference_exact(Reference::Dephasing2Way { n, t })?);
        }
        out.push(Check::margin(
            CAP,
            format!("mlsi_dephasing[n={n}]"),
            worst + 1e-8,
            "ln max n_k + 2 e^{−t} ln d dominates Q",
        ));
    }
    Ok(out)
}

fn unraveling(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases: Vec<(&str, ProjectiveRep, f64, CMatrix)> = vec![
        ("dephasing(2)", char_rep(2)?, 0.5, sigma_x()),
        ("depolarizing(2)", weyl_rep(2)?, 0.25, sigma_z()),
    ];
    for (label, rep, rate, x) in cases {
        let gen = ClassicalGenerator::uniform(rep.group.clone(), rate)?;
        let exact = Propagator::new(&transferred_lindbladian(&rep, &gen)?)?.apply(1.0, &x)?;
        let est = monte_carlo_unravel(&rep, &gen, 1.0, &x, 10_000, seed)?;
        let again = monte_carlo_unravel(&rep, &gen, 1.0, &x, 10_000, seed)?;
        let deviation = (&est.mean - &exact).iter().map(|z| z.norm()).fold(0.0, f64::max);
        out.push(Check::flag(
            MC,
            format!("unraveling[{label}]"),
            est.agrees_with(&exact, 4.0),
            format!("max deviation {deviation:e} over 10^4 trajectories"),
        ));
        out.push(Check::flag(
            MC,
            format!("unraveling_deterministic[{label}]"),
            est.mean == again.mean,
            "same seed, same estimate",
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn montecarlo_suite_passes() {
        let report = run_suite(Suite::MonteCarlo, 3);
        assert!(report.passed, "{:#?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn csv_has_one_line_per_check() {
        let report = run_suite(Suite::MonteCarlo, 0);
        assert_eq!(report.to_csv().lines().count(), report.checks.len() + 1);
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["suite"], "montecarlo");
        assert!(v["checks"][0]["slack"].is_null());
    }
}
