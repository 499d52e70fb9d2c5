// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Right-invariant continuous-time Markov chains on finite groups.
//!
//! Sign convention: `S_t = exp(−tL)` with `(Lf)(g) = Σ_h c_h [f(g) − f(hg)]`,
//! so `L` is positive semi-definite for reversible rates. Kernels are
//! densities with respect to the normalized counting measure:
//! `k_t(g) = |G|·exp(−tL)(g, e)` and `k_t(g, h) = k_t(g h⁻¹)`.

use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{transpositions, FiniteGroup};
use crate::linalg::RMatrix;

/// Eigenvalues below this are treated as zero when computing gaps.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-10;
/// Default cap on the group order for dense generator work.
pub const ORDER_CAP: usize = 256;
/// Points of the verification grid used by [`threshold_time`].
const VERIFICATION_GRID: usize = 256;
const BISECTION_STEPS: usize = 60;
const DOUBLING_LIMIT: f64 = 1e6;

#[derive(Debug, Clone)]
pub struct ClassicalGenerator {
    pub group: FiniteGroup,
    /// `c_g` per element; the identity entry is always zero.
    pub rates: Vec<f64>,
    pub matrix: RMatrix,
    pub reversible: bool,
}

impl ClassicalGenerator {
    /// Builds `L` from a rate per element. The rate at the identity is ignored.
    pub fn new(group: FiniteGroup, rates: &[f64]) -> Result<Self> {
        let n = group.order;
        if n > ORDER_CAP {
            return Err(Error::limit(format!("group order {n} exceeds cap {ORDER_CAP}")));
        }
        if rates.len() != n {
            return Err(Error::invalid(format!("expected {n} rates, got {}", rates.len())));
        }
        if let Some((g, r)) = rates.iter().enumerate().find(|(_, r)| !r.is_finite() || **r < 0.0) {
            return Err(Error::invalid(format!(
                "rate {r} at element {g} is not a nonnegative number"
            )));
        }
        let mut rates = rates.to_vec();
        rates[group.identity] = 0.0;

        let mut matrix = RMatrix::zeros(n, n);
        for g in group.elements() {
            for h in group.elements() {
                let c = rates[h];
                if c == 0.0 {
                    continue;
                }
                matrix[(g, g)] += c;
                matrix[(g, group.op(h, g))] -= c;
            }
        }
        let reversible = group.elements().all(|g| {
            let (a, b) = (rates[g], rates[group.inverse(g)]);
            (a - b).abs() <= 1e-14 * a.abs().max(b.abs()).max(1.0)
        });
        Ok(Self {
            group,
            rates,
            matrix,
            reversible,
        })
    }

    pub fn from_map(group: FiniteGroup, rates: &BTreeMap<usize, f64>) -> Result<Self> {
        let mut v = vec![0.0; group.order];
        for (&g, &r) in rates {
            if g >= group.order {
                return Err(Error::invalid(format!("element {g} out of range")));
            }
            v[g] = r;
        }
        Self::new(group, &v)
    }

    /// Same rate `c` on every non-identity element.
    pub fn uniform(group: FiniteGroup, c: f64) -> Result<Self> {
        let rates = vec![c; group.order];
        Self::new(group, &rates)
    }

    pub fn order(&self) -> usize {
        self.group.order
    }

    pub fn total_rate(&self) -> f64 {
        self.rates.iter().sum()
    }

    /// `exp(−tL)` by scaling and squaring.
    pub fn transition_matrix(&self, t: f64) -> Result<RMatrix> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::invalid(format!("time must be finite and >= 0, got {t}")));
        }
        let p = (&self.matrix * (-t)).exp();
        if p.iter().any(|x| !x.is_finite()) {
            let norm = self.matrix.abs().row_sum().max();
            return Err(Error::numerical(format!(
                "matrix exponential overflowed at t={t} (‖L‖_∞ = {norm:.3e})"
            )));
        }
        Ok(p)
    }

    /// `k_t` on every element, via the dense matrix exponential.
    pub fn kernel_at(&self, t: f64) -> Result<KernelSlice> {
        let p = self.transition_matrix(t)?;
        let n = self.order() as f64;
        let e = self.group.identity;
        let values = (0..self.order()).map(|g| n * p[(g, e)]).collect();
        Ok(KernelSlice { t, values })
    }

    pub fn spectral_gap(&self) -> Result<f64> {
        Ok(self.spectral_gap_report(ZERO_EIGENVALUE_THRESHOLD)?.gap)
    }

    /// Smallest eigenvalue above `threshold`. Non-reversible generators are
    /// replaced by their symmetric part `(L + Lᵀ)/2`, which is flagged.
    pub fn spectral_gap_report(&self, threshold: f64) -> Result<GapReport> {
        let sym = (&self.matrix + self.matrix.transpose()) * 0.5;
        let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0)
            .ok_or_else(|| Error::numerical("symmetric eigensolver did not converge"))?;
        let gap = eig
            .eigenvalues
            .iter()
            .copied()
            .filter(|&x| x > threshold)
            .fold(f64::INFINITY, f64::min);
        Ok(GapReport {
            gap: if gap.is_finite() { gap } else { 0.0 },
            symmetrized: !self.reversible,
        })
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.spectral_gap()? > ZERO_EIGENVALUE_THRESHOLD)
    }

    fn require_primitive(&self, what: &str) -> Result<()> {
        if !self.is_primitive()? {
            return Err(Error::domain(format!(
                "{what} requires a primitive chain (spectral gap is zero)"
            )));
        }
        Ok(())
    }

    /// Kernel evaluator for repeated time queries.
    pub fn evaluator(&self) -> Result<KernelEvaluator> {
        KernelEvaluator::new(self)
    }

    /// `‖k_t − 1‖_{L_p(μ_G)}`; `p = ∞` gives `sup_g |k_t(g) − 1|`.
    pub fn kernel_norm(&self, t: f64, p: f64) -> Result<f64> {
        Ok(self.kernel_at(t)?.distance_to_uniform(p))
    }

    /// `inf{t : ‖k_t − 1‖_{L_1(μ_G)} ≤ eps}`.
    pub fn mixing_time(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::invalid(format!("eps must be positive, got {eps}")));
        }
        self.require_primitive("mixing time")?;
        let ev = self.evaluator()?;
        threshold_time(|t| ev.kernel(t).distance_to_uniform(1.0), eps)
    }

    /// `t(ε) = inf{t : ‖k_t − 1‖_∞ ≤ eps}`.
    pub fn t_eps(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::invalid(format!("eps must be positive, got {eps}")));
        }
        self.require_primitive("t(eps)")?;
        let ev = self.evaluator()?;
        threshold_time(|t| ev.kernel(t).distance_to_uniform(f64::INFINITY), eps)
    }

    /// Ultracontractivity constant `C = max_t sup_g |k_t(g)|·t^{α/2}` over a
    /// 64-point log grid on `[t0·10⁻³, t0]`.
    pub fn uc_certificate(&self, t0: f64, alpha: f64) -> Result<UcCertificate> {
        self.uc_certificate_on_grid(t0, alpha, UC_GRID_POINTS)
    }

    pub fn uc_certificate_on_grid(&self, t0: f64, alpha: f64, points: usize) -> Result<UcCertificate> {
        if !(t0 > 0.0) || !(alpha >= 0.0) {
            return Err(Error::invalid("uc certificate needs t0 > 0 and alpha >= 0"));
        }
        if points < 2 {
            return Err(Error::invalid("uc grid needs at least two points"));
        }
        self.require_primitive("ultracontractivity certificate")?;
        let ev = self.evaluator()?;
        let grid = log_grid(t0 * UC_GRID_SPAN, t0, points);
        let (mut best, mut at) = (0.0f64, grid[0]);
        for &t in &grid {
            let v = ev.kernel(t).sup_abs() * t.powf(alpha / 2.0);
            if v > best {
                best = v;
                at = t;
            }
        }
        Ok(UcCertificate {
            c: best,
            attained_at: at,
            alpha,
            t0,
            holds: true,
        })
    }
}

const UC_GRID_POINTS: usize = 64;
const UC_GRID_SPAN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub gap: f64,
    /// True when the gap was taken from the symmetric part of a
    /// non-reversible generator.
    pub symmetrized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UcCertificate {
    pub c: f64,
    pub attained_at: f64,
    pub alpha: f64,
    pub t0: f64,
    /// Always true on the grid: `C` is defined as the grid maximum.
    pub holds: bool,
}

/// Values `k_t(g)` at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelSlice {
    pub t: f64,
    pub values: Vec<f64>,
}

impl KernelSlice {
    /// `∫ k dμ` with the normalized counting measure.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `‖k‖_{L_p(μ_G)}`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm(self.values.iter().copied(), p)
    }

    /// `‖k − 1‖_{L_p(μ_G)}`.
    pub fn distance_to_uniform(&self, p: f64) -> f64 {
        lp_norm(self.values.iter().map(|k| k - 1.0), p)
    }

    /// `sup_g |k(g)| = ‖S_t : L_1 → L_∞‖`.
    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, k| a.max(k.abs()))
    }

    /// `∫ k log k dμ`, with `0 log 0 = 0`.
    pub fn entropy_integral(&self) -> f64 {
        self.values
            .iter()
            .map(|&k| if k > 0.0 { k * k.ln() } else { 0.0 })
            .sum::<f64>()
            / self.values.len() as f64
    }

    /// `ǩ(g) = k(g⁻¹)`.
    pub fn reflected(&self, group: &FiniteGroup) -> KernelSlice {
        KernelSlice {
            t: self.t,
            values: group.elements().map(|g| self.values[group.inverse(g)]).collect(),
        }
    }

    /// Group convolution `(a * b)(g) = ∫ a(g h⁻¹) b(h) dμ(h)`.
    pub fn convolve(&self, other: &KernelSlice, group: &FiniteGroup) -> KernelSlice {
        let n = group.order as f64;
        let values = group
            .elements()
            .map(|g| {
                group
                    .elements()
                    .map(|h| self.values[group.op(g, group.inverse(h))] * other.values[h])
                    .sum::<f64>()
                    / n
            })
            .collect();
        KernelSlice {
            t: self.t + other.t,
            values,
        }
    }
}

fn lp_norm(values: impl Iterator<Item = f64>, p: f64) -> f64 {
    let v: Vec<f64> = values.collect();
    if p.is_infinite() {
        return v.iter().fold(0.0, |a, x| a.max(x.abs()));
    }
    let n = v.len() as f64;
    (v.iter().map(|x| x.abs().powf(p)).sum::<f64>() / n).powf(1.0 / p)
}

/// Repeated kernel evaluation. Reversible generators go through one
/// symmetric eigendecomposition; others fall back to the dense exponential.
pub struct KernelEvaluator {
    order: usize,
    identity: usize,
    spectral: Option<(Vec<f64>, RMatrix)>,
    generator: RMatrix,
}

impl KernelEvaluator {
    fn new(gen: &ClassicalGenerator) -> Result<Self> {
        let spectral = if gen.reversible {
            let eig = SymmetricEigen::try_new(gen.matrix.clone(), f64::EPSILON, 0)
                .ok_or_else(|| Error::numerical("symmetric eigensolver did not converge"))?;
            Some((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
        } else {
            None
        };
        Ok(Self {
            order: gen.order(),
            identity: gen.group.identity,
            spectral,
            generator: gen.matrix.clone(),
        })
    }

    pub fn kernel(&self, t: f64) -> KernelSlice {
        let n = self.order;
        let e = self.identity;
        let values = match &self.spectral {
            Some((lambda, v)) => {
                let weights: Vec<f64> = (0..n).map(|j| (-t * lambda[j]).exp() * v[(e, j)]).collect();
                (0..n)
                    .map(|g| n as f64 * (0..n).map(|j| v[(g, j)] * weights[j]).sum::<f64>())
                    .collect()
            }
            None => {
                let p = (&self.generator * (-t)).exp();
                (0..n).map(|g| n as f64 * p[(g, e)]).collect()
            }
        };
        KernelSlice { t, values }
    }
}

/// First time after which `f` stays at or below `eps`.
///
/// Brackets by doubling, locates the last crossing on a uniform verification
/// grid (so non-monotone transients are handled), then bisects 60 times.
pub fn threshold_time(f: impl Fn(f64) -> f64, eps: f64) -> Result<f64> {
    let mut hi = 1.0;
    while f(hi) > eps {
        hi *= 2.0;
        if hi > DOUBLING_LIMIT {
            return Err(Error::numerical(format!(
                "no time below {DOUBLING_LIMIT:e} reaches eps = {eps}"
            )));
        }
    }
    let grid: Vec<f64> = (0..=VERIFICATION_GRID)
        .map(|i| hi * i as f64 / VERIFICATION_GRID as f64)
        .collect();
    let Some(last_above) = grid.iter().rposition(|&t| f(t) > eps) else {
        return Ok(0.0);
    };
    let (mut lo, mut hi) = (grid[last_above], grid[last_above + 1]);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if f(mid) > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// `points` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![hi];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Chains with tabulated constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "chain", content = "param")]
pub enum NamedChain {
    /// `Z_2^n`, kernel mass `1/(n+1)` on the identity and on each unit vector.
    Hypercube(usize),
    /// Simple walk on `Z_m`, kernel `1/2` on `±1`.
    Circle(usize),
    /// Uniform kernel `1/m` on `Z_m`.
    Complete(usize),
    /// Random transpositions on `S_n`, kernel `2/(n(n−1))` per transposition.
    Transpositions(usize),
}

/// Tabulated spectral gap and log-Sobolev constant; `logsob = None`
/// where no value is tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedConstants {
    pub gap: f64,
    pub logsob: Option<f64>,
    pub source: &'static str,
}

impl NamedChain {
    fn check_range(&self) -> Result<()> {
        let ok = match *self {
            NamedChain::Hypercube(n) => (1..=8).contains(&n),
            NamedChain::Circle(m) => (4..=ORDER_CAP).contains(&m),
            NamedChain::Complete(m) => (3..=ORDER_CAP).contains(&m),
            NamedChain::Transpositions(n) => (2..=5).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("{self:?} is outside the tabulated range")))
        }
    }

    pub fn constants(&self) -> Result<NamedConstants> {
        self.check_range()?;
        Ok(match *self {
            NamedChain::Hypercube(n) => {
                let x = 1.0 / (n as f64 + 1.0);
                NamedConstants {
                    gap: x,
                    logsob: Some(1.0 / x),
                    source: "hypercube: 1/c = gap = 1/(n+1)",
                }
            }
            NamedChain::Circle(m) => NamedConstants {
                gap: 1.0 - (2.0 * std::f64::consts::PI / m as f64).cos(),
                logsob: None,
                source: "circle: gap = 1 - cos(2π/m); log-Sobolev constant not tabulated",
            },
            NamedChain::Complete(m) => {
                let m = m as f64;
                NamedConstants {
                    gap: 1.0 - 1.0 / m,
                    logsob: Some((m - 1.0).ln() / (2.0 - 4.0 / m)),
                    source: "complete: c = log(m-1)/(2-4/m), gap = 1 - 1/m",
                }
            }
            NamedChain::Transpositions(n) => NamedConstants {
                gap: 2.0 / (n as f64 - 1.0),
                logsob: None,
                source: "transpositions: gap = 2/(n-1); log-Sobolev constant not tabulated",
            },
        })
    }

    /// The generator `id − k` of the chain's discrete kernel.
    pub fn generator(&self) -> Result<ClassicalGenerator> {
        self.check_range()?;
        match *self {
            NamedChain::Hypercube(n) => {
                let g = FiniteGroup::hypercube(n)?;
                let mut rates = vec![0.0; g.order];
                for i in 0..n {
                    rates[1 << i] = 1.0 / (n as f64 + 1.0);
                }
                ClassicalGenerator::new(g, &rates)
            }
            NamedChain::Circle(m) => {
                let g = FiniteGroup::cyclic(m)?;
                let mut rates = vec![0.0; m];
                rates[1] += 0.5;
                rates[m - 1] += 0.5;
                ClassicalGenerator::new(g, &rates)
            }
            NamedChain::Complete(m) => ClassicalGenerator::uniform(FiniteGroup::cyclic(m)?, 1.0 / m as f64),
            NamedChain::Transpositions(n) => {
                let g = FiniteGroup::symmetric(n)?;
                let mut rates = vec![0.0; g.order];
                let w = 2.0 / (n as f64 * (n as f64 - 1.0));
                for t in transpositions(n) {
                    rates[t] = w;
                }
                ClassicalGenerator::new(g, &rates)
            }
        }
    }
}

/// Heat-kernel families on compact Lie groups with closed-form bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "dim")]
pub enum LieGroup {
    /// One-dimensional torus.
    Torus1,
    /// `n`-dimensional torus, `n > 1`.
    TorusN(usize),
    /// Real connected semisimple compact group of dimension `n ≥ 3`.
    Semisimple(usize),
}

impl LieGroup {
    fn check(&self) -> Result<()> {
        match *self {
            LieGroup::TorusN(n) if n < 2 => Err(Error::domain("torus_n needs n > 1")),
            LieGroup::Semisimple(n) if n < 3 => Err(Error::domain("semisimple needs n >= 3")),
            _ => Ok(()),
        }
    }

    /// Lower bound `n/(8(n−1))` on the spectral gap of a semisimple group.
    pub fn semisimple_gap_lower_bound(n: usize) -> f64 {
        n as f64 / (8.0 * (n as f64 - 1.0))
    }

    /// Upper bound on `sup_g ‖h ↦ k_t(g h⁻¹) − 1‖_2`.
    pub fn kernel_bound(&self, t: f64) -> Result<f64> {
        self.check()?;
        if !(t > 0.0) {
            return Err(Error::domain(format!("Lie-group bounds need t > 0, got {t}")));
        }
        Ok(match *self {
            LieGroup::Torus1 => (2.0 + (std::f64::consts::PI / (2.0 * t)).sqrt()).sqrt() * (-t).exp(),
            LieGroup::TorusN(n) => {
                let n = n as f64;
                (-t + 0.5 * (0.5 * n * n.ln()).ln() + 6.0).exp()
            }
            LieGroup::Semisimple(n) => {
                let lambda = Self::semisimple_gap_lower_bound(n);
                let n = n as f64;
                let bracket = -t + 16.0 / n + 2.0 * (1.0 + 0.5 * n * (n / 4.0).ln()).ln();
                (1.0 + lambda * bracket).exp()
            }
        })
    }

    /// Smallest `t` at which [`Self::kernel_bound`] reaches `eps`.
    pub fn time_to(&self, eps: f64) -> Result<f64> {
        self.check()?;
        if !(eps > 0.0) {
            return Err(Error::invalid("eps must be positive"));
        }
        Ok(match *self {
            LieGroup::Torus1 => {
                let f = |t: f64| {
                    if t <= 0.0 {
                        f64::INFINITY
                    } else {
                        self.kernel_bound(t).unwrap_or(f64::INFINITY)
                    }
                };
                threshold_time(f, eps)?
            }
            LieGroup::TorusN(n) => {
                let n = n as f64;
                (0.5 * (0.5 * n * n.ln()).ln() + 6.0 - eps.ln()).max(0.0)
            }
            LieGroup::Semisimple(n) => {
                let lambda = Self::semisimple_gap_lower_bound(n);
                let nf = n as f64;
                let shift = 16.0 / nf + 2.0 * (1.0 + 0.5 * nf * (nf / 4.0).ln()).ln();
                (shift + (1.0 - eps.ln()) / lambda).max(0.0)
            }
        })
    }
}

/// Hypercontractivity constant `(1/λ)(λ t0 + ln M + 1)` transferred from a
/// kernel estimate `sup_g ‖k_{t0}(g·⁻¹) − 1‖_2 ≤ M`.
pub fn hc_transfer_constant(lambda: f64, t0: f64, m: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("spectral gap must be positive, got {lambda}")));
    }
    if !(m > 0.0) || !(t0 >= 0.0) {
        return Err(Error::domain("need M > 0 and t0 >= 0"));
    }
    Ok((lambda * t0 + m.ln() + 1.0) / lambda)
}

/// Quantum hypercontractivity constant `2/λ + (c/2) ln ln |G|` from a
/// classical log-Sobolev constant `c`.
pub fn logsob_transfer(c: f64, lambda: f64, order: usize) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain("spectral gap must be positive"));
    }
    if order < 3 {
        return Err(Error::domain("ln ln |G| needs |G| >= 3"));
    }
    Ok(2.0 / lambda + 0.5 * c * (order as f64).ln().ln())
}

/// Time `(c/2) ln ln |G| + γ/λ` at which the log-Sobolev kernel estimate
/// guarantees `sup_g ‖k_t(g·⁻¹) − 1‖_2 ≤ e^{1−γ}`; returns `(t, e^{1−γ})`.
pub fn kernel_estimate(c: f64, lambda: f64, order: usize, gamma: f64) -> Result<(f64, f64)> {
    if order <= 3 {
        return Err(Error::domain("kernel estimate needs |G| > 3"));
    }
    if !(lambda > 0.0) || !(gamma > 0.0) {
        return Err(Error::domain("kernel estimate needs λ > 0 and γ > 0"));
    }
    let t = 0.5 * c * (order as f64).ln().ln() + gamma / lambda;
    Ok((t, (1.0 - gamma).exp()))
}

/// Mixing-time bound for the uniform walk on `m` points from its
/// log-Sobolev constant: `m(1 − ln ε)/(m−1) + m ln(m−1)/(2(m−2))·ln ln m`.
pub fn complete_graph_mixing_bound(m: usize, eps: f64) -> Result<f64> {
    if m < 3 {
        return Err(Error::domain("needs m >= 3"));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid("eps must be positive"));
    }
    let m = m as f64;
    Ok(m * (1.0 - eps.ln()) / (m - 1.0) + m * (m - 1.0).ln() / (2.0 * (m - 2.0)) * m.ln().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn z2_chain() -> ClassicalGenerator {
        ClassicalGenerator::new(FiniteGroup::cyclic(2).unwrap(), &[0.0, 0.5]).unwrap()
    }

    #[test]
    fn two_state_chain_matrix() {
        let g = z2_chain();
        let expected = RMatrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5]);
        assert_abs_diff_eq!(g.matrix, expected, epsilon = 1e-15);
        assert!(g.reversible);
    }

    #[test]
    fn negative_rate_rejected() {
        let err = ClassicalGenerator::new(FiniteGroup::cyclic(3).unwrap(), &[0.0, -1.0, 0.0]);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn identity_rate_is_ignored() {
        let a = ClassicalGenerator::new(FiniteGroup::cyclic(3).unwrap(), &[5.0, 1.0, 1.0]).unwrap();
        let b = ClassicalGenerator::new(FiniteGroup::cyclic(3).unwrap(), &[0.0, 1.0, 1.0]).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn constants_are_in_kernel() {
        let g = NamedChain::Transpositions(4).generator().unwrap();
        let ones = nalgebra::DVector::from_element(g.order(), 1.0);
        assert!((&g.matrix * ones).amax() < 1e-14);
    }

    #[test]
    fn reversible_flag_tracks_inverse_symmetry() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(
            !ClassicalGenerator::new(z3.clone(), &[0.0, 1.0, 0.0])
                .unwrap()
                .reversible
        );
        assert!(ClassicalGenerator::new(z3, &[0.0, 0.3, 0.3]).unwrap().reversible);
    }

    #[test]
    fn kernel_at_zero_is_delta() {
        let g = NamedChain::Complete(5).generator().unwrap();
        let k = g.kernel_at(0.0).unwrap();
        assert_abs_diff_eq!(k.values[0], 5.0, epsilon = 1e-12);
        for v in &k.values[1..] {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(k.distance_to_uniform(f64::INFINITY), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn two_state_kernel_closed_form() {
        let g = z2_chain();
        for t in [0.1, 0.7, 2.0, 5.0] {
            let k = g.kernel_at(t).unwrap();
            assert_abs_diff_eq!(k.values[0], 1.0 + (-t).exp(), epsilon = 1e-12);
            assert_abs_diff_eq!(k.values[1], 1.0 - (-t).exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn complete_graph_mixes_to_uniform() {
        let g = NamedChain::Complete(6).generator().unwrap();
        let k = g.kernel_at(40.0).unwrap();
        assert!(k.distance_to_uniform(f64::INFINITY) < 1e-12);
    }

    #[test]
    fn complete_graph_sup_distance_closed_form() {
        // L = I − J/m gives k_t = 1 + (m δ_e − 1) e^{−t}
        let m = 7;
        let g = NamedChain::Complete(m).generator().unwrap();
        for t in [0.0_f64, 0.3, 1.5, 4.0] {
            let expected = (m as f64 - 1.0) * (-t).exp();
            assert_abs_diff_eq!(g.kernel_norm(t, f64::INFINITY).unwrap(), expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn evaluator_matches_dense_exponential() {
        for chain in [
            NamedChain::Hypercube(3),
            NamedChain::Circle(7),
            NamedChain::Transpositions(4),
        ] {
            let g = chain.generator().unwrap();
            let ev = g.evaluator().unwrap();
            for t in [0.05, 0.5, 3.0] {
                let a = g.kernel_at(t).unwrap();
                let b = ev.kernel(t);
                for (x, y) in a.values.iter().zip(&b.values) {
                    assert_abs_diff_eq!(x, y, epsilon = 1e-10);
                }
            }
        }
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let g = ClassicalGenerator::new(z3, &[0.0, 1.0, 0.2]).unwrap();
        let ev = g.evaluator().unwrap();
        assert_eq!(g.kernel_at(0.8).unwrap(), ev.kernel(0.8));
    }

    #[test]
    fn kernel_slice_invariants() {
        let g = NamedChain::Transpositions(4).generator().unwrap();
        for t in [0.0, 0.2, 1.0, 6.0] {
            let k = g.kernel_at(t).unwrap();
            assert_abs_diff_eq!(k.mean(), 1.0, epsilon = 1e-12);
            assert!(k.values.iter().all(|&v| v >= -1e-12));
        }
    }

    #[test]
    fn l2_distance_squares_to_doubled_time_kernel() {
        for chain in [NamedChain::Circle(6), NamedChain::Hypercube(3)] {
            let g = chain.generator().unwrap();
            for t in [0.1, 0.8, 2.5] {
                let lhs = g.kernel_norm(t, 2.0).unwrap().powi(2);
                let rhs = g.kernel_at(2.0 * t).unwrap().values[0] - 1.0;
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn named_gaps_circle_and_transpositions() {
        assert_abs_diff_eq!(
            NamedChain::Transpositions(3)
                .generator()
                .unwrap()
                .spectral_gap()
                .unwrap(),
            1.0,
            epsilon = 1e-10
        );
        let c = NamedChain::Circle(8);
        assert_abs_diff_eq!(
            c.generator().unwrap().spectral_gap().unwrap(),
            c.constants().unwrap().gap,
            epsilon = 1e-10
        );
    }

    #[test]
    fn tabulated_constants() {
        let h = NamedChain::Hypercube(3).constants().unwrap();
        assert_abs_diff_eq!(h.gap, 0.25);
        assert_abs_diff_eq!(h.logsob.unwrap(), 4.0);
        let c = NamedChain::Complete(4).constants().unwrap();
        assert_abs_diff_eq!(c.logsob.unwrap(), 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.gap, 0.75);
        assert_abs_diff_eq!(NamedChain::Transpositions(5).constants().unwrap().gap, 0.5);
        assert!(NamedChain::Circle(5).constants().unwrap().logsob.is_none());
        assert!(matches!(NamedChain::Circle(3).constants(), Err(Error::Domain(_))));
    }

    #[test]
    fn non_reversible_gap_is_flagged() {
        let g = ClassicalGenerator::new(FiniteGroup::cyclic(5).unwrap(), &[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = g.spectral_gap_report(ZERO_EIGENVALUE_THRESHOLD).unwrap();
        assert!(r.symmetrized);
        // symmetric part is the circle walk with rates 1/2
        assert_abs_diff_eq!(r.gap, 1.0 - (2.0 * std::f64::consts::PI / 5.0).cos(), epsilon = 1e-10);
    }

    #[test]
    fn t_eps_two_state_closed_form() {
        let g = z2_chain();
        for eps in [0.5, 0.1, 0.01] {
            assert_abs_diff_eq!(g.t_eps(eps).unwrap(), (1.0 / eps).ln(), epsilon = 1e-9);
        }
        assert_eq!(g.t_eps(1.0).unwrap(), 0.0);
        assert_eq!(g.t_eps(3.0).unwrap(), 0.0);
    }

    #[test]
    fn mixing_time_zero_when_already_mixed() {
        let g = NamedChain::Complete(4).generator().unwrap();
        let start = g.kernel_norm(0.0, 1.0).unwrap();
        assert_eq!(g.mixing_time(start).unwrap(), 0.0);
    }

    #[test]
    fn non_primitive_chain_has_no_mixing_time() {
        let g = ClassicalGenerator::uniform(FiniteGroup::cyclic(4).unwrap(), 0.0).unwrap();
        assert!(matches!(g.mixing_time(0.1), Err(Error::Domain(_))));
        assert!(matches!(g.t_eps(0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn threshold_time_takes_last_crossing() {
        // dips below 0.5 near t = 1, comes back up, finally decays
        let f = |t: f64| (-t).exp() * (1.0 + 30.0 * (-4.0 * (t - 2.0).powi(2)).exp());
        let t = threshold_time(f, 0.5).unwrap();
        assert!(f(t) <= 0.5 + 1e-12);
        for i in 0..200 {
            let s = t + 0.05 * i as f64;
            assert!(f(s) <= 0.5 + 1e-9, "rises again at {s}");
        }
        assert!(t > 2.0);
    }

    #[test]
    fn hc_constant_unit_inputs() {
        assert_abs_diff_eq!(hc_transfer_constant(1.0, 0.0, 1.0).unwrap(), 1.0);
        assert!(matches!(hc_transfer_constant(0.0, 1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn torus_bounds() {
        let b = LieGroup::Torus1.kernel_bound(1.0).unwrap();
        assert_abs_diff_eq!(
            b,
            (2.0 + (std::f64::consts::PI / 2.0).sqrt()).sqrt() / std::f64::consts::E,
            epsilon = 1e-15
        );
        let n = 2.0f64;
        let t = 0.5 * (0.5 * n * n.ln()).ln() + 6.0;
        assert_abs_diff_eq!(LieGroup::TorusN(2).kernel_bound(t).unwrap(), 1.0, epsilon = 1e-12);
        assert!(LieGroup::TorusN(1).kernel_bound(1.0).is_err());
        assert!(LieGroup::Torus1.kernel_bound(0.0).is_err());
    }

    #[test]
    fn lie_time_inverts_bound() {
        for kind in [
            LieGroup::Torus1,
            LieGroup::TorusN(4),
            LieGroup::Semisimple(3),
            LieGroup::Semisimple(8),
        ] {
            for eps in [0.5, 0.05] {
                let t = kind.time_to(eps).unwrap();
                assert_abs_diff_eq!(kind.kernel_bound(t).unwrap(), eps, epsilon = 1e-9);
            }
        }
    }
}
