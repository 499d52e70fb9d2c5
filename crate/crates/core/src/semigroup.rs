// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Lindbladians, channels and conditional expectations as superoperators.
//!
//! Maps act in the Heisenberg picture on `B(C^d)` and are stored as
//! `d² × d²` matrices on column-stacked operators. The map `x ↦ a x b`
//! is `bᵀ ⊗ a`, so conjugation `x ↦ u† x u` is `uᵀ ⊗ u†`.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    c, hermitian_eigen, hermitian_eigenvalues, identity, is_hermitian, kron, max_abs, trace, trace_norm, unvectorize,
    vectorize, CMatrix, RMatrix, ONE,
};
use crate::markov::{threshold_time, ClassicalGenerator, ZERO_EIGENVALUE_THRESHOLD};
use crate::rep::ProjectiveRep;

/// Largest Hilbert-space dimension for which superoperators are built.
pub const SUPEROPERATOR_DIM_CAP: usize = 32;
/// Floor on Choi eigenvalues accepted as positive.
pub const CHOI_EIGENVALUE_FLOOR: f64 = -1e-9;
const HERMITIAN_TOL: f64 = 1e-10;
const UNITALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuperKind {
    Lindbladian,
    Channel,
    ConditionalExpectation,
}

#[derive(Debug, Clone)]
pub struct Superoperator {
    pub dim: usize,
    pub matrix: CMatrix,
    pub kind: SuperKind,
    /// Hermitian for the Hilbert–Schmidt inner product.
    pub selfadjoint_hs: bool,
}

impl Superoperator {
    /// Wraps a `d² × d²` matrix; self-adjointness is read off the matrix.
    pub fn from_matrix(dim: usize, matrix: CMatrix, kind: SuperKind) -> Result<Self> {
        check_dim(dim)?;
        if matrix.nrows() != dim * dim || matrix.ncols() != dim * dim {
            return Err(Error::invalid(format!(
                "superoperator on dimension {dim} must be {0}×{0}",
                dim * dim
            )));
        }
        let selfadjoint_hs = is_hermitian(&matrix, HERMITIAN_TOL);
        Ok(Self {
            dim,
            matrix,
            kind,
            selfadjoint_hs,
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_matrix(dim, identity(dim * dim), SuperKind::Channel)
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        unvectorize(&(&self.matrix * vectorize(x)), self.dim)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Superoperator) -> Result<Superoperator> {
        if self.dim != other.dim {
            return Err(Error::invalid("composing superoperators of different dimensions"));
        }
        Superoperator::from_matrix(self.dim, &self.matrix * &other.matrix, self.kind)
    }

    /// Hilbert–Schmidt adjoint; for a Heisenberg channel this is the
    /// Schrödinger-picture map.
    pub fn adjoint(&self) -> Superoperator {
        Superoperator {
            dim: self.dim,
            matrix: self.matrix.adjoint(),
            kind: self.kind,
            selfadjoint_hs: self.selfadjoint_hs,
        }
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`.
    pub fn choi(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                // column i + d·j of the matrix is vec Φ(|i⟩⟨j|)
                let col = self.matrix.column(i + d * j);
                for a in 0..d {
                    for b in 0..d {
                        out[(i * d + a, j * d + b)] = col[a + d * b];
                    }
                }
            }
        }
        out
    }

    pub fn min_choi_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.choi())[0]
    }

    pub fn is_completely_positive(&self) -> bool {
        self.min_choi_eigenvalue() >= CHOI_EIGENVALUE_FLOOR
    }

    /// `‖Φ(I) − I‖_∞` entrywise.
    pub fn unitality_defect(&self) -> f64 {
        let id = identity(self.dim);
        max_abs(&(self.apply(&id) - id))
    }

    /// `‖Φ(I)‖_∞` entrywise, which vanishes for Lindbladians.
    pub fn image_of_identity(&self) -> f64 {
        max_abs(&self.apply(&identity(self.dim)))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if dim > SUPEROPERATOR_DIM_CAP {
        return Err(Error::limit(format!(
            "superoperator dimension {dim} exceeds cap {SUPEROPERATOR_DIM_CAP}"
        )));
    }
    Ok(())
}

/// Superoperator of `x ↦ a x b`.
pub fn sandwich(a: &CMatrix, b: &CMatrix) -> CMatrix {
    kron(&b.transpose(), a)
}

/// Superoperator of `x ↦ u† x u`.
pub fn conjugation(u: &CMatrix) -> CMatrix {
    sandwich(&u.adjoint(), u)
}

/// Trace-one positive semi-definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !is_hermitian(&matrix, 1e-12) {
            return Err(Error::invalid("density matrix is not Hermitian"));
        }
        let tr = trace(&matrix);
        if (tr - ONE).norm() > 1e-10 {
            return Err(Error::invalid(format!("density matrix has trace {tr}")));
        }
        let min = hermitian_eigenvalues(&matrix)[0];
        if min < -1e-10 {
            return Err(Error::invalid(format!("density matrix has eigenvalue {min}")));
        }
        Ok(Self { matrix })
    }

    pub fn pure(psi: &DVector<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::invalid("zero vector"));
        }
        let v = psi / c(norm, 0.0);
        Self::new(&v * v.adjoint())
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: identity(d) / c(d as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

fn same_group(rep: &ProjectiveRep, gen: &ClassicalGenerator) -> Result<()> {
    if rep.group.mul != gen.group.mul || rep.group.identity != gen.group.identity {
        return Err(Error::invalid(format!(
            "representation of {} and generator on {} use different groups",
            rep.group.label, gen.group.label
        )));
    }
    Ok(())
}

/// `L(x) = Σ_g c_g (x − u(g)† x u(g))`.
pub fn transferred_lindbladian(rep: &ProjectiveRep, gen: &ClassicalGenerator) -> Result<Superoperator> {
    same_group(rep, gen)?;
    check_dim(rep.dim)?;
    let n = rep.dim * rep.dim;
    let mut m = CMatrix::zeros(n, n);
    let id = identity(n);
    for g in rep.group.elements() {
        let rate = gen.rates[g];
        if rate == 0.0 {
            continue;
        }
        m += (&id - conjugation(rep.u(g))) * c(rate, 0.0);
    }
    Superoperator::from_matrix(rep.dim, m, SuperKind::Lindbladian)
}

/// Normalization of diffusive generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffusiveNormalization {
    /// `Σ_j a_j² x + x a_j² − 2 a_j x a_j`.
    #[default]
    Standard,
    /// `Σ_j ½(a_j² x + x a_j²) − a_j x a_j`, the collective-decoherence form.
    Halved,
}

/// Lindbladian generated by self-adjoint operators `a_j`.
pub fn diffusive_lindbladian(ops: &[CMatrix], normalization: DiffusiveNormalization) -> Result<Superoperator> {
    let Some(first) = ops.first() else {
        return Err(Error::invalid("diffusive generator needs at least one operator"));
    };
    let d = first.nrows();
    check_dim(d)?;
    let id = identity(d);
    let mut m = CMatrix::zeros(d * d, d * d);
    for (j, a) in ops.iter().enumerate() {
        if a.nrows() != d || !is_hermitian(a, HERMITIAN_TOL) {
            return Err(Error::invalid(format!(
                "operator {j} is not a Hermitian {d}×{d} matrix"
            )));
        }
        let a2 = a * a;
        m += sandwich(&a2, &id) + sandwich(&id, &a2) - sandwich(a, a) * c(2.0, 0.0);
    }
    if normalization == DiffusiveNormalization::Halved {
        m *= c(0.5, 0.0);
    }
    let mut s = Superoperator::from_matrix(d, m, SuperKind::Lindbladian)?;
    s.selfadjoint_hs = true;
    Ok(s)
}

/// Heisenberg channel `exp(−tL)`. Self-adjoint Lindbladians go through their
/// eigendecomposition, others through Padé scaling and squaring.
pub fn channel_at(lind: &Superoperator, t: f64) -> Result<Superoperator> {
    Propagator::new(lind)?.channel(t)
}

/// Cached spectral data for repeated evaluation of `exp(−tL)`.
pub struct Propagator {
    dim: usize,
    generator: CMatrix,
    spectral: Option<(Vec<f64>, CMatrix)>,
}

impl Propagator {
    pub fn new(lind: &Superoperator) -> Result<Self> {
        if lind.kind != SuperKind::Lindbladian {
            return Err(Error::invalid("expected a Lindbladian"));
        }
        let spectral = lind.selfadjoint_hs.then(|| hermitian_eigen(&lind.matrix));
        Ok(Self {
            dim: lind.dim,
            generator: lind.matrix.clone(),
            spectral,
        })
    }

    fn check_time(t: f64) -> Result<()> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::invalid(format!("time must be finite and >= 0, got {t}")));
        }
        Ok(())
    }

    fn matrix(&self, t: f64) -> Result<CMatrix> {
        Self::check_time(t)?;
        let m = match &self.spectral {
            Some((values, vectors)) => {
                let mut scaled = vectors.clone();
                for (j, &lambda) in values.iter().enumerate() {
                    scaled.column_mut(j).scale_mut((-t * lambda).exp());
                }
                scaled * vectors.adjoint()
            }
            None => (&self.generator * c(-t, 0.0)).exp(),
        };
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::numerical(format!("exp(−tL) is not finite at t={t}")));
        }
        Ok(m)
    }

    /// `exp(−tL)` as a checked channel.
    pub fn channel(&self, t: f64) -> Result<Superoperator> {
        let ch = Superoperator::from_matrix(self.dim, self.matrix(t)?, SuperKind::Channel)?;
        let defect = ch.unitality_defect();
        if defect > UNITALITY_TOL {
            return Err(Error::numerical(format!(
                "channel at t={t} is not unital (defect {defect:e})"
            )));
        }
        let min = ch.min_choi_eigenvalue();
        if min < CHOI_EIGENVALUE_FLOOR {
            return Err(Error::numerical(format!(
                "channel at t={t} has Choi eigenvalue {min:e}"
            )));
        }
        Ok(ch)
    }

    /// Orthogonal projection onto `ker L`, the `t → ∞` limit of `exp(−tL)`.
    /// Only available for self-adjoint generators.
    pub fn stationary_projection(&self) -> Result<Superoperator> {
        let Some((values, vectors)) = &self.spectral else {
            return Err(Error::domain("stationary projection needs a self-adjoint Lindbladian"));
        };
        let n = self.dim * self.dim;
        let mut m = CMatrix::zeros(n, n);
        for (j, &lambda) in values.iter().enumerate() {
            if lambda.abs() <= ZERO_EIGENVALUE_THRESHOLD {
                let v = vectors.column(j);
                m += v * v.adjoint();
            }
        }
        Superoperator::from_matrix(self.dim, m, SuperKind::ConditionalExpectation)
    }

    /// `exp(−tL)(x)` without forming the checked channel.
    pub fn apply(&self, t: f64, x: &CMatrix) -> Result<CMatrix> {
        Self::check_time(t)?;
        match &self.spectral {
            Some((values, vectors)) => {
                let mut coeffs = vectors.adjoint() * vectorize(x);
                for (j, &lambda) in values.iter().enumerate() {
                    coeffs[j] *= (-t * lambda).exp();
                }
                Ok(unvectorize(&(vectors * coeffs), self.dim))
            }
            None => Ok(unvectorize(&(self.matrix(t)? * vectorize(x)), self.dim)),
        }
    }
}

/// `E(x) = (1/|G|) Σ_g u(g)† x u(g)`.
pub fn conditional_expectation(rep: &ProjectiveRep) -> Result<Superoperator> {
    check_dim(rep.dim)?;
    let n = rep.dim * rep.dim;
    let mut m = CMatrix::zeros(n, n);
    for g in rep.group.elements() {
        m += conjugation(rep.u(g));
    }
    m /= c(rep.group.order as f64, 0.0);
    Superoperator::from_matrix(rep.dim, m, SuperKind::ConditionalExpectation)
}

/// Smallest eigenvalue of a self-adjoint Lindbladian above the zero threshold.
pub fn quantum_spectral_gap(lind: &Superoperator) -> Result<f64> {
    if lind.kind != SuperKind::Lindbladian {
        return Err(Error::invalid("expected a Lindbladian"));
    }
    if !lind.selfadjoint_hs {
        return Err(Error::domain(
            "spectral gap needs a self-adjoint Lindbladian; use symmetrized_spectral_gap",
        ));
    }
    Ok(smallest_positive(&lind.hermitian_spectrum()))
}

/// Gap of the Hermitian part `(L + L†)/2`.
pub fn symmetrized_spectral_gap(lind: &Superoperator) -> f64 {
    smallest_positive(&lind.hermitian_spectrum())
}

fn smallest_positive(values: &[f64]) -> f64 {
    values
        .iter()
        .copied()
        .find(|&x| x > ZERO_EIGENVALUE_THRESHOLD)
        .unwrap_or(0.0)
}

/// Both sides of `u(g)† T_t(x) u(g) = Σ_h S_t(g,h) u(h)† x u(h)` at one time.
pub struct FactorizationCheck<'a> {
    rep: &'a ProjectiveRep,
    channel: Superoperator,
    transition: RMatrix,
}

impl<'a> FactorizationCheck<'a> {
    pub fn new(rep: &'a ProjectiveRep, gen: &ClassicalGenerator, t: f64) -> Result<Self> {
        let lind = transferred_lindbladian(rep, gen)?;
        Ok(Self {
            rep,
            channel: channel_at(&lind, t)?,
            transition: gen.transition_matrix(t)?,
        })
    }

    /// Largest entrywise difference of the two sides at element `g`.
    pub fn residual(&self, x: &CMatrix, g: usize) -> f64 {
        let lhs = self.rep.conjugate(g, &self.channel.apply(x));
        let mut rhs = CMatrix::zeros(self.rep.dim, self.rep.dim);
        for h in self.rep.group.elements() {
            let p = self.transition[(g, h)];
            if p != 0.0 {
                rhs += self.rep.conjugate(h, x) * c(p, 0.0);
            }
        }
        max_abs(&(lhs - rhs))
    }
}

pub fn check_factorization(
    rep: &ProjectiveRep,
    gen: &ClassicalGenerator,
    t: f64,
    x: &CMatrix,
    g: usize,
) -> Result<f64> {
    if g >= rep.group.order {
        return Err(Error::invalid(format!("element {g} out of range")));
    }
    Ok(FactorizationCheck::new(rep, gen, t)?.residual(x, g))
}

/// `‖T_t(ρ) − E(ρ)‖_1`. The transferred maps are self-adjoint on the
/// states considered here, so the Heisenberg maps are applied directly.
pub fn trace_distance_to_fix(lind: &Superoperator, rep: &ProjectiveRep, t: f64, rho: &DensityMatrix) -> Result<f64> {
    let ch = channel_at(lind, t)?.adjoint();
    let e = conditional_expectation(rep)?;
    Ok(trace_norm(&(ch.apply(&rho.matrix) - e.apply(&rho.matrix))))
}

/// Largest, over `states`, first time after which `‖T_t†ρ − E†ρ‖_1 ≤ eps`.
/// A lower bound on the decoherence time.
pub fn decoherence_time_lower_bound(
    lind: &Superoperator,
    rep: &ProjectiveRep,
    states: &[DensityMatrix],
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::invalid("eps must be positive"));
    }
    let prop = Propagator::new(&lind.adjoint())?;
    let e = conditional_expectation(rep)?.adjoint();
    let times: Result<Vec<f64>> = states
        .par_iter()
        .map(|rho| {
            let target = e.apply(&rho.matrix);
            threshold_time(
                |t| {
                    prop.apply(t, &rho.matrix)
                        .map(|r| trace_norm(&(r - &target)))
                        .unwrap_or(f64::INFINITY)
                },
                eps,
            )
        })
        .collect();
    Ok(times?.into_iter().fold(0.0, f64::max))
}

/// Inputs for [`deco_bounds`]; each bound is produced when its inputs are present.
#[derive(Debug, Clone, Default)]
pub struct DecoInputs<'a> {
    pub generator: Option<&'a ClassicalGenerator>,
    /// Spectral gap; computed from `generator` when absent.
    pub gap: Option<f64>,
    /// `‖x‖_2` budget for the spectral-gap route.
    pub x_norm2: Option<f64>,
    /// Ultracontractivity constant `C` for the `(p, q)` route.
    pub uc_constant: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecoBounds {
    pub via_mixing: Option<f64>,
    pub via_gap: Option<f64>,
    pub via_uc: Option<f64>,
}

/// Upper bounds on the decoherence time at accuracy `eps`.
pub fn deco_bounds(inputs: &DecoInputs, eps: f64) -> Result<DecoBounds> {
    if !(eps > 0.0) {
        return Err(Error::invalid("eps must be positive"));
    }
    let via_mixing = inputs.generator.map(|g| g.mixing_time(eps)).transpose()?;
    let gap = match (inputs.gap, inputs.generator) {
        (Some(l), _) => Some(l),
        (None, Some(g)) => Some(g.spectral_gap()?),
        (None, None) => None,
    };
    if let Some(l) = gap {
        if !(l > 0.0) {
            return Err(Error::domain("spectral gap must be positive"));
        }
    }
    let via_gap = match (gap, inputs.x_norm2) {
        (Some(l), Some(x)) => Some(((x / eps).ln() / l).max(0.0)),
        _ => None,
    };
    let via_uc = match (gap, inputs.uc_constant) {
        (Some(l), Some(cst)) => {
            let p = inputs.p.unwrap_or(1.0);
            let q = inputs.q.unwrap_or(f64::INFINITY);
            let spread = 1.0 / p - 1.0 / q;
            if !(p >= 1.0) || !(q > p) || !(cst > 0.0) {
                return Err(Error::invalid("uc route needs 1 <= p < q and C > 0"));
            }
            Some(1.0 + (cst.ln() + (1.0 / eps).ln() / spread) / l)
        }
        _ => None,
    };
    if via_mixing.is_none() && via_gap.is_none() && via_uc.is_none() {
        return Err(Error::invalid(
            "deco_bounds: no bound can be formed from the given inputs",
        ));
    }
    Ok(DecoBounds {
        via_mixing,
        via_gap,
        via_uc,
    })
}

/// Sample mean of `u(g_t)† x u(g_t)` with entrywise standard errors.
#[derive(Debug, Clone)]
pub struct MonteCarloEstimate {
    pub mean: CMatrix,
    pub stderr_re: RMatrix,
    pub stderr_im: RMatrix,
    pub samples: usize,
}

impl MonteCarloEstimate {
    /// Whether every entry lies within `k` standard errors of `exact`
    /// (with a floor of 1e−12 for entries that never fluctuate).
    pub fn agrees_with(&self, exact: &CMatrix, k: f64) -> bool {
        self.mean.iter().zip(exact.iter()).enumerate().all(|(i, (m, e))| {
            let (tol_re, tol_im) = ((k * self.stderr_re[i]).max(1e-12), (k * self.stderr_im[i]).max(1e-12));
            (m.re - e.re).abs() <= tol_re && (m.im - e.im).abs() <= tol_im
        })
    }
}

/// Averages `u(g_t)† x u(g_t)` over trajectories of the jump process
/// `g → h·g` at rate `c_h`, started at the identity. Trajectory `i` uses
/// stream `i` of a ChaCha8 generator seeded with `seed`.
pub fn monte_carlo_unravel(
    rep: &ProjectiveRep,
    gen: &ClassicalGenerator,
    t: f64,
    x: &CMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    same_group(rep, gen)?;
    if n_samples == 0 {
        return Err(Error::invalid("n_samples must be positive"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid("time must be finite and >= 0"));
    }
    let total = gen.total_rate();
    let holding = (total > 0.0).then(|| Exp::new(total).expect("positive rate"));
    let cumulative: Vec<f64> = gen
        .rates
        .iter()
        .scan(0.0, |acc, r| {
            *acc += r;
            Some(*acc)
        })
        .collect();

    let endpoints: Vec<usize> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut g = gen.group.identity;
            let Some(holding) = holding else {
                return g;
            };
            let mut clock = 0.0;
            loop {
                clock += holding.sample(&mut rng);
                if clock > t {
                    return g;
                }
                let target = rand::Rng::random::<f64>(&mut rng) * total;
                let h = cumulative
                    .iter()
                    .position(|&c| c > target)
                    .unwrap_or(cumulative.len() - 1);
                g = gen.group.op(h, g);
            }
        })
        .collect();

    // Trajectories only matter through their endpoint; sum in index order.
    let mut counts = vec![0usize; gen.group.order];
    for &g in &endpoints {
        counts[g] += 1;
    }
    let d = rep.dim;
    let values: Vec<CMatrix> = rep.group.elements().map(|g| rep.conjugate(g, x)).collect();
    let n = n_samples as f64;
    let mut mean = CMatrix::zeros(d, d);
    for (g, &k) in counts.iter().enumerate() {
        if k > 0 {
            mean += &values[g] * c(k as f64 / n, 0.0);
        }
    }
    let mut var_re = RMatrix::zeros(d, d);
    let mut var_im = RMatrix::zeros(d, d);
    for (g, &k) in counts.iter().enumerate() {
        if k == 0 {
            continue;
        }
        for (idx, v) in values[g].iter().enumerate() {
            let dev = v - mean[idx];
            var_re[idx] += k as f64 * dev.re * dev.re;
            var_im[idx] += k as f64 * dev.im * dev.im;
        }
    }
    let denom = (n - 1.0).max(1.0) * n;
    Ok(MonteCarloEstimate {
        mean,
        stderr_re: var_re.map(|v| (v / denom).sqrt()),
        stderr_im: var_im.map(|v| (v / denom).sqrt()),
        samples: n_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::linalg::{collective, random_gaussian_matrix, sigma_x, sigma_z};
    use crate::rep::{char_rep, weyl_rep};

    fn depolarizing(n: usize) -> (ProjectiveRep, ClassicalGenerator) {
        let rep = weyl_rep(n).unwrap();
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / (n * n) as f64).unwrap();
        (rep, gen)
    }

    #[test]
    fn sandwich_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_gaussian_matrix(3, 3, &mut rng);
        let b = random_gaussian_matrix(3, 3, &mut rng);
        let x = random_gaussian_matrix(3, 3, &mut rng);
        let s = Superoperator::from_matrix(3, sandwich(&a, &b), SuperKind::Channel).unwrap();
        assert!(max_abs(&(s.apply(&x) - &a * &x * &b)) < 1e-12);
    }

    #[test]
    fn choi_of_identity_is_unnormalized_bell_projector() {
        let id = Superoperator::identity(2).unwrap();
        let choi = id.choi();
        let eig = hermitian_eigenvalues(&choi);
        assert!((eig[3] - 2.0).abs() < 1e-12);
        assert!(eig[..3].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn qubit_depolarizing_generator() {
        let (rep, gen) = depolarizing(2);
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_gaussian_matrix(2, 2, &mut rng);
        let expected = &x - identity(2) * (trace(&x) / 2.0);
        assert!(max_abs(&(lind.apply(&x) - expected)) < 1e-12);
        assert!(lind.selfadjoint_hs);
        assert!(lind.image_of_identity() < 1e-12);
    }

    #[test]
    fn zero_rates_give_zero_generator() {
        let rep = char_rep(3).unwrap();
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 0.0).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        assert_eq!(max_abs(&lind.matrix), 0.0);
    }

    #[test]
    fn group_mismatch_rejected() {
        let rep = char_rep(3).unwrap();
        let gen = ClassicalGenerator::uniform(FiniteGroup::cyclic(4).unwrap(), 1.0).unwrap();
        assert!(matches!(
            transferred_lindbladian(&rep, &gen),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sigma_z_diffusion() {
        let lind = diffusive_lindbladian(&[sigma_z()], DiffusiveNormalization::Standard).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = random_gaussian_matrix(2, 2, &mut rng);
        let expected = (&x - sigma_z() * &x * sigma_z()) * c(2.0, 0.0);
        assert!(max_abs(&(lind.apply(&x) - expected)) < 1e-12);
        assert!(diffusive_lindbladian(&[sigma_x() * c(0.0, 1.0)], DiffusiveNormalization::Standard).is_err());
    }

    #[test]
    fn spectral_and_pade_routes_agree() {
        let (rep, gen) = depolarizing(3);
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        let spectral = channel_at(&lind, 0.7).unwrap();
        let pade = (&lind.matrix * c(-0.7, 0.0)).exp();
        assert!(max_abs(&(spectral.matrix - pade)) < 1e-12);
    }

    #[test]
    fn depolarizing_channel_closed_form() {
        let (rep, gen) = depolarizing(2);
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        let t = 0.9f64;
        let ch = channel_at(&lind, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_gaussian_matrix(2, 2, &mut rng);
        let expected = &x * c((-t).exp(), 0.0) + identity(2) * (trace(&x) * (1.0 - (-t).exp()) / 2.0);
        assert!(max_abs(&(ch.apply(&x) - expected)) < 1e-12);
        assert!(max_abs(&(channel_at(&lind, 0.0).unwrap().matrix - identity(4))) < 1e-12);
    }

    #[test]
    fn non_selfadjoint_channel_uses_pade() {
        let rep = char_rep(3).unwrap();
        let gen = ClassicalGenerator::new(rep.group.clone(), &[0.0, 1.0, 0.0]).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        assert!(!lind.selfadjoint_hs);
        assert!(matches!(quantum_spectral_gap(&lind), Err(Error::Domain(_))));
        let a = channel_at(&lind, 0.4).unwrap();
        let b = channel_at(&lind, 0.6).unwrap();
        let ab = channel_at(&lind, 1.0).unwrap();
        assert!(max_abs(&(a.compose(&b).unwrap().matrix - ab.matrix)) < 1e-12);
    }

    #[test]
    fn conditional_expectation_of_dephasing_is_diagonal_projection() {
        let e = conditional_expectation(&char_rep(3).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = random_gaussian_matrix(3, 3, &mut rng);
        let diag = CMatrix::from_diagonal(&x.diagonal());
        assert!(max_abs(&(e.apply(&x) - diag)) < 1e-12);
        assert!(max_abs(&(e.compose(&e).unwrap().matrix - &e.matrix)) < 1e-12);
    }

    #[test]
    fn wcd_gap_is_two() {
        for n in 2..=3 {
            let a = collective(&sigma_z(), n);
            let lind = diffusive_lindbladian(&[a], DiffusiveNormalization::Halved).unwrap();
            assert!((quantum_spectral_gap(&lind).unwrap() - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn stationary_projection_matches_group_average() {
        let rep = char_rep(3).unwrap();
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 1.0 / 3.0).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        let p = Propagator::new(&lind).unwrap().stationary_projection().unwrap();
        let e = conditional_expectation(&rep).unwrap();
        assert!(max_abs(&(p.matrix - e.matrix)) < 1e-10);
    }

    #[test]
    fn deco_bounds_plug_in() {
        let inputs = DecoInputs {
            gap: Some(1.0),
            uc_constant: Some(1.0),
            p: Some(1.0),
            q: Some(f64::INFINITY),
            ..Default::default()
        };
        let b = deco_bounds(&inputs, (-1.0f64).exp()).unwrap();
        assert!((b.via_uc.unwrap() - 2.0).abs() < 1e-14);
        assert!(b.via_mixing.is_none());
        assert!(deco_bounds(&DecoInputs::default(), 0.1).is_err());
    }

    #[test]
    fn monte_carlo_at_time_zero_is_exact() {
        let (rep, gen) = depolarizing(2);
        let est = monte_carlo_unravel(&rep, &gen, 0.0, &sigma_x(), 50, 9).unwrap();
        assert_eq!(est.mean, sigma_x());
        assert!(monte_carlo_unravel(&rep, &gen, 1.0, &sigma_x(), 0, 9).is_err());
    }
}
