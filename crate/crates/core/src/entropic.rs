// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Relative entropy, sandwiched Rényi divergences and the entropy
//! comparison inequalities for transferred channels. Natural logarithms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, max_abs, CMatrix};
use crate::markov::KernelSlice;
use crate::rep::ProjectiveRep;
use crate::semigroup::{conditional_expectation, Superoperator};

/// Eigenvalues of `σ` at or below this are treated as outside its support.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;
/// Weight of `ρ` on `ker σ` above which the support condition fails.
const SUPPORT_TOL: f64 = 1e-12;
const COMMUTANT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportPolicy {
    /// `+∞` whenever `ker σ ⊄ ker ρ`.
    #[default]
    Strict,
    /// Clamp the spectrum of `σ` at [`EIGENVALUE_FLOOR`]; always finite.
    Project,
}

struct Spectral {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl Spectral {
    fn of(m: &CMatrix) -> Self {
        let (values, vectors) = hermitian_eigen(m);
        Self { values, vectors }
    }

    /// `f(M)` with `f` applied to each eigenvalue.
    fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(f(v));
        }
        scaled * self.vectors.adjoint()
    }
}

/// `D_p(ρ‖σ)` for `p ∈ [1, ∞]`: relative entropy at `p = 1`, the sandwiched
/// Rényi divergence `ln Tr[(σ^{(1−p)/2p} ρ σ^{(1−p)/2p})^p]/(p−1)` in between,
/// and `ln ‖σ^{−1/2} ρ σ^{−1/2}‖_∞` at `p = ∞`.
pub fn renyi_divergence(rho: &CMatrix, sigma: &CMatrix, p: f64, policy: SupportPolicy) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::invalid(format!("Rényi order must be >= 1, got {p}")));
    }
    if rho.shape() != sigma.shape() || !rho.is_square() {
        return Err(Error::invalid("states must be square matrices of equal size"));
    }
    let mut s = Spectral::of(sigma);
    match policy {
        SupportPolicy::Strict => {
            let weight_outside: f64 = s
                .values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v <= EIGENVALUE_FLOOR)
                .map(|(j, _)| {
                    let v = s.vectors.column(j);
                    (v.adjoint() * rho * v)[(0, 0)].re
                })
                .sum();
            if weight_outside > SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
            for v in &mut s.values {
                if *v <= EIGENVALUE_FLOOR {
                    *v = 0.0;
                }
            }
        }
        SupportPolicy::Project => {
            for v in &mut s.values {
                *v = v.max(EIGENVALUE_FLOOR);
            }
        }
    }
    // Powers act on the support of σ only.
    let power = |a: f64| move |v: f64| if v > 0.0 { v.powf(a) } else { 0.0 };

    if p == 1.0 {
        let r = Spectral::of(rho);
        let neg_entropy: f64 = r.values.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()).sum();
        let cross: f64 = s
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(j, &v)| {
                let col = s.vectors.column(j);
                (col.adjoint() * rho * col)[(0, 0)].re * v.ln()
            })
            .sum();
        return Ok(neg_entropy - cross);
    }
    if p.is_infinite() {
        let half = s.apply(power(-0.5));
        let m = &half * rho * &half;
        let top = hermitian_eigen(&m).0.last().copied().unwrap_or(0.0);
        return Ok(top.ln());
    }
    let gamma = (1.0 - p) / (2.0 * p);
    let side = s.apply(power(gamma));
    let m = &side * rho * &side;
    let q: f64 = hermitian_eigen(&m).0.iter().map(|&v| v.max(0.0).powf(p)).sum();
    Ok(q.ln() / (p - 1.0))
}

/// `D(ρ‖σ) = Tr ρ (ln ρ − ln σ)`.
pub fn relative_entropy(rho: &CMatrix, sigma: &CMatrix) -> Result<f64> {
    renyi_divergence(rho, sigma, 1.0, SupportPolicy::Strict)
}

/// `D(ρ‖E(ρ))`, the relative entropy distance to the fixed-point states.
pub fn d_nfix(rho: &CMatrix, rep: &ProjectiveRep) -> Result<f64> {
    d_nfix_with(rho, &conditional_expectation(rep)?)
}

/// As [`d_nfix`] with a precomputed (self-adjoint) conditional expectation.
pub fn d_nfix_with(rho: &CMatrix, expectation: &Superoperator) -> Result<f64> {
    let e = expectation.adjoint().apply(rho);
    relative_entropy(rho, &e)
}

/// `Φ_ǩ(ρ) = (1/|G|) Σ_g k(g⁻¹) u(g)† ρ u(g)`; for `k = k_t` this is `T_t(ρ)`.
pub fn kernel_channel(rep: &ProjectiveRep, k: &KernelSlice, rho: &CMatrix) -> Result<CMatrix> {
    if k.values.len() != rep.group.order {
        return Err(Error::invalid("kernel and representation live on different groups"));
    }
    let mut out = CMatrix::zeros(rep.dim, rep.dim);
    for g in rep.group.elements() {
        let w = k.values[rep.group.inverse(g)];
        if w != 0.0 {
            out += rep.conjugate(g, rho) * c(w, 0.0);
        }
    }
    Ok(out / c(rep.group.order as f64, 0.0))
}

fn check_in_commutant(rep: &ProjectiveRep, sigma: &CMatrix) -> Result<()> {
    for g in rep.group.elements() {
        let u = rep.u(g);
        if max_abs(&(u * sigma - sigma * u)) > COMMUTANT_TOL {
            return Err(Error::invalid("σ does not commute with the representation"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
}

/// `D(Φ_ǩ(ρ)‖σ) ≤ D(E(ρ)‖σ) + ∫ k ln k dμ` for `σ` in the fixed-point states.
pub fn entropy_comparison_check(
    rep: &ProjectiveRep,
    k: &KernelSlice,
    rho: &CMatrix,
    sigma: &CMatrix,
) -> Result<ComparisonReport> {
    check_in_commutant(rep, sigma)?;
    let phi = kernel_channel(rep, k, rho)?;
    let e = conditional_expectation(rep)?.apply(rho);
    let lhs = relative_entropy(&phi, sigma)?;
    let rhs = relative_entropy(&e, sigma)? + k.entropy_integral();
    Ok(ComparisonReport {
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

/// `(p/(p−1)) ln ‖k‖_p`, with the limits `∫ k ln k` at `p = 1` and
/// `ln ‖k‖_∞` at `p = ∞`.
pub fn renyi_kernel_term(k: &KernelSlice, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::invalid("Rényi order must be >= 1"));
    }
    Ok(if p == 1.0 {
        k.entropy_integral()
    } else if p.is_infinite() {
        k.sup_abs().ln()
    } else {
        p / (p - 1.0) * k.lp_norm(p).ln()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenyiSandwich {
    pub p: f64,
    /// `D_p(E(ρ)‖σ)`.
    pub lower: f64,
    /// `D_p(Φ_ǩ(ρ)‖σ)`.
    pub value: f64,
    /// `lower + (p/(p−1)) ln ‖k‖_p`.
    pub upper: f64,
    pub lower_slack: f64,
    pub upper_slack: f64,
    /// `upper − lower`.
    pub gap: f64,
}

/// Both sides of `D_p(E ρ‖σ) ≤ D_p(Φ_ǩ ρ‖σ) ≤ D_p(E ρ‖σ) + (p/(p−1)) ln ‖k‖_p`.
pub fn renyi_comparison_check(
    rep: &ProjectiveRep,
    k: &KernelSlice,
    rho: &CMatrix,
    sigma: &CMatrix,
    p: f64,
) -> Result<RenyiSandwich> {
    check_in_commutant(rep, sigma)?;
    let phi = kernel_channel(rep, k, rho)?;
    let e = conditional_expectation(rep)?.apply(rho);
    let lower = renyi_divergence(&e, sigma, p, SupportPolicy::Strict)?;
    let value = renyi_divergence(&phi, sigma, p, SupportPolicy::Strict)?;
    let gap = renyi_kernel_term(k, p)?;
    let upper = lower + gap;
    Ok(RenyiSandwich {
        p,
        lower,
        value,
        upper,
        lower_slack: value - lower,
        upper_slack: upper - value,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, matrix_unit, random_density};
    use crate::rep::char_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn half_identity() -> CMatrix {
        identity(2) * c(0.5, 0.0)
    }

    #[test]
    fn identical_states_have_zero_divergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_density(3, &mut rng);
        for p in [1.0, 1.5, 2.0, 7.0, f64::INFINITY] {
            assert!(renyi_divergence(&rho, &rho, p, SupportPolicy::Strict).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn pure_against_maximally_mixed() {
        let rho = matrix_unit(2, 0, 0);
        for p in [1.0, 2.0, f64::INFINITY] {
            let d = renyi_divergence(&rho, &half_identity(), p, SupportPolicy::Strict).unwrap();
            assert!((d - 2f64.ln()).abs() < 1e-12, "p={p}: {d}");
        }
    }

    #[test]
    fn support_violation() {
        let rho = half_identity();
        let sigma = matrix_unit(2, 0, 0);
        assert_eq!(relative_entropy(&rho, &sigma).unwrap(), f64::INFINITY);
        let projected = renyi_divergence(&rho, &sigma, 1.0, SupportPolicy::Project).unwrap();
        assert!(projected.is_finite() && projected > 10.0);
        assert!(renyi_divergence(&rho, &sigma, 0.5, SupportPolicy::Strict).is_err());
    }

    #[test]
    fn classical_renyi_closed_form() {
        // commuting states reduce to ln Σ p^α q^{1−α} / (α−1)
        let (p, q) = ([0.7, 0.3], [0.4, 0.6]);
        let rho = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(p[0], 0.0), c(p[1], 0.0)]));
        let sigma = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(q[0], 0.0), c(q[1], 0.0)]));
        let a = 2.0f64;
        let expected = (p[0].powf(a) * q[0].powf(1.0 - a) + p[1].powf(a) * q[1].powf(1.0 - a)).ln() / (a - 1.0);
        let got = renyi_divergence(&rho, &sigma, a, SupportPolicy::Strict).unwrap();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn plus_state_distance_to_diagonal() {
        let plus = CMatrix::from_element(2, 2, c(0.5, 0.0));
        let rep = char_rep(2).unwrap();
        assert!((d_nfix(&plus, &rep).unwrap() - 2f64.ln()).abs() < 1e-12);
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.2, 0.0), c(0.8, 0.0)]));
        assert!(d_nfix(&diag, &rep).unwrap().abs() < 1e-12);
    }

    #[test]
    fn uniform_kernel_gives_equality() {
        let rep = char_rep(3).unwrap();
        let k = KernelSlice {
            t: f64::INFINITY,
            values: vec![1.0; 3],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density(3, &mut rng);
        let sigma = identity(3) / c(3.0, 0.0);
        let r = entropy_comparison_check(&rep, &k, &rho, &sigma).unwrap();
        assert!(r.slack.abs() < 1e-12);
    }

    #[test]
    fn sigma_outside_commutant_rejected() {
        let rep = char_rep(2).unwrap();
        let k = KernelSlice {
            t: 0.0,
            values: vec![1.0; 2],
        };
        let plus = CMatrix::from_element(2, 2, c(0.5, 0.0));
        assert!(entropy_comparison_check(&rep, &k, &plus, &plus).is_err());
    }
}
