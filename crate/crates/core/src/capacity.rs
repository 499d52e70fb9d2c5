// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Capacity bounds for transferred channels, entanglement-breaking times and
//! reference formulas. All values in e-bits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_point::commutant_basis;
use crate::linalg::{hermitian_eigenvalues, identity, max_abs, partial_transpose_second};
use crate::markov::ClassicalGenerator;
use crate::rep::ProjectiveRep;
use crate::semigroup::{conditional_expectation, Propagator, SuperKind, Superoperator};

/// Horizon of the PPT search.
pub const PPT_T_MAX: f64 = 50.0;
const PPT_GRID: usize = 1000;
const PPT_BISECTION_STEPS: usize = 60;
/// Sign test only: the partial-transpose eigenvalue of a non-EB channel can
/// decay like e^{-t}, so any fixed positive tolerance would flag it PPT.
const PPT_TOL: f64 = 0.0;

/// Lower and upper bounds for one capacity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityBounds {
    /// Capacity of the limiting conditional expectation.
    pub lower: f64,
    /// `min(lower + ln(1+ε), dimension bound)`.
    pub upper: f64,
    /// `lower + ln(1+ε)` before clipping.
    pub upper_log: f64,
    /// `lower + ε`, the cruder form.
    pub upper_eps: f64,
    pub strong_converse: bool,
}

impl CapacityBounds {
    fn new(lower: f64, eps: f64, ceiling: f64) -> Self {
        let upper_log = lower + eps.ln_1p();
        Self {
            lower,
            upper: upper_log.min(ceiling),
            upper_log,
            upper_eps: lower + eps,
            strong_converse: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityReport {
    pub t: f64,
    /// `‖k_t − 1‖_∞`.
    pub eps: f64,
    pub q: CapacityBounds,
    pub p: CapacityBounds,
    pub q2way: CapacityBounds,
    pub p2way: CapacityBounds,
    pub c: CapacityBounds,
    pub c_ea: CapacityBounds,
}

impl CapacityReport {
    pub fn families(&self) -> [(&'static str, CapacityBounds); 6] {
        [
            ("Q", self.q),
            ("P", self.p),
            ("Q2way", self.q2way),
            ("P2way", self.p2way),
            ("C", self.c),
            ("C_EA", self.c_ea),
        ]
    }
}

/// Limiting capacities of the conditional expectation onto `⊕ M_{n_k} ⊗ I_{d_k}`,
/// given the blocks `(n_k, d_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitingCapacities {
    /// `max_k ln n_k`, for Q, P and their two-way versions.
    pub quantum: f64,
    /// `ln Σ_k n_k`.
    pub classical: f64,
    /// `ln Σ_k n_k²`.
    pub entanglement_assisted: f64,
}

pub fn limiting_capacities(blocks: &[(usize, usize)]) -> LimitingCapacities {
    let ln = |x: usize| (x as f64).ln();
    LimitingCapacities {
        quantum: ln(blocks.iter().map(|b| b.0).max().unwrap_or(0)),
        classical: ln(blocks.iter().map(|b| b.0).sum()),
        entanglement_assisted: ln(blocks.iter().map(|b| b.0 * b.0).sum()),
    }
}

/// Sandwich of all capacities of `T_t` from `ε = ‖k_t − 1‖_∞`.
pub fn capacity_sandwich(blocks: &[(usize, usize)], gen: &ClassicalGenerator, t: f64) -> Result<CapacityReport> {
    let eps = gen.kernel_norm(t, f64::INFINITY)?;
    Ok(capacity_sandwich_from_eps(blocks, t, eps))
}

/// As [`capacity_sandwich`] with `ε` supplied by the caller.
pub fn capacity_sandwich_from_eps(blocks: &[(usize, usize)], t: f64, eps: f64) -> CapacityReport {
    let lim = limiting_capacities(blocks);
    let log_d = (blocks.iter().map(|(n, d)| n * d).sum::<usize>() as f64).ln();
    let quantum = CapacityBounds::new(lim.quantum, eps, log_d);
    CapacityReport {
        t,
        eps,
        q: quantum,
        p: quantum,
        q2way: quantum,
        p2way: quantum,
        c: CapacityBounds::new(lim.classical, eps, log_d),
        c_ea: CapacityBounds::new(lim.entanglement_assisted, eps, 2.0 * log_d),
    }
}

/// `t(1/d)`, an upper bound on the entanglement-breaking time of a primitive
/// transferred semigroup on `B(C^d)`.
pub fn eb_time_bound(gen: &ClassicalGenerator, rep: &ProjectiveRep) -> Result<f64> {
    let commutant_dim = commutant_basis(rep)?.dim();
    if commutant_dim != 1 {
        return Err(Error::domain(format!(
            "{} has a {commutant_dim}-dimensional fixed-point algebra; the entanglement \
             breaking time of a non-primitive semigroup might be infinite",
            rep.label
        )));
    }
    gen.t_eps(1.0 / rep.dim as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PptTime {
    /// First time the Choi matrix is PPT; `+∞` if not reached by [`PPT_T_MAX`].
    pub time: f64,
    /// PPT equals separability (qubit channels).
    pub exact: bool,
}

/// Smallest eigenvalue of the partial transpose of the Choi matrix of the
/// Schrödinger-picture channel at time `t`.
pub fn choi_pt_min_eigenvalue(prop: &Propagator, dim: usize, t: f64) -> Result<f64> {
    let ch = prop.channel(t)?.adjoint();
    let pt = partial_transpose_second(&ch.choi(), dim, dim);
    Ok(hermitian_eigenvalues(&pt)[0])
}

/// First time the channel's Choi matrix becomes PPT, by a grid scan on
/// `[0, PPT_T_MAX]` followed by bisection. A lower bound on the
/// entanglement-breaking time, equal to it for qubits.
pub fn ppt_eb_time(lind: &Superoperator) -> Result<PptTime> {
    if lind.kind != SuperKind::Lindbladian {
        return Err(Error::invalid("expected a Lindbladian"));
    }
    let d = lind.dim;
    let prop = Propagator::new(lind)?;
    let not_ppt = |t: f64| -> Result<bool> { Ok(choi_pt_min_eigenvalue(&prop, d, t)? < -PPT_TOL) };
    let exact = d <= 2;
    if not_ppt(PPT_T_MAX)? {
        return Ok(PptTime {
            time: f64::INFINITY,
            exact,
        });
    }
    let step = PPT_T_MAX / PPT_GRID as f64;
    let mut last_bad = None;
    for i in 0..PPT_GRID {
        if not_ppt(i as f64 * step)? {
            last_bad = Some(i);
        }
    }
    let Some(i) = last_bad else {
        return Ok(PptTime { time: 0.0, exact });
    };
    let (mut lo, mut hi) = (i as f64 * step, (i + 1) as f64 * step);
    for _ in 0..PPT_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if not_ppt(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(PptTime { time: hi, exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MlsiBounds {
    /// `max_k ln n_k + 2 e^{−α₁ t} ln d` for Q and P.
    pub qp: f64,
    /// `ln Σ n_k² + 2 e^{−α₁ t} ln d`.
    pub c_ea: f64,
    /// `ln Σ n_k + e^{−α_c t} ln d`, when `α_c` is known.
    pub c: Option<f64>,
}

/// Capacity bounds from modified log-Sobolev constants.
pub fn mlsi_capacity_bounds(
    blocks: &[(usize, usize)],
    alpha1: f64,
    alpha_c: Option<f64>,
    d: usize,
    t: f64,
) -> Result<MlsiBounds> {
    if !(alpha1 > 0.0) || alpha_c.is_some_and(|a| !(a > 0.0)) {
        return Err(Error::domain("log-Sobolev constants must be positive"));
    }
    if !(t >= 0.0) || d == 0 {
        return Err(Error::invalid("need t >= 0 and d >= 1"));
    }
    let lim = limiting_capacities(blocks);
    let log_d = (d as f64).ln();
    let decay = 2.0 * (-alpha1 * t).exp() * log_d;
    Ok(MlsiBounds {
        qp: lim.quantum + decay,
        c_ea: lim.entanglement_assisted + decay,
        c: alpha_c.map(|a| lim.classical + (-a * t).exp() * log_d),
    })
}

/// `Some(1)` when `L = id − E_fix`, whose modified log-Sobolev constants are
/// at least one; `None` otherwise.
pub fn simple_generator_constant(lind: &Superoperator, rep: &ProjectiveRep) -> Result<Option<f64>> {
    let e = conditional_expectation(rep)?;
    let simple = identity(lind.dim * lind.dim) - &e.matrix;
    Ok((max_abs(&(&lind.matrix - simple)) <= 1e-10).then_some(1.0))
}

/// Reference values for benchmarking the sandwich.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Reference {
    /// Two-way quantum capacity of the `n`-level dephasing channel.
    Dephasing2Way { n: usize, t: f64 },
    /// Upper bound on the two-way quantum capacity of the depolarizing channel.
    Depolarizing2Way { n: usize, t: f64 },
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Evaluates a [`Reference`].
///
/// Dephasing: `ln n − H(p₀, p, …, p)` with `p = (1−e^{−t})/n` repeated
/// `n − 1` times and `p₀ = e^{−t} + p`, the entropy of the channel's Choi state.
///
/// Depolarizing: `ln n − H₂(p) − p ln(n−1)` with `p = (n²−1)(1−e^{−t})/n²`,
/// set to zero for `t ≥ ln(n+1)` where it would turn upward again.
pub fn reference_exact(r: Reference) -> Result<f64> {
    let (n, t) = match r {
        Reference::Dephasing2Way { n, t } | Reference::Depolarizing2Way { n, t } => (n, t),
    };
    if n < 2 || !(t >= 0.0) {
        return Err(Error::invalid("reference formulas need n >= 2 and t >= 0"));
    }
    let nf = n as f64;
    let r_t = (-t).exp();
    Ok(match r {
        Reference::Dephasing2Way { .. } => {
            let p = (1.0 - r_t) / nf;
            let p0 = r_t + p;
            nf.ln() + xlnx(p0) + (nf - 1.0) * xlnx(p)
        }
        Reference::Depolarizing2Way { .. } => {
            if t >= (nf + 1.0).ln() {
                0.0
            } else {
                let p = (nf * nf - 1.0) / (nf * nf) * (1.0 - r_t);
                let h2 = -xlnx(p) - xlnx(1.0 - p);
                (nf.ln() - h2 - p * (nf - 1.0).ln()).max(0.0)
            }
        }
    })
}

/// The dephasing expression exactly as it is usually displayed,
/// `ln n + p₀ ln p₀ + (1−e^{−t}) ln((1−e^{−t})/n)`, which lacks the factor
/// `(n−1)/n` on the last term.
pub fn dephasing_2way_display(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    let r_t = (-t).exp();
    let p = (1.0 - r_t) / nf;
    nf.ln() + xlnx(r_t + p) + (1.0 - r_t) * if p > 0.0 { p.ln() } else { 0.0 }
}

/// CSV header of [`capacity_csv_row`].
pub const CAPACITY_CSV_HEADER: &str = "t,eps,Q_lo,Q_hi,C_lo,C_hi,CEA_lo,CEA_hi,ref_exact";

/// One CSV row; `scale` converts e-bits for display (1 or 1/ln 2).
pub fn capacity_csv_row(report: &CapacityReport, reference: Option<f64>, scale: f64) -> String {
    let f = |x: f64| format!("{}", x * scale);
    format!(
        "{},{},{},{},{},{},{},{},{}",
        report.t,
        report.eps,
        f(report.q.lower),
        f(report.q.upper),
        f(report.c.lower),
        f(report.c.upper),
        f(report.c_ea.lower),
        f(report.c_ea.upper),
        reference.map(f).unwrap_or_default()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_point::block_decomposition;
    use crate::rep::{char_rep, weyl_rep};
    use crate::semigroup::transferred_lindbladian;

    #[test]
    fn limiting_values() {
        let dec = block_decomposition(&char_rep(4).unwrap(), 0).unwrap();
        let lim = limiting_capacities(&dec.blocks);
        assert_eq!(lim.quantum, 0.0);
        assert!((lim.classical - 4f64.ln()).abs() < 1e-15);
        assert!((lim.entanglement_assisted - 4f64.ln()).abs() < 1e-15);
        let dec = block_decomposition(&weyl_rep(3).unwrap(), 0).unwrap();
        let lim = limiting_capacities(&dec.blocks);
        assert_eq!((lim.quantum, lim.classical, lim.entanglement_assisted), (0.0, 0.0, 0.0));
    }

    #[test]
    fn sandwich_shape() {
        let dec = block_decomposition(&char_rep(3).unwrap(), 0).unwrap();
        let r = capacity_sandwich_from_eps(&dec.blocks, 1.0, 0.5);
        for (_, b) in r.families() {
            assert!(b.lower <= b.upper);
            assert!(b.upper - b.lower <= 1.5f64.ln() + 1e-15);
            assert!(b.upper_eps >= b.upper_log);
        }
        // at t = 0 the dimension ceiling applies
        let r0 = capacity_sandwich_from_eps(&dec.blocks, 0.0, 2.0);
        assert!((r0.c.upper - 3f64.ln()).abs() < 1e-15);
        assert!((r0.c_ea.upper - 9f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn dephasing_reference_limits() {
        for n in 2..=5 {
            let nf = n as f64;
            let r0 = reference_exact(Reference::Dephasing2Way { n, t: 0.0 }).unwrap();
            assert!((r0 - nf.ln()).abs() < 1e-14);
            let inf = reference_exact(Reference::Dephasing2Way { n, t: 60.0 }).unwrap();
            assert!(inf.abs() < 1e-12);
            assert!(dephasing_2way_display(n, 1.0) <= reference_exact(Reference::Dephasing2Way { n, t: 1.0 }).unwrap());
        }
    }

    #[test]
    fn depolarizing_reference_vanishes_at_threshold() {
        for n in 2..=4 {
            let t = ((n + 1) as f64).ln();
            let just_before = reference_exact(Reference::Depolarizing2Way { n, t: t - 1e-9 }).unwrap();
            assert!(just_before.abs() < 1e-6);
            assert_eq!(reference_exact(Reference::Depolarizing2Way { n, t }).unwrap(), 0.0);
            let r0 = reference_exact(Reference::Depolarizing2Way { n, t: 0.0 }).unwrap();
            assert!((r0 - (n as f64).ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn qubit_depolarizing_ppt_time() {
        let rep = weyl_rep(2).unwrap();
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 0.25).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        let r = ppt_eb_time(&lind).unwrap();
        assert!(r.exact);
        assert!((r.time - 3f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn dephasing_never_ppt() {
        let rep = char_rep(2).unwrap();
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 0.5).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        assert_eq!(ppt_eb_time(&lind).unwrap().time, f64::INFINITY);
        assert!(matches!(eb_time_bound(&gen, &rep), Err(Error::Domain(_))));
    }

    #[test]
    fn mlsi_plug_in() {
        let dec = block_decomposition(&weyl_rep(3).unwrap(), 0).unwrap();
        let b = mlsi_capacity_bounds(&dec.blocks, 1.0, Some(1.0), 3, 0.0).unwrap();
        assert!((b.qp - 2.0 * 3f64.ln()).abs() < 1e-15);
        assert!((b.c.unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(mlsi_capacity_bounds(&dec.blocks, 0.0, None, 3, 1.0).is_err());
    }

    #[test]
    fn simple_generators_detected() {
        let rep = weyl_rep(2).unwrap();
        let gen = ClassicalGenerator::uniform(rep.group.clone(), 0.25).unwrap();
        let lind = transferred_lindbladian(&rep, &gen).unwrap();
        assert_eq!(simple_generator_constant(&lind, &rep).unwrap(), Some(1.0));
        let slow = ClassicalGenerator::uniform(rep.group.clone(), 0.1).unwrap();
        let lind = transferred_lindbladian(&rep, &slow).unwrap();
        assert_eq!(simple_generator_constant(&lind, &rep).unwrap(), None);
    }

    #[test]
    fn csv_row_shape() {
        let dec = block_decomposition(&char_rep(2).unwrap(), 0).unwrap();
        let r = capacity_sandwich_from_eps(&dec.blocks, 0.5, 0.25);
        let row = capacity_csv_row(&r, Some(0.1), 1.0);
        assert_eq!(row.split(',').count(), CAPACITY_CSV_HEADER.split(',').count());
    }
}
