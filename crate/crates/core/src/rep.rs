// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Projective unitary representations of finite groups.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{permutations, FiniteGroup};
use crate::linalg::{dagger, is_unitary, kron_power, max_abs, root_of_unity, trace, CMatrix, ONE, ZERO};

/// Largest Hilbert-space dimension accepted by the tensor constructors.
pub const DIMENSION_CAP: usize = 64;
const UNITARY_TOL: f64 = 1e-10;
const COCYCLE_TOL: f64 = 1e-9;
/// Above this many pairs the cocycle relation is checked on a sample.
const EXHAUSTIVE_PAIRS: usize = 4096;

/// `g ↦ u(g)` with `u(g)u(h) = ω(g,h) u(gh)`, `|ω| = 1`.
#[derive(Debug, Clone)]
pub struct ProjectiveRep {
    pub group: FiniteGroup,
    pub dim: usize,
    pub unitaries: Vec<CMatrix>,
    pub label: String,
}

impl ProjectiveRep {
    /// Wraps and validates an explicit family of unitaries.
    pub fn new(group: FiniteGroup, unitaries: Vec<CMatrix>, label: impl Into<String>) -> Result<Self> {
        if unitaries.len() != group.order {
            return Err(Error::invalid(format!(
                "{} unitaries for a group of order {}",
                unitaries.len(),
                group.order
            )));
        }
        let dim = unitaries[0].nrows();
        if dim == 0 || unitaries.iter().any(|u| u.nrows() != dim || u.ncols() != dim) {
            return Err(Error::invalid("unitaries must be square and of one common size"));
        }
        let rep = Self {
            group,
            dim,
            unitaries,
            label: label.into(),
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Checks unitarity, the cocycle relation and `u(e) ∝ I`.
    pub fn validate(&self) -> Result<()> {
        for (g, u) in self.unitaries.iter().enumerate() {
            if !is_unitary(u, UNITARY_TOL) {
                return Err(Error::invalid(format!("u({g}) is not unitary")));
            }
        }
        let e = &self.unitaries[self.group.identity];
        let phase = e[(0, 0)];
        let scaled_identity = CMatrix::identity(self.dim, self.dim) * phase;
        if (phase.norm() - 1.0).abs() > COCYCLE_TOL || max_abs(&(e - scaled_identity)) > COCYCLE_TOL {
            return Err(Error::invalid("u(identity) is not a phase times the identity"));
        }
        for (g, h) in self.validation_pairs() {
            let w = self.cocycle(g, h);
            if (w.norm() - 1.0).abs() > COCYCLE_TOL {
                return Err(Error::invalid(format!("|ω({g},{h})| = {} ≠ 1", w.norm())));
            }
            let lhs = &self.unitaries[g] * &self.unitaries[h];
            let rhs = &self.unitaries[self.group.op(g, h)] * w;
            if max_abs(&(lhs - rhs)) > COCYCLE_TOL {
                return Err(Error::invalid(format!(
                    "u({g})u({h}) is not a phase multiple of u({g}·{h})"
                )));
            }
        }
        Ok(())
    }

    /// All pairs for small groups, a fixed pseudo-random sample otherwise.
    fn validation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.group.order;
        if n * n <= EXHAUSTIVE_PAIRS {
            return (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0c0c);
        (0..EXHAUSTIVE_PAIRS)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect()
    }

    pub fn u(&self, g: usize) -> &CMatrix {
        &self.unitaries[g]
    }

    /// `ω(g,h) = tr(u(gh)† u(g) u(h)) / d`.
    pub fn cocycle(&self, g: usize, h: usize) -> Complex64 {
        let prod = &self.unitaries[g] * &self.unitaries[h];
        let gh = self.group.op(g, h);
        trace(&(self.unitaries[gh].adjoint() * prod)) / self.dim as f64
    }

    /// Co-representation `π(x)(g) = u(g)† x u(g)` at one element.
    pub fn conjugate(&self, g: usize, x: &CMatrix) -> CMatrix {
        let u = &self.unitaries[g];
        dagger(u) * x * u
    }

    /// `g ↦ u(g)^{⊗n}` on `H^{⊗n}`.
    pub fn tensor_power(&self, n: usize) -> Result<ProjectiveRep> {
        if n == 0 {
            return Err(Error::invalid("tensor power needs n >= 1"));
        }
        let dim = checked_power(self.dim, n)?;
        let unitaries = self.unitaries.iter().map(|u| kron_power(u, n)).collect();
        Ok(ProjectiveRep {
            group: self.group.clone(),
            dim,
            unitaries,
            label: format!("{}^⊗{n}", self.label),
        })
    }

    /// Row-major `[re, im]` pairs per element.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            label: &'a str,
            dim: usize,
            unitaries: Vec<Vec<[f64; 2]>>,
        }
        let unitaries = self
            .unitaries
            .iter()
            .map(|u| {
                (0..self.dim)
                    .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
                    .map(|(i, j)| [u[(i, j)].re, u[(i, j)].im])
                    .collect()
            })
            .collect();
        serde_json::to_string(&Export {
            label: &self.label,
            dim: self.dim,
            unitaries,
        })
        .expect("representation serializes")
    }
}

fn checked_power(d: usize, n: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = dim.saturating_mul(d);
        if dim > DIMENSION_CAP {
            return Err(Error::limit(format!("dimension {d}^{n} exceeds cap {DIMENSION_CAP}")));
        }
    }
    Ok(dim)
}

/// Cyclic shift `X|k⟩ = |k+1 mod n⟩`.
pub fn shift(n: usize) -> CMatrix {
    let mut x = CMatrix::zeros(n, n);
    for k in 0..n {
        x[((k + 1) % n, k)] = ONE;
    }
    x
}

/// Clock `Z = diag(1, ω, …, ω^{n−1})`, `ω = e^{2πi/n}`.
pub fn clock(n: usize) -> CMatrix {
    let mut z = CMatrix::zeros(n, n);
    for k in 0..n {
        z[(k, k)] = root_of_unity(k, n);
    }
    z
}

fn power(m: &CMatrix, k: usize) -> CMatrix {
    (0..k).fold(CMatrix::identity(m.nrows(), m.nrows()), |acc, _| acc * m)
}

/// Discrete Weyl system: `(i, j) ↦ X^i Z^j` on `Z_n × Z_n`, element
/// index `i·n + j`.
pub fn weyl_rep(n: usize) -> Result<ProjectiveRep> {
    if n < 2 {
        return Err(Error::invalid("weyl_rep needs n >= 2"));
    }
    if n > DIMENSION_CAP {
        return Err(Error::limit(format!("dimension {n} exceeds cap {DIMENSION_CAP}")));
    }
    let zn = FiniteGroup::cyclic(n)?;
    let group = FiniteGroup::product(&zn, &zn);
    let (x, z) = (shift(n), clock(n));
    let xs: Vec<CMatrix> = (0..n).map(|i| power(&x, i)).collect();
    let zs: Vec<CMatrix> = (0..n).map(|j| power(&z, j)).collect();
    let unitaries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| &xs[i] * &zs[j])
        .collect();
    ProjectiveRep::new(group, unitaries, format!("weyl({n})"))
}

/// `j ↦ Z^j` on `Z_n`, an ordinary representation.
pub fn char_rep(n: usize) -> Result<ProjectiveRep> {
    if n < 2 {
        return Err(Error::invalid("char_rep needs n >= 2"));
    }
    if n > DIMENSION_CAP {
        return Err(Error::limit(format!("dimension {n} exceeds cap {DIMENSION_CAP}")));
    }
    let group = FiniteGroup::cyclic(n)?;
    let unitaries = (0..n)
        .map(|j| {
            let mut u = CMatrix::zeros(n, n);
            for k in 0..n {
                u[(k, k)] = root_of_unity(j * k, n);
            }
            u
        })
        .collect();
    ProjectiveRep::new(group, unitaries, format!("char({n})"))
}

/// `S_n` permuting the factors of `(C^d)^{⊗n}`: `u(σ)` sends the factor in
/// slot `k` to slot `σ(k)`.
pub fn perm_rep(n: usize, d: usize) -> Result<ProjectiveRep> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("perm_rep needs n, d >= 1"));
    }
    let dim = checked_power(d, n)?;
    let group = FiniteGroup::symmetric(n)?;
    let digits = |mut idx: usize| {
        let mut v = vec![0; n];
        for k in (0..n).rev() {
            v[k] = idx % d;
            idx /= d;
        }
        v
    };
    let index = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);
    let unitaries = permutations(n)
        .iter()
        .map(|sigma| {
            let mut u = CMatrix::from_element(dim, dim, ZERO);
            for col in 0..dim {
                let i = digits(col);
                let mut j = vec![0; n];
                for k in 0..n {
                    j[sigma[k]] = i[k];
                }
                u[(index(&j), col)] = ONE;
            }
            u
        })
        .collect();
    ProjectiveRep::new(group, unitaries, format!("perm({n},{d})"))
}
