// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! The commutant `{u(g)}′` and its block structure `⊕_k M_{n_k} ⊗ I_{d_k}`.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, identity, kron, max_abs, null_space, unvectorize, vectorize, CMatrix};
use crate::rep::ProjectiveRep;

/// Singular values below this count as zero in the commutant solve.
pub const NULL_SPACE_TOL: f64 = 1e-8;
/// Eigenvalues closer than this are put in one cluster.
pub const CLUSTER_GAP: f64 = 1e-6;
const MAX_ATTEMPTS: u64 = 5;
const STRUCTURE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CommutantBasis {
    /// Hilbert–Schmidt orthonormal.
    pub basis: Vec<CMatrix>,
    /// A singular value fell close to the rank threshold.
    pub borderline: bool,
}

impl CommutantBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthogonal projection `x ↦ Σ_k ⟨B_k, x⟩ B_k`.
    pub fn project(&self, x: &CMatrix) -> CMatrix {
        let d = x.nrows();
        let mut out = CMatrix::zeros(d, d);
        for b in &self.basis {
            out += b * b.dotc(x);
        }
        out
    }
}

/// Solves `u(g) X = X u(g)` over a generating set of the group.
pub fn commutant_basis(rep: &ProjectiveRep) -> Result<CommutantBasis> {
    let d = rep.dim;
    let gens = rep.group.generating_set();
    if gens.is_empty() {
        let basis = (0..d * d)
            .map(|k| {
                let mut v = DVector::from_element(d * d, c(0.0, 0.0));
                v[k] = c(1.0, 0.0);
                unvectorize(&v, d)
            })
            .collect();
        return Ok(CommutantBasis {
            basis,
            borderline: false,
        });
    }
    let id = identity(d);
    let mut stacked = CMatrix::zeros(gens.len() * d * d, d * d);
    for (k, &g) in gens.iter().enumerate() {
        let u = rep.u(g);
        let block = kron(&id, u) - kron(&u.transpose(), &id);
        stacked.view_mut((k * d * d, 0), (d * d, d * d)).copy_from(&block);
    }
    let (vectors, borderline) = null_space(&stacked, NULL_SPACE_TOL);
    Ok(CommutantBasis {
        basis: vectors.iter().map(|v| unvectorize(v, d)).collect(),
        borderline,
    })
}

#[derive(Debug, Clone)]
pub struct CommutantDecomposition {
    /// `(n_k, d_k)` per block.
    pub blocks: Vec<(usize, usize)>,
    /// Unitary whose columns form a block-adapted basis: in it every
    /// commutant element reads `⊕_k Y_k ⊗ I_{d_k}`.
    pub basis_change: CMatrix,
    pub commutant_dim: usize,
    pub borderline: bool,
}

#[derive(Serialize)]
struct DecompositionJson {
    blocks: Vec<[usize; 2]>,
    commutant_dim: usize,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    borderline: bool,
}

impl CommutantDecomposition {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(n, d)| n * d).sum()
    }

    /// `max_k n_k`.
    pub fn max_multiplicity(&self) -> usize {
        self.blocks.iter().map(|b| b.0).max().unwrap_or(0)
    }

    /// `Σ_k n_k`.
    pub fn sum_multiplicities(&self) -> usize {
        self.blocks.iter().map(|b| b.0).sum()
    }

    /// `Σ_k n_k²`.
    pub fn sum_squares(&self) -> usize {
        self.blocks.iter().map(|b| b.0 * b.0).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecompositionJson {
            blocks: self.blocks.iter().map(|&(n, d)| [n, d]).collect(),
            commutant_dim: self.commutant_dim,
            borderline: self.borderline,
        })
        .expect("decomposition serializes")
    }

    /// Largest deviation of `U† B U` from the stated block form over `elements`.
    pub fn structure_residual(&self, elements: &[CMatrix]) -> f64 {
        elements
            .iter()
            .map(|b| block_form_residual(&(self.basis_change.adjoint() * b * &self.basis_change), &self.blocks))
            .fold(0.0, f64::max)
    }
}

/// Distance of `m` from `⊕_k Y_k ⊗ I_{d_k}`, with each `Y_k` the best fit.
fn block_form_residual(m: &CMatrix, blocks: &[(usize, usize)]) -> f64 {
    let mut fitted = CMatrix::zeros(m.nrows(), m.ncols());
    let mut offset = 0;
    for &(n, d) in blocks {
        let mut y = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let s: Complex64 = (0..d).map(|b| m[(offset + i * d + b, offset + j * d + b)]).sum();
                y[(i, j)] = s / d as f64;
            }
        }
        fitted
            .view_mut((offset, offset), (n * d, n * d))
            .copy_from(&kron(&y, &identity(d)));
        offset += n * d;
    }
    max_abs(&(m - fitted))
}

/// Groups ascending eigenvalues into runs separated by more than `gap`.
fn clusters(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            out.push(start..i);
            start = i;
        }
    }
    out
}

fn random_element<R: Rng>(basis: &[CMatrix], hermitian: bool, rng: &mut R) -> CMatrix {
    let d = basis[0].nrows();
    let mut x = CMatrix::zeros(d, d);
    for b in basis {
        let w = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        x += b * w;
    }
    if hermitian {
        (&x + x.adjoint()) * c(0.5, 0.0)
    } else {
        x
    }
}

/// Basis of the center `N ∩ N′`, expressed in terms of `basis`.
fn center_basis(basis: &[CMatrix]) -> Vec<CMatrix> {
    let m = basis.len();
    let d = basis[0].nrows();
    // column a: the commutators [B_a, B_j] stacked over j
    let mut system = CMatrix::zeros(m * d * d, m);
    for (a, ba) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let comm = ba * bj - bj * ba;
            system.view_mut((j * d * d, a), (d * d, 1)).copy_from(&vectorize(&comm));
        }
    }
    let (coeffs, _) = null_space(&system, NULL_SPACE_TOL);
    coeffs
        .iter()
        .map(|a| {
            let mut z = CMatrix::zeros(d, d);
            for (k, b) in basis.iter().enumerate() {
                z += b * a[k];
            }
            z
        })
        .collect()
}

/// Block structure of the commutant by spectral clustering of random
/// commutant and central elements. Retries with fresh seeds on accidental
/// degeneracies.
pub fn block_decomposition(rep: &ProjectiveRep, seed: u64) -> Result<CommutantDecomposition> {
    let comm = commutant_basis(rep)?;
    let center = center_basis(&comm.basis);
    let mut last_err = None;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        match try_decompose(rep.dim, &comm, &center, &mut rng) {
            Ok(dec) => return Ok(dec),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::numerical("block decomposition failed")))
}

fn eigen_clusters(m: &CMatrix) -> Vec<CMatrix> {
    let (values, vectors) = hermitian_eigen(m);
    clusters(&values, CLUSTER_GAP)
        .into_iter()
        .map(|r| vectors.columns(r.start, r.len()).into_owned())
        .collect()
}

fn try_decompose<R: Rng>(
    d: usize,
    comm: &CommutantBasis,
    center: &[CMatrix],
    rng: &mut R,
) -> Result<CommutantDecomposition> {
    let retry = |msg: &str| Error::numerical(format!("block decomposition: {msg}"));
    let h = random_element(&comm.basis, true, rng);
    let z = random_element(center, true, rng);
    let x = random_element(&comm.basis, false, rng);

    let eigenspaces = eigen_clusters(&h);
    let supports = eigen_clusters(&z);
    if supports.len() != center.len() {
        return Err(retry("central element has degenerate block eigenvalues"));
    }

    // Assign every eigenspace of H to the block support containing it.
    let mut members: Vec<Vec<CMatrix>> = vec![Vec::new(); supports.len()];
    for space in eigenspaces {
        let weights: Vec<f64> = supports.iter().map(|q| (q.adjoint() * &space).norm_squared()).collect();
        let total = space.ncols() as f64;
        let Some(k) = weights.iter().position(|&w| (w - total).abs() < 1e-6) else {
            return Err(retry("an eigenspace straddles two blocks"));
        };
        members[k].push(space);
    }

    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<DVector<Complex64>>> = Vec::new();
    for (support, spaces) in supports.iter().zip(&members) {
        let dk = spaces[0].ncols();
        if spaces.iter().any(|s| s.ncols() != dk) {
            return Err(retry("eigenspaces inside one block differ in dimension"));
        }
        let nk = spaces.len();
        if nk * dk != support.ncols() {
            return Err(retry("block support is not filled by its eigenspaces"));
        }
        // Transport a basis of the first eigenspace to the others through X,
        // which fixes the relative phases so that Y ⊗ I is preserved.
        let reference = &spaces[0];
        let mut cols = Vec::with_capacity(nk * dk);
        for space in spaces {
            let projector = space * space.adjoint();
            for b in 0..dk {
                let w = reference.column(b).into_owned();
                let v = if std::ptr::eq(space, reference) {
                    w
                } else {
                    &projector * (&x * w)
                };
                let norm = v.norm();
                if norm < 1e-6 {
                    return Err(retry("transport between eigenspaces is degenerate"));
                }
                cols.push(v / c(norm, 0.0));
            }
        }
        blocks.push((nk, dk));
        columns.push(cols);
    }

    // Deterministic block order: larger irreps first, then larger multiplicity.
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse((blocks[k].1, blocks[k].0)));
    let blocks: Vec<(usize, usize)> = order.iter().map(|&k| blocks[k]).collect();
    let all: Vec<DVector<Complex64>> = order.iter().flat_map(|&k| columns[k].clone()).collect();
    let basis_change = CMatrix::from_columns(&all);

    if max_abs(&(basis_change.adjoint() * &basis_change - identity(d))) > STRUCTURE_TOL {
        return Err(retry("block-adapted basis is not orthonormal"));
    }
    let dec = CommutantDecomposition {
        commutant_dim: comm.dim(),
        blocks,
        basis_change,
        borderline: comm.borderline,
    };
    if dec.dim() != d || dec.sum_squares() != comm.dim() {
        return Err(retry("block sizes do not account for the commutant"));
    }
    let residual = dec.structure_residual(&comm.basis);
    if residual > STRUCTURE_TOL {
        return Err(retry(&format!("structure residual {residual:e}")));
    }
    Ok(dec)
}

/// Blocks `(n_k, d_k)` of the commutant of `S_n` permuting the factors of
/// `(C^d)^{⊗n}`, from Schur–Weyl duality: one block per partition `λ ⊢ n`
/// with at most `d` rows, `n_k` the dimension of the `GL_d` module (hook
/// content formula) and `d_k` that of the Specht module (hook length
/// formula). Same order as [`block_decomposition`].
pub fn schur_weyl_blocks(n: usize, d: usize) -> Result<Vec<(usize, usize)>> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("schur_weyl_blocks needs n >= 1 and d >= 1"));
    }
    if n > 12 || d > 64 {
        return Err(Error::limit(format!(
            "schur_weyl_blocks is limited to n <= 12 and d <= 64, got n = {n}, d = {d}"
        )));
    }
    let mut blocks = Vec::new();
    for shape in partitions(n).into_iter().filter(|p| p.len() <= d) {
        let conjugate: Vec<usize> = (0..shape[0])
            .map(|j| shape.iter().filter(|&&r| r > j).count())
            .collect();
        // Rational products kept exact in u128 numerator/denominator.
        let (mut weyl_num, mut hooks) = (1u128, 1u128);
        for (i, &row) in shape.iter().enumerate() {
            for (j, &col) in conjugate.iter().enumerate().take(row) {
                hooks *= ((row - j - 1) + (col - i - 1) + 1) as u128;
                weyl_num *= (d + j - i) as u128;
            }
        }
        let factorial: u128 = (1..=n as u128).product();
        blocks.push(((weyl_num / hooks) as usize, (factorial / hooks) as usize));
    }
    blocks.sort_by_key(|&(nk, dk)| std::cmp::Reverse((dk, nk)));
    Ok(blocks)
}

/// Partitions of `n` as nonincreasing row lengths.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
