// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra helpers.
//!
//! Vectorization convention (used project-wide): column stacking, so that
//! `vec(A X B) = (Bᵀ ⊗ A) vec(X)`. nalgebra stores matrices column-major,
//! which makes `vec` a plain reinterpretation of the storage.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(2πi k/n)`, exact at multiples of a quarter turn.
pub fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn sigma_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// `|i⟩⟨j|` in dimension `d`.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(i, j)] = ONE;
    m
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `a^{⊗n}`; `n = 0` gives the 1×1 identity.
pub fn kron_power(a: &CMatrix, n: usize) -> CMatrix {
    let mut out = identity(1);
    for _ in 0..n {
        out = kron(&out, a);
    }
    out
}

/// `Σ_i I^{⊗i} ⊗ op ⊗ I^{⊗(n−i−1)}`.
pub fn collective(op: &CMatrix, n: usize) -> CMatrix {
    let d = op.nrows();
    let dim = d.pow(n as u32);
    let mut out = CMatrix::zeros(dim, dim);
    for site in 0..n {
        let left = identity(d.pow(site as u32));
        let right = identity(d.pow((n - site - 1) as u32));
        out += kron(&kron(&left, op), &right);
    }
    out
}

pub fn vectorize(x: &CMatrix) -> DVector<Complex64> {
    DVector::from_column_slice(x.as_slice())
}

pub fn unvectorize(v: &DVector<Complex64>, d: usize) -> CMatrix {
    CMatrix::from_column_slice(d, d, v.as_slice())
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_real(m: &RMatrix) -> f64 {
    m.iter().map(|z| z.abs()).fold(0.0, f64::max)
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs(&(m - m.adjoint())) <= tol
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs(&(m.adjoint() * m - identity(m.nrows()))) <= tol
}

fn is_diagonal(m: &CMatrix) -> bool {
    let n = m.nrows();
    for j in 0..n {
        for i in 0..n {
            if i != j && m[(i, j)] != ZERO {
                return false;
            }
        }
    }
    true
}

/// Eigendecomposition of the Hermitian part of `m`, eigenvalues ascending.
/// Columns of the returned matrix are the matching orthonormal eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let h = hermitian_part(m);
    let (values, vectors) = if is_diagonal(&h) {
        let values: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
        (values, identity(n))
    } else {
        let eig = SymmetricEigen::new(h);
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = CMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    (sorted_values, sorted_vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// `f(H)` for Hermitian `H` through its spectral decomposition.
pub fn hermitian_apply(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let n = m.nrows();
    let mut scaled = vectors.clone();
    for j in 0..n {
        let fj = f(values[j]);
        for i in 0..n {
            scaled[(i, j)] *= fj;
        }
    }
    scaled * vectors.adjoint()
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    SVD::new(m.clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .collect()
}

/// Schatten p-norm (unnormalized trace); `p = ∞` gives the operator norm.
pub fn schatten_norm(m: &CMatrix, p: f64) -> f64 {
    let s = if is_hermitian(m, 1e-12) {
        hermitian_eigenvalues(m).into_iter().map(f64::abs).collect()
    } else {
        singular_values(m)
    };
    if p.is_infinite() {
        s.into_iter().fold(0.0, f64::max)
    } else {
        s.into_iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn trace_norm(m: &CMatrix) -> f64 {
    schatten_norm(m, 1.0)
}

/// Orthonormal basis of the null space of `a`, from right singular vectors
/// with singular value below `tol`. The flag reports a singular value inside
/// `[tol/100, 100·tol]`, where the rank decision is fragile.
pub fn null_space(a: &CMatrix, tol: f64) -> (Vec<DVector<Complex64>>, bool) {
    let n = a.ncols();
    // Pad with zero rows so the decomposition yields all n right singular vectors.
    let padded = if a.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut basis = Vec::new();
    let mut borderline = false;
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > tol / 100.0 && s < tol * 100.0 {
            borderline = true;
        }
        if s < tol {
            let row = v_t.row(k);
            basis.push(DVector::from_iterator(n, row.iter().map(|z| z.conj())));
        }
    }
    (basis, borderline)
}

/// Partial transpose on the second tensor factor of a `(d1·d2)`-dim operator.
pub fn partial_transpose_second(m: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    let n = d1 * d2;
    assert_eq!(m.nrows(), n);
    let mut out = CMatrix::zeros(n, n);
    for a in 0..d1 {
        for b in 0..d2 {
            for a2 in 0..d1 {
                for b2 in 0..d2 {
                    out[(a * d2 + b, a2 * d2 + b2)] = m[(a * d2 + b2, a2 * d2 + b)];
                }
            }
        }
    }
    out
}

pub fn random_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Ginibre-distributed full-rank density matrix.
pub fn random_density<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = random_gaussian_matrix(d, d, rng);
    let rho = &g * g.adjoint();
    let tr = trace(&rho);
    hermitian_part(&(rho / tr))
}

/// Haar-random pure state `|ψ⟩⟨ψ|`.
pub fn random_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let v = random_gaussian_matrix(d, 1, rng);
    let norm = v.norm();
    let v = v / c(norm, 0.0);
    &v * v.adjoint()
}

pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    hermitian_part(&random_gaussian_matrix(d, d, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vectorization_matches_kron_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_gaussian_matrix(3, 3, &mut rng);
        let b = random_gaussian_matrix(3, 3, &mut rng);
        let x = random_gaussian_matrix(3, 3, &mut rng);
        let lhs = vectorize(&(&a * &x * &b));
        let rhs = kron(&b.transpose(), &a) * vectorize(&x);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn roots_of_unity_are_exact_on_quarter_turns() {
        assert_eq!(root_of_unity(1, 2), -ONE);
        assert_eq!(root_of_unity(1, 4), I);
        assert_eq!(root_of_unity(6, 8), -I);
        assert!((root_of_unity(1, 3).powu(3) - ONE).norm() < 1e-14);
    }

    #[test]
    fn null_space_of_commutator_with_sigma_z() {
        let z = sigma_z();
        let map = kron(&identity(2), &z) - kron(&z.transpose(), &identity(2));
        let (basis, _) = null_space(&map, 1e-8);
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn partial_transpose_of_maximally_entangled_is_swap() {
        let mut omega = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                omega[(i * 2 + i, j * 2 + j)] = ONE;
            }
        }
        let pt = partial_transpose_second(&omega, 2, 2);
        let mut swap = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                swap[(i * 2 + j, j * 2 + i)] = ONE;
            }
        }
        assert!(max_abs(&(pt - swap)) < 1e-15);
    }

    #[test]
    fn trace_norm_of_hermitian_and_general() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), ZERO, ZERO, c(-0.25, 0.0)]);
        assert!((trace_norm(&m) - 0.75).abs() < 1e-14);
        let n = CMatrix::from_row_slice(2, 2, &[ZERO, c(2.0, 0.0), ZERO, ZERO]);
        assert!((trace_norm(&n) - 2.0).abs() < 1e-12);
    }
}
