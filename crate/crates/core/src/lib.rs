// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Transferred quantum Markov semigroups on finite groups.
//!
//! A right-invariant random walk on a finite group `G` together with a
//! projective unitary representation `u` of `G` defines a quantum Markov
//! semigroup `T_t(x) = ∫ k_t(g⁻¹) u(g)† x u(g) dμ(g)`. This crate builds
//! both sides as dense matrices and evaluates the quantities that transfer
//! between them: spectral gaps, kernel norms, mixing and decoherence
//! times, entropy comparison, entanglement breaking times and capacity
//! bounds.
//!
//! Conventions used throughout:
//!
//! * generators are positive, `T_t = exp(−tL)`;
//! * operators are vectorized by stacking columns, so
//!   `vec(AXB) = (Bᵀ ⊗ A) vec(X)`;
//! * kernels are densities for the uniform probability measure on `G`;
//! * logarithms are natural (capacities in e-bits).

// `!(x > 0.0)` guards deliberately reject NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod entropic;
pub mod error;
pub mod experiments;
pub mod fixed_point;
pub mod group;
pub mod linalg;
pub mod markov;
pub mod rep;
pub mod semigroup;
pub mod verify;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use markov::{ClassicalGenerator, KernelSlice, LieGroup, NamedChain};
