// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

//! Finite groups given by explicit Cayley tables.
//!
//! Elements are dense indices `0..order`. The Haar measure is the uniform
//! probability `1/order` and is never stored.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 64;
const RANDOM_TRIPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_ca11;

/// Default cap on `n` for [`FiniteGroup::symmetric`] (order 720).
pub const SYMMETRIC_DEGREE_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub label: String,
    pub order: usize,
    /// `mul[g][h] = g·h`.
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroup {
    /// Cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic group needs n >= 1"));
        }
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let inv = (0..n).map(|k| (n - k) % n).collect();
        Ok(Self {
            label: format!("Z_{n}"),
            order: n,
            mul,
            inv,
            identity: 0,
        })
    }

    /// Direct product; the pair `(a, b)` has index `a·|H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let order = m * n;
        let split = |x: usize| (x / n, x % n);
        let mul = (0..order)
            .map(|x| {
                let (a1, b1) = split(x);
                (0..order)
                    .map(|y| {
                        let (a2, b2) = split(y);
                        g.mul[a1][a2] * n + h.mul[b1][b2]
                    })
                    .collect()
            })
            .collect();
        let inv = (0..order)
            .map(|x| {
                let (a, b) = split(x);
                g.inv[a] * n + h.inv[b]
            })
            .collect();
        Self {
            label: format!("{}x{}", g.label, h.label),
            order,
            mul,
            inv,
            identity: g.identity * n + h.identity,
        }
    }

    /// `Z_2^n`, the hypercube group; element `x` has bit `i` set iff its
    /// `i`-th coordinate (most significant first) is 1.
    pub fn hypercube(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("hypercube needs n >= 1"));
        }
        let z2 = Self::cyclic(2)?;
        let mut g = z2.clone();
        for _ in 1..n {
            g = Self::product(&g, &z2);
        }
        g.label = format!("Z_2^{n}");
        Ok(g)
    }

    /// Symmetric group `S_n` with the default degree cap.
    pub fn symmetric(n: usize) -> Result<Self> {
        Self::symmetric_with_cap(n, SYMMETRIC_DEGREE_CAP)
    }

    /// Permutations of `0..n` in lexicographic order; element index is the
    /// lexicographic rank. Composition is `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric_with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("symmetric group needs n >= 1"));
        }
        if n > cap {
            return Err(Error::limit(format!("S_{n} exceeds the degree cap {cap}")));
        }
        let perms = permutations(n);
        let order = perms.len();
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mul = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let comp: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
                        index(&comp)
                    })
                    .collect()
            })
            .collect();
        let inv = perms
            .iter()
            .map(|s| {
                let mut q = vec![0; n];
                for (i, &si) in s.iter().enumerate() {
                    q[si] = i;
                }
                index(&q)
            })
            .collect();
        Ok(Self {
            label: format!("S_{n}"),
            order,
            mul,
            inv,
            identity: 0,
        })
    }

    #[inline]
    pub fn op(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Identity, inverse and associativity checks; associativity is exhaustive
    /// up to order [`EXHAUSTIVE_ASSOCIATIVITY_MAX`], sampled with a fixed seed above.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(Error::invalid("empty group"));
        }
        if self.mul.len() != n || self.mul.iter().any(|row| row.len() != n) || self.inv.len() != n {
            return Err(Error::invalid("table shape does not match order"));
        }
        if self.identity >= n {
            return Err(Error::invalid("identity index out of range"));
        }
        if self.mul.iter().flatten().chain(&self.inv).any(|&x| x >= n) {
            return Err(Error::invalid("table entry out of range"));
        }
        let e = self.identity;
        for g in 0..n {
            if self.op(e, g) != g || self.op(g, e) != g {
                return Err(Error::invalid(format!("identity law fails at {g}")));
            }
            if self.op(g, self.inv[g]) != e || self.op(self.inv[g], g) != e {
                return Err(Error::invalid(format!("inverse law fails at {g}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.op(self.op(a, b), c) == self.op(a, self.op(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::invalid(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..RANDOM_TRIPLES {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::invalid(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.op(z, g) == self.op(g, z)))
            .collect()
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.op(g, x);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for g in self.elements() {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group serializes")
    }

    /// Parse and validate a group from its JSON description.
    pub fn from_json(s: &str) -> Result<Self> {
        let g: FiniteGroup = serde_json::from_str(s).map_err(|e| Error::invalid(format!("group json: {e}")))?;
        g.validate()?;
        Ok(g)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Indices of the transpositions in `S_n` as built by [`FiniteGroup::symmetric`].
pub fn transpositions(n: usize) -> Vec<usize> {
    permutations(n)
        .iter()
        .enumerate()
        .filter(|(_, p)| p.iter().enumerate().filter(|(i, &v)| *i != v).count() == 2)
        .map(|(k, _)| k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cyclic_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order, 1);
        assert_eq!(g.identity, 0);
        g.validate().unwrap();
    }

    #[test]
    fn cyclic_four_arithmetic() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.op(2, 3), 1);
        assert_eq!(g.inverse(3), 1);
    }

    #[test]
    fn cyclic_rejects_zero() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn cyclic_inverse_formula() {
        for n in 1..12 {
            let g = FiniteGroup::cyclic(n).unwrap();
            g.validate().unwrap();
            for k in 0..n {
                assert_eq!(g.inverse(k), (n - k) % n);
            }
        }
    }

    #[test]
    fn klein_four_group() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::product(&z2, &z2);
        v.validate().unwrap();
        assert_eq!(v.order, 4);
        for g in 1..4 {
            assert_eq!(v.inverse(g), g);
        }
    }

    #[test]
    fn product_orders_multiply() {
        let groups: Vec<FiniteGroup> = vec![
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(3).unwrap(),
            FiniteGroup::cyclic(5).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
        ];
        for a in &groups {
            for b in &groups {
                let p = FiniteGroup::product(a, b);
                assert_eq!(p.order, a.order * b.order);
                p.validate().unwrap();
            }
        }
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(FiniteGroup::product(&z3, &z3).order, 9);
    }

    #[test]
    fn hypercube_is_elementary_abelian() {
        let g = FiniteGroup::hypercube(4).unwrap();
        assert_eq!(g.order, 16);
        g.validate().unwrap();
        for x in g.elements() {
            assert_eq!(g.inverse(x), x);
            for y in g.elements() {
                assert_eq!(g.op(x, y), x ^ y);
            }
        }
    }

    #[test]
    fn symmetric_three() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order, 6);
        g.validate().unwrap();
        let t = transpositions(3);
        assert_eq!(t.len(), 3);
        for &x in &t {
            assert_eq!(g.inverse(x), x);
        }
    }

    #[test]
    fn symmetric_four_order_and_cap() {
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order, 24);
        assert!(matches!(FiniteGroup::symmetric(7), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn symmetric_five_has_trivial_center() {
        let g = FiniteGroup::symmetric(5).unwrap();
        assert_eq!(g.order, 120);
        g.validate().unwrap();
        assert_eq!(g.center(), vec![g.identity]);
    }

    #[test]
    fn validate_catches_broken_table() {
        let mut g = FiniteGroup::cyclic(3).unwrap();
        g.mul[1][1] = 0;
        assert!(g.validate().is_err());
    }

    #[test]
    fn generating_sets_generate() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::hypercube(3).unwrap(),
            FiniteGroup::cyclic(7).unwrap(),
        ] {
            let gens = g.generating_set();
            assert_eq!(g.closure(&gens).len(), g.order);
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }
}
