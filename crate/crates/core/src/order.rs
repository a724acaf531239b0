//! Finite partial orders on element indices, with zeta and Möbius functions.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{Rational, RationalMatrix};

/// A relation on `0..size` stored as down-sets: `below[y] = {x : x ≤ y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    below: Vec<FixedBitSet>,
}

impl PartialOrder {
    /// Builds from down-sets; no axioms are checked here, see [`PartialOrder::is_partial_order`].
    pub fn from_down_sets(below: Vec<FixedBitSet>) -> Self {
        PartialOrder { below }
    }

    pub fn from_fn(size: usize, mut leq: impl FnMut(u32, u32) -> bool) -> Self {
        let below = (0..size as u32)
            .map(|y| {
                let mut set = FixedBitSet::with_capacity(size);
                (0..size as u32).filter(|&x| leq(x, y)).for_each(|x| set.insert(x as usize));
                set
            })
            .collect();
        PartialOrder { below }
    }

    /// The discrete order (an antichain).
    pub fn antichain(size: usize) -> Self {
        PartialOrder::from_fn(size, |x, y| x == y)
    }

    /// `0 < 1 < … < size-1`.
    pub fn chain(size: usize) -> Self {
        PartialOrder::from_fn(size, |x, y| x <= y)
    }

    pub fn size(&self) -> usize {
        self.below.len()
    }

    #[inline]
    pub fn leq(&self, x: u32, y: u32) -> bool {
        self.below[y as usize].contains(x as usize)
    }

    pub fn down_set(&self, y: u32) -> &FixedBitSet {
        &self.below[y as usize]
    }

    /// Number of related pairs.
    pub fn pairs(&self) -> usize {
        self.below.iter().map(|b| b.count_ones(..)).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size() as u32).all(|x| self.leq(x, x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size() as u32;
        (0..n).all(|y| self.below[y as usize].ones().all(|x| x as u32 == y || !self.leq(y, x as u32)))
    }

    pub fn is_transitive(&self) -> bool {
        // x ≤ y implies down(x) ⊆ down(y).
        let n = self.size() as u32;
        (0..n).all(|y| self.below[y as usize].ones().all(|x| self.below[x].is_subset(&self.below[y as usize])))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    /// A linear extension: sort by down-set size, then index.
    ///
    /// Valid for partial orders since `x < y` forces `down(x) ⊊ down(y)`.
    pub fn linear_extension(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.size() as u32).collect();
        order.sort_by_key(|&x| (self.below[x as usize].count_ones(..), x));
        order
    }

    /// `Z[a][x] = 1` iff `a ≤ x`.
    pub fn zeta_matrix(&self) -> RationalMatrix {
        let n = self.size();
        let mut z = RationalMatrix::zeros(n, n);
        for x in 0..n {
            for a in self.below[x].ones() {
                z.set(a, x, Rational::one());
            }
        }
        z
    }

    /// Möbius function by the recursion `μ(a, x) = -Σ_{a ≤ z < x} μ(a, z)`.
    ///
    /// Returned as `mu[a][x]`; zero when `a ≰ x`.
    pub fn mobius(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        let ext = self.linear_extension();
        let mut mu = alloc::vec![alloc::vec![BigInt::zero(); n]; n];
        for a in 0..n {
            // Walk x in linear-extension order so every z < x is done first.
            for &x in &ext {
                let x = x as usize;
                if !self.below[x].contains(a) {
                    continue;
                }
                if x == a {
                    mu[a][x] = BigInt::one();
                    continue;
                }
                let mut sum = BigInt::zero();
                for z in self.below[x].ones() {
                    if z != x && self.below[z].contains(a) {
                        sum += &mu[a][z];
                    }
                }
                mu[a][x] = -sum;
            }
        }
        mu
    }

    /// The Möbius function as a matrix, i.e. the inverse of the zeta matrix.
    pub fn mobius_matrix(&self) -> RationalMatrix {
        let mu = self.mobius();
        let n = self.size();
        let mut m = RationalMatrix::zeros(n, n);
        for (a, row) in mu.into_iter().enumerate() {
            for (x, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(a, x, Rational::from_integer(v));
                }
            }
        }
        m
    }
}
