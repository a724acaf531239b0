//! Finite monoids as index-based Cayley tables with a decoder to concrete elements.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use fixedbitset::FixedBitSet;
use hashbrown::HashMap;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::relation::BinaryRelation;

/// Default ceiling on materialized Cayley tables.
pub const DEFAULT_CAP: usize = 5000;

/// Up to this size associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY: usize = 250;

/// A concrete element type that can populate a [`FiniteMonoid`].
pub trait Element: Copy + Eq + Hash + Ord + Debug {
    fn degree(&self) -> usize;
    fn one(degree: usize) -> Self;
    /// Product of two elements of equal degree.
    fn product(&self, rhs: &Self) -> Self;
}

impl Element for Partition {
    fn degree(&self) -> usize {
        Partition::degree(self)
    }

    fn one(degree: usize) -> Self {
        Partition::identity(degree)
    }

    fn product(&self, rhs: &Self) -> Self {
        self.mul_unchecked(rhs)
    }
}

impl Element for BinaryRelation {
    fn degree(&self) -> usize {
        BinaryRelation::degree(self)
    }

    fn one(degree: usize) -> Self {
        BinaryRelation::identity(degree)
    }

    fn product(&self, rhs: &Self) -> Self {
        self.compose_unchecked(rhs)
    }
}

/// A multiplication table over element indices `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    size: usize,
    mul: Vec<u32>,
    identity: Option<u32>,
    generators: Vec<u32>,
}

impl MulTable {
    /// Builds a table from a product function; finds the identity if there is one.
    pub fn from_fn(size: usize, mut product: impl FnMut(u32, u32) -> u32) -> Self {
        let mut mul = Vec::with_capacity(size * size);
        for a in 0..size as u32 {
            for b in 0..size as u32 {
                mul.push(product(a, b));
            }
        }
        MulTable::from_raw(size, mul)
    }

    /// Wraps a row-major table whose entries are all `< size`.
    pub fn from_raw(size: usize, mul: Vec<u32>) -> Self {
        assert_eq!(mul.len(), size * size, "table shape");
        let mut t = MulTable { size, mul, identity: None, generators: Vec::new() };
        t.identity = t.find_identity();
        t.generators = t.greedy_generators();
        t
    }

    fn find_identity(&self) -> Option<u32> {
        (0..self.size as u32).find(|&e| (0..self.size as u32).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Greedy generating set: scan in index order, keep anything not yet generated.
    fn greedy_generators(&self) -> Vec<u32> {
        let mut inside = FixedBitSet::with_capacity(self.size);
        let mut members: Vec<u32> = Vec::new();
        if let Some(e) = self.identity {
            inside.insert(e as usize);
            members.push(e);
        }
        let mut gens = Vec::new();
        for x in 0..self.size as u32 {
            if inside.contains(x as usize) {
                continue;
            }
            gens.push(x);
            // New elements are words ending in x, or longer words through them.
            let mut queue = VecDeque::new();
            let push = |v: u32, inside: &mut FixedBitSet, members: &mut Vec<u32>, q: &mut VecDeque<u32>| {
                if !inside.put(v as usize) {
                    members.push(v);
                    q.push_back(v);
                }
            };
            push(x, &mut inside, &mut members, &mut queue);
            let snapshot = members.len();
            for i in 0..snapshot {
                let v = self.mul(members[i], x);
                push(v, &mut inside, &mut members, &mut queue);
            }
            while let Some(v) = queue.pop_front() {
                for &g in &gens {
                    let w = self.mul(v, g);
                    push(w, &mut inside, &mut members, &mut queue);
                }
                // Old members times new words may also be new.
                let len = members.len();
                for i in 0..len {
                    let w = self.mul(members[i], v);
                    push(w, &mut inside, &mut members, &mut queue);
                }
            }
        }
        gens
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn row(&self, a: u32) -> &[u32] {
        &self.mul[a as usize * self.size..(a as usize + 1) * self.size]
    }

    /// Row-major table entries.
    pub fn raw(&self) -> &[u32] {
        &self.mul
    }

    pub fn identity(&self) -> Option<u32> {
        self.identity
    }

    /// A generating set of the semigroup (the identity is implied when present).
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn is_idempotent(&self, x: u32) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<u32> {
        (0..self.size as u32).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// Associativity on all triples when `size ≤ 250`, otherwise on `samples` random triples.
    pub fn is_associative(&self, samples: usize, seed: u64) -> bool {
        let n = self.size as u32;
        if self.size <= EXHAUSTIVE_ASSOCIATIVITY {
            return (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        })
    }

    /// Whether `subset` is closed under the product.
    pub fn is_closed(&self, subset: &[u32]) -> bool {
        let mut inside = FixedBitSet::with_capacity(self.size);
        subset.iter().for_each(|&x| inside.insert(x as usize));
        subset.iter().all(|&a| subset.iter().all(|&b| inside.contains(self.mul(a, b) as usize)))
    }

    /// The subsemigroup on `subset` (in the given order) as its own table.
    pub fn restrict(&self, subset: &[u32]) -> Result<MulTable> {
        let mut local = HashMap::with_capacity(subset.len());
        for (i, &x) in subset.iter().enumerate() {
            if x as usize >= self.size {
                return Err(Error::IndexOutOfRange { index: x, size: self.size });
            }
            local.insert(x, i as u32);
        }
        let k = subset.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in subset {
            for &b in subset {
                let p = self.mul(a, b);
                match local.get(&p) {
                    Some(&i) => mul.push(i),
                    None => return Err(Error::NotClosed { left: a, right: b }),
                }
            }
        }
        Ok(MulTable::from_raw(k, mul))
    }

    /// Elements `z` with `a·z = z` for every `a`.
    pub fn right_zeros(&self) -> Vec<u32> {
        let n = self.size as u32;
        (0..n).filter(|&z| (0..n).all(|a| self.mul(a, z) == z)).collect()
    }

    /// Elements `z` with `z·a = z` for every `a`.
    pub fn left_zeros(&self) -> Vec<u32> {
        let n = self.size as u32;
        (0..n).filter(|&z| self.row(z).iter().all(|&p| p == z)).collect()
    }

    /// A two-sided zero, if any.
    pub fn zero(&self) -> Option<u32> {
        let left = self.left_zeros();
        left.into_iter().find(|&z| (0..self.size as u32).all(|a| self.mul(a, z) == z))
    }
}

/// Whether `map` is an injective, identity-preserving homomorphism `source → target`.
pub fn check_embedding(map: &[u32], source: &MulTable, target: &MulTable) -> bool {
    if map.len() != source.size() || map.iter().any(|&y| y as usize >= target.size()) {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(target.size());
    if map.iter().any(|&y| seen.put(y as usize)) {
        return false;
    }
    match (source.identity(), target.identity()) {
        (Some(e), Some(f)) if map[e as usize] != f => return false,
        (Some(_), None) => return false,
        _ => {}
    }
    let n = source.size() as u32;
    (0..n).all(|a| (0..n).all(|b| map[source.mul(a, b) as usize] == target.mul(map[a as usize], map[b as usize])))
}

/// A finite monoid (or semigroup) of concrete elements with its Cayley table.
#[derive(Debug, Clone)]
pub struct FiniteMonoid<T: Element> {
    table: MulTable,
    elements: Vec<T>,
    index: HashMap<T, u32>,
}

impl<T: Element> FiniteMonoid<T> {
    /// Tabulates a fixed element set; fails if the set is not closed under the product.
    pub fn from_elements(elements: Vec<T>, cap: usize) -> Result<Self> {
        if elements.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let index: HashMap<T, u32> = elements.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let m = elements.len();
        let mut mul = Vec::with_capacity(m * m);
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                match index.get(&a.product(b)) {
                    Some(&k) => mul.push(k),
                    None => return Err(Error::NotClosed { left: i as u32, right: j as u32 }),
                }
            }
        }
        Ok(FiniteMonoid { table: MulTable::from_raw(m, mul), elements, index })
    }

    /// Breadth-first closure of `generators` together with the identity.
    pub fn closure(generators: &[T], cap: usize) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
        }
        let mut elements = alloc::vec![T::one(degree)];
        let mut index: HashMap<T, u32> = HashMap::new();
        index.insert(elements[0], 0);
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for g in generators {
                let y = x.product(g);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(y, elements.len() as u32);
                    elements.push(y);
                }
            }
            i += 1;
        }
        FiniteMonoid::from_elements(elements, cap)
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &T {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, x: &T) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// Indices of elements satisfying `pred`, in index order.
    pub fn filter(&self, mut pred: impl FnMut(&T) -> bool) -> Vec<u32> {
        (0..self.size() as u32).filter(|&i| pred(&self.elements[i as usize])).collect()
    }

    /// Decodes a set of indices into sorted concrete elements.
    pub fn decode_sorted(&self, indices: &[u32]) -> Vec<T> {
        let mut out: Vec<T> = indices.iter().map(|&i| self.elements[i as usize]).collect();
        out.sort();
        out
    }

    /// Re-checks `decode(mul(i, j)) == decode(i)·decode(j)` on every pair.
    pub fn decoder_consistent(&self) -> bool {
        let n = self.size() as u32;
        (0..n).all(|i| {
            (0..n).all(|j| self.elements[self.table.mul(i, j) as usize] == self.elements[i as usize].product(&self.elements[j as usize]))
        })
    }
}
