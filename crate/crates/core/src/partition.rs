//! Partition diagrams: set partitions of `{1..n} ∪ {1'..n'}`.
//!
//! Vertices are 0-based internally: `0..n` is the upper row and `n..2n` the
//! lower row. External formats use signed 1-based vertices, `+i` for the
//! upper vertex `i` and `-i` for the lower vertex `i'`.

use alloc::vec::Vec;
use core::fmt;

use crate::dsu::SmallDsu;
use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 16;

const LABELS: usize = 2 * MAX_DEGREE;
const GRAPH: usize = 3 * MAX_DEGREE;
const NONE: u8 = u8::MAX;

/// A vertex of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Upper(usize),
    Lower(usize),
}

impl Vertex {
    fn index(self, n: usize) -> usize {
        match self {
            Vertex::Upper(i) => i,
            Vertex::Lower(i) => n + i,
        }
    }

    fn from_index(v: usize, n: usize) -> Self {
        if v < n {
            Vertex::Upper(v)
        } else {
            Vertex::Lower(v - n)
        }
    }

    /// Signed 1-based form used by the JSON encoding.
    pub fn signed(self) -> i32 {
        match self {
            Vertex::Upper(i) => i as i32 + 1,
            Vertex::Lower(i) => -(i as i32 + 1),
        }
    }

    pub fn from_signed(v: i32, degree: usize) -> Result<Self> {
        let k = v.unsigned_abs() as usize;
        if v == 0 || k > degree {
            return Err(Error::VertexOutOfRange { vertex: v as i64, degree });
        }
        Ok(if v > 0 { Vertex::Upper(k - 1) } else { Vertex::Lower(k - 1) })
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::DegreeTooLarge { degree: n, max: MAX_DEGREE })
    } else {
        Ok(())
    }
}

/// A subset of `{1..n}`, stored as a bitmask over 0-based points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    degree: u8,
    bits: u32,
}

impl Subset {
    pub fn empty(degree: usize) -> Self {
        Subset { degree: degree as u8, bits: 0 }
    }

    pub fn full(degree: usize) -> Self {
        Subset { degree: degree as u8, bits: low_bits(degree) }
    }

    pub fn from_bits(degree: usize, bits: u32) -> Self {
        Subset { degree: degree as u8, bits: bits & low_bits(degree) }
    }

    /// Builds a subset from 1-based points.
    pub fn from_points(degree: usize, points: &[usize]) -> Result<Self> {
        let mut bits = 0;
        for &p in points {
            if p == 0 || p > degree {
                return Err(Error::VertexOutOfRange { vertex: p as i64, degree });
            }
            bits |= 1 << (p - 1);
        }
        Ok(Subset { degree: degree as u8, bits })
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Membership of the 0-based point `i`.
    pub fn contains(&self, i: usize) -> bool {
        i < self.degree() && self.bits >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == low_bits(self.degree())
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset { degree: self.degree, bits: self.bits & other.bits }
    }

    /// 0-based members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).filter(move |&i| self.contains(i))
    }

    /// 1-based members in increasing order.
    pub fn points(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All `2^n` subsets in bitmask order.
    pub fn all(degree: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << degree).map(move |bits| Subset { degree: degree as u8, bits })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

fn low_bits(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Relabels `raw` in place to first-occurrence order; returns the block count.
fn canonicalize(raw: &mut [u8]) -> usize {
    let mut map = [NONE; 256];
    let mut next = 0u8;
    for x in raw.iter_mut() {
        let slot = &mut map[*x as usize];
        if *slot == NONE {
            *slot = next;
            next += 1;
        }
        *x = *slot;
    }
    next as usize
}

/// An equivalence relation on `{1..n}` in canonical first-occurrence labelling.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    degree: u8,
    labels: [u8; MAX_DEGREE],
}

impl SetPartition {
    /// The discrete equivalence Δ.
    pub fn discrete(degree: usize) -> Self {
        let mut labels = [0u8; MAX_DEGREE];
        for (i, l) in labels.iter_mut().enumerate().take(degree) {
            *l = i as u8;
        }
        SetPartition { degree: degree as u8, labels }
    }

    /// The universal equivalence ∇ with a single class.
    pub fn universal(degree: usize) -> Self {
        SetPartition { degree: degree as u8, labels: [0u8; MAX_DEGREE] }
    }

    /// Builds from an arbitrary labelling of the points `0..n`.
    pub fn from_labels(raw: &[u8]) -> Result<Self> {
        check_degree(raw.len())?;
        let mut labels = [0u8; MAX_DEGREE];
        labels[..raw.len()].copy_from_slice(raw);
        canonicalize(&mut labels[..raw.len()]);
        Ok(SetPartition { degree: raw.len() as u8, labels })
    }

    /// Builds from classes of 1-based points, which must cover `{1..n}` disjointly.
    pub fn from_classes(degree: usize, classes: &[&[usize]]) -> Result<Self> {
        check_degree(degree)?;
        let mut raw = [NONE; MAX_DEGREE];
        for (c, class) in classes.iter().enumerate() {
            for &p in class.iter() {
                if p == 0 || p > degree {
                    return Err(Error::VertexOutOfRange { vertex: p as i64, degree });
                }
                if raw[p - 1] != NONE {
                    return Err(Error::DuplicateVertex { vertex: p as i64 });
                }
                raw[p - 1] = c as u8;
            }
        }
        if let Some(p) = raw[..degree].iter().position(|&l| l == NONE) {
            return Err(Error::MissingVertex { vertex: p as i64 + 1 });
        }
        SetPartition::from_labels(&raw[..degree])
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels[..self.degree()]
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    pub fn num_classes(&self) -> usize {
        self.labels().iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Classes as lists of 0-based points, ordered by minimum.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.num_classes()];
        for (i, &l) in self.labels().iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes() == self.degree()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() <= 1
    }

    /// `self ⊆ other` as relations: every class of `self` lies in a class of `other`.
    pub fn is_finer_than(&self, other: &SetPartition) -> bool {
        let mut image = [NONE; MAX_DEGREE];
        for i in 0..self.degree() {
            let c = self.labels[i] as usize;
            if image[c] == NONE {
                image[c] = other.labels[i];
            } else if image[c] != other.labels[i] {
                return false;
            }
        }
        true
    }

    /// The join ε ∨ η: the least equivalence containing both.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        let n = self.degree();
        let mut dsu = SmallDsu::<MAX_DEGREE>::new(n);
        let mut first_a = [NONE; MAX_DEGREE];
        let mut first_b = [NONE; MAX_DEGREE];
        for i in 0..n {
            for (first, l) in [(&mut first_a, self.labels[i]), (&mut first_b, other.labels[i])] {
                if first[l as usize] == NONE {
                    first[l as usize] = i as u8;
                } else {
                    dsu.union(first[l as usize] as usize, i);
                }
            }
        }
        let mut raw = [0u8; MAX_DEGREE];
        for (i, r) in raw.iter_mut().enumerate().take(n) {
            *r = dsu.find(i) as u8;
        }
        SetPartition::from_labels(&raw[..n]).expect("degree already checked")
    }

    /// All equivalences on `{1..n}` via restricted growth strings.
    pub fn all(degree: usize) -> impl Iterator<Item = SetPartition> {
        RestrictedGrowth::new(degree).map(move |rgs| {
            let mut labels = [0u8; MAX_DEGREE];
            labels[..degree].copy_from_slice(&rgs);
            SetPartition { degree: degree as u8, labels }
        })
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<Vec<usize>> = self
            .classes()
            .into_iter()
            .map(|c| c.into_iter().map(|i| i + 1).collect())
            .collect();
        f.debug_set().entries(classes).finish()
    }
}

/// Lexicographic enumeration of restricted growth strings of a fixed length.
pub(crate) struct RestrictedGrowth {
    current: Vec<u8>,
    maxima: Vec<u8>,
    done: bool,
}

impl RestrictedGrowth {
    pub(crate) fn new(len: usize) -> Self {
        RestrictedGrowth { current: alloc::vec![0; len], maxima: alloc::vec![0; len], done: false }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // maxima[i] = max(current[0..i]); position i may take values up to maxima[i] + 1.
        let len = self.current.len();
        let mut i = len;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] <= self.maxima[i] {
                self.current[i] += 1;
                for j in i + 1..len {
                    self.current[j] = 0;
                    self.maxima[j] = self.maxima[j - 1].max(self.current[j - 1]);
                }
                break;
            }
        }
        Some(out)
    }
}

/// A partition diagram of degree `n` in canonical block labelling.
///
/// Block ids follow first occurrence when scanning `1..n` then `1'..n'`, so
/// equal set partitions have identical encodings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    degree: u8,
    labels: [u8; LABELS],
}

/// Combinatorial parameters of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub dom: Subset,
    pub codom: Subset,
    pub ker: SetPartition,
    pub coker: SetPartition,
    pub rank: usize,
    pub supp: Subset,
    pub cosupp: Subset,
}

impl Partition {
    /// Wraps labels that are already canonical (e.g. from a restricted growth string).
    fn from_canonical(degree: usize, labels: &[u8]) -> Self {
        let mut out = [0u8; LABELS];
        out[..2 * degree].copy_from_slice(labels);
        Partition { degree: degree as u8, labels: out }
    }

    /// Builds from any labelling of the `2n` vertices (upper row first).
    pub fn from_labels(degree: usize, raw: &[u8]) -> Result<Self> {
        check_degree(degree)?;
        if raw.len() != 2 * degree {
            return Err(Error::DegreeMismatch { left: degree, right: raw.len() / 2 });
        }
        let mut labels = [0u8; LABELS];
        labels[..raw.len()].copy_from_slice(raw);
        canonicalize(&mut labels[..raw.len()]);
        Ok(Partition { degree: degree as u8, labels })
    }

    /// Builds from blocks of signed 1-based vertices (`+i` upper, `-i` lower).
    pub fn from_blocks<B: AsRef<[i32]>>(degree: usize, blocks: &[B]) -> Result<Self> {
        check_degree(degree)?;
        let mut raw = [NONE; LABELS];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block.as_ref() {
                let idx = Vertex::from_signed(v, degree)?.index(degree);
                if raw[idx] != NONE {
                    return Err(Error::DuplicateVertex { vertex: v as i64 });
                }
                raw[idx] = b as u8;
            }
        }
        if let Some(idx) = raw[..2 * degree].iter().position(|&l| l == NONE) {
            let missing = Vertex::from_index(idx, degree).signed();
            return Err(Error::MissingVertex { vertex: missing as i64 });
        }
        Partition::from_labels(degree, &raw[..2 * degree])
    }

    /// The identity `{{i, i'}}`.
    pub fn identity(degree: usize) -> Self {
        let mut labels = [0u8; LABELS];
        for i in 0..degree {
            labels[i] = i as u8;
            labels[degree + i] = i as u8;
        }
        Partition { degree: degree as u8, labels }
    }

    /// ζ = {X, X'}: one upper and one lower block.
    pub fn zeta(degree: usize) -> Self {
        let mut labels = [0u8; LABELS];
        for l in labels.iter_mut().skip(degree).take(degree) {
            *l = 1;
        }
        Partition { degree: degree as u8, labels }
    }

    /// id_A: transversals `{a, a'}` for `a ∈ A`, singletons elsewhere.
    pub fn id_subset(a: &Subset) -> Self {
        let n = a.degree();
        let mut raw = [0u8; LABELS];
        for i in 0..n {
            raw[i] = i as u8;
            raw[n + i] = if a.contains(i) { i as u8 } else { (n + i) as u8 };
        }
        Partition::from_labels(n, &raw[..2 * n]).expect("degree fits")
    }

    /// id_ε: blocks `C ∪ C'` for each class `C` of ε.
    pub fn id_equiv(e: &SetPartition) -> Self {
        let n = e.degree();
        let mut labels = [0u8; LABELS];
        labels[..n].copy_from_slice(e.labels());
        labels[n..2 * n].copy_from_slice(e.labels());
        Partition { degree: n as u8, labels }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Canonical block labels, upper row then lower row.
    pub fn labels(&self) -> &[u8] {
        &self.labels[..2 * self.degree()]
    }

    pub fn upper_label(&self, i: usize) -> u8 {
        self.labels[i]
    }

    pub fn lower_label(&self, i: usize) -> u8 {
        self.labels[self.degree() + i]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels().iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as vertex lists, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let n = self.degree();
        let mut out = alloc::vec![Vec::new(); self.num_blocks()];
        for (v, &l) in self.labels().iter().enumerate() {
            out[l as usize].push(Vertex::from_index(v, n));
        }
        out
    }

    /// Blocks in the signed external form, sorted by minimal vertex.
    pub fn signed_blocks(&self) -> Vec<Vec<i32>> {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(Vertex::signed).collect())
            .collect()
    }

    fn block_sizes(&self) -> ([u8; LABELS], [u8; LABELS]) {
        let n = self.degree();
        let mut upper = [0u8; LABELS];
        let mut lower = [0u8; LABELS];
        for i in 0..n {
            upper[self.labels[i] as usize] += 1;
            lower[self.labels[n + i] as usize] += 1;
        }
        (upper, lower)
    }

    /// Stacks `self` over `other` and keeps the connected components meeting the outer rows.
    pub fn multiply(&self, other: &Partition) -> Result<Partition> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product without the degree check; degrees must agree.
    pub fn mul_unchecked(&self, other: &Partition) -> Partition {
        let n = self.degree();
        debug_assert_eq!(n, other.degree());
        // Nodes: top row 0..n, middle row n..2n, bottom row 2n..3n.
        let mut dsu = SmallDsu::<GRAPH>::new(3 * n);
        let mut first = [NONE; LABELS];
        for v in 0..2 * n {
            let l = self.labels[v] as usize;
            if first[l] == NONE {
                first[l] = v as u8;
            } else {
                dsu.union(first[l] as usize, v);
            }
        }
        let mut first = [NONE; LABELS];
        for v in 0..2 * n {
            let l = other.labels[v] as usize;
            let node = n + v;
            if first[l] == NONE {
                first[l] = node as u8;
            } else {
                dsu.union(first[l] as usize, node);
            }
        }
        let mut raw = [0u8; LABELS];
        for (i, r) in raw.iter_mut().enumerate().take(n) {
            *r = dsu.find(i) as u8;
        }
        for i in 0..n {
            raw[n + i] = dsu.find(2 * n + i) as u8;
        }
        canonicalize(&mut raw[..2 * n]);
        Partition { degree: n as u8, labels: raw }
    }

    /// Swaps the upper and lower rows.
    pub fn involute(&self) -> Partition {
        let n = self.degree();
        let mut raw = [0u8; LABELS];
        raw[..n].copy_from_slice(&self.labels[n..2 * n]);
        raw[n..2 * n].copy_from_slice(&self.labels[..n]);
        canonicalize(&mut raw[..2 * n]);
        Partition { degree: n as u8, labels: raw }
    }

    fn transversal_mask(&self) -> u64 {
        let n = self.degree();
        let (mut up, mut down) = (0u64, 0u64);
        for i in 0..n {
            up |= 1 << self.labels[i];
            down |= 1 << self.labels[n + i];
        }
        up & down
    }

    pub fn rank(&self) -> usize {
        self.transversal_mask().count_ones() as usize
    }

    /// Upper points lying in transversals.
    pub fn dom(&self) -> Subset {
        let t = self.transversal_mask();
        let bits = (0..self.degree()).filter(|&i| t >> self.labels[i] & 1 == 1).fold(0, |b, i| b | 1 << i);
        Subset::from_bits(self.degree(), bits)
    }

    /// Lower points lying in transversals.
    pub fn codom(&self) -> Subset {
        let n = self.degree();
        let t = self.transversal_mask();
        let bits = (0..n).filter(|&i| t >> self.labels[n + i] & 1 == 1).fold(0, |b, i| b | 1 << i);
        Subset::from_bits(n, bits)
    }

    pub fn ker(&self) -> SetPartition {
        SetPartition::from_labels(&self.labels[..self.degree()]).expect("degree fits")
    }

    pub fn coker(&self) -> SetPartition {
        let n = self.degree();
        SetPartition::from_labels(&self.labels[n..2 * n]).expect("degree fits")
    }

    /// Upper points `x` with `{x}` not a block.
    pub fn supp(&self) -> Subset {
        let (upper, lower) = self.block_sizes();
        let bits = (0..self.degree())
            .filter(|&i| {
                let l = self.labels[i] as usize;
                upper[l] + lower[l] > 1
            })
            .fold(0, |b, i| b | 1 << i);
        Subset::from_bits(self.degree(), bits)
    }

    /// Lower points `x` with `{x'}` not a block.
    pub fn cosupp(&self) -> Subset {
        let n = self.degree();
        let (upper, lower) = self.block_sizes();
        let bits = (0..n)
            .filter(|&i| {
                let l = self.labels[n + i] as usize;
                upper[l] + lower[l] > 1
            })
            .fold(0, |b, i| b | 1 << i);
        Subset::from_bits(n, bits)
    }

    pub fn params(&self) -> Params {
        Params {
            dom: self.dom(),
            codom: self.codom(),
            ker: self.ker(),
            coker: self.coker(),
            rank: self.rank(),
            supp: self.supp(),
            cosupp: self.cosupp(),
        }
    }

    /// Whether every block of `self` lies inside a block of `other` (the ≼ relation).
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        let mut image = [NONE; LABELS];
        for v in 0..2 * self.degree() {
            let c = self.labels[v] as usize;
            if image[c] == NONE {
                image[c] = other.labels[v];
            } else if image[c] != other.labels[v] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the vertex set of block `label` of `self` is exactly a block of `other`.
    pub fn block_is_block_of(&self, label: u8, other: &Partition) -> bool {
        let n2 = 2 * self.degree();
        let Some(v0) = (0..n2).find(|&v| self.labels[v] == label) else {
            return false;
        };
        let target = other.labels[v0];
        (0..n2).all(|v| (self.labels[v] == label) == (other.labels[v] == target))
    }

    /// Labels of blocks contained in the upper row.
    pub fn upper_nontransversals(&self) -> Vec<u8> {
        self.nontransversals(true)
    }

    /// Labels of blocks contained in the lower row.
    pub fn lower_nontransversals(&self) -> Vec<u8> {
        self.nontransversals(false)
    }

    fn nontransversals(&self, upper_row: bool) -> Vec<u8> {
        let n = self.degree();
        let (up, down) = self.block_sizes();
        (0..self.num_blocks() as u8)
            .filter(|&l| {
                let (u, d) = (up[l as usize], down[l as usize]);
                if upper_row {
                    u > 0 && d == 0
                } else {
                    d > 0 && u == 0
                }
            })
            .filter(|_| n > 0)
            .collect()
    }

    /// Every block has exactly two vertices.
    pub fn is_brauer(&self) -> bool {
        let (u, d) = self.block_sizes();
        (0..self.num_blocks()).all(|l| u[l] + d[l] == 2)
    }

    /// Every block has at most two vertices.
    pub fn is_partial_brauer(&self) -> bool {
        let (u, d) = self.block_sizes();
        (0..self.num_blocks()).all(|l| u[l] + d[l] <= 2)
    }

    /// Every partition of degree `n`, in lexicographic order of canonical labels.
    pub fn all(degree: usize) -> impl Iterator<Item = Partition> {
        RestrictedGrowth::new(2 * degree).map(move |rgs| Partition::from_canonical(degree, &rgs))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.degree())?;
        f.debug_set().entries(self.signed_blocks()).finish()
    }
}

impl core::ops::Mul for Partition {
    type Output = Partition;

    fn mul(self, rhs: Partition) -> Partition {
        assert_eq!(self.degree, rhs.degree, "partition degrees differ");
        self.mul_unchecked(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn alpha() -> Partition {
        Partition::from_blocks(6, &[vec![1, 4], vec![2, 3, -4, -5], vec![5, 6], vec![-1, -2, -6], vec![-3]])
            .unwrap()
    }

    fn beta() -> Partition {
        Partition::from_blocks(6, &[vec![1, 2], vec![3, 4, -1], vec![5, -4, -5, -6], vec![6], vec![-2], vec![-3]])
            .unwrap()
    }

    #[test]
    fn worked_product() {
        let expected =
            Partition::from_blocks(6, &[vec![1, 4], vec![2, 3, -1, -4, -5, -6], vec![5, 6], vec![-2], vec![-3]])
                .unwrap();
        assert_eq!(alpha().multiply(&beta()).unwrap(), expected);
    }

    #[test]
    fn worked_parameters() {
        let a = alpha().params();
        assert_eq!(a.rank, 1);
        assert_eq!(a.dom.points(), vec![2, 3]);
        let coker: Vec<Vec<usize>> = a.coker.classes();
        assert_eq!(coker, vec![vec![0, 1, 5], vec![2], vec![3, 4]]);
        let b = beta().params();
        assert_eq!(b.supp.points(), vec![1, 2, 3, 4, 5]);
        assert_eq!(b.cosupp.points(), vec![1, 4, 5, 6]);
    }

    #[test]
    fn involution_flips_tabular_form() {
        let flipped = Partition::from_blocks(
            6,
            &[vec![-1, -4], vec![-2, -3, 4, 5], vec![-5, -6], vec![1, 2, 6], vec![3]],
        )
        .unwrap();
        assert_eq!(alpha().involute(), flipped);
        assert_eq!(Partition::identity(6).involute(), Partition::identity(6));
    }

    #[test]
    fn identity_and_zeta() {
        let id = Partition::identity(6);
        assert_eq!(id * alpha(), alpha());
        assert_eq!(alpha() * id, alpha());
        let z = Partition::zeta(4);
        assert_eq!(z * z, z);
        let p = id.params();
        assert_eq!(p.rank, 6);
        assert!(p.ker.is_discrete());
        assert!(p.supp.is_full());
    }

    #[test]
    fn degree_zero() {
        let all: Vec<_> = Partition::all(0).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], Partition::identity(0));
        assert_eq!(all[0], Partition::zeta(0));
        assert_eq!(all[0] * all[0], all[0]);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let e = Partition::identity(2).multiply(&Partition::identity(3)).unwrap_err();
        assert_eq!(e, Error::DegreeMismatch { left: 2, right: 3 });
        assert!(Partition::identity(2).refines(&Partition::identity(1)).is_err());
    }

    #[test]
    fn from_blocks_validation() {
        assert_eq!(
            Partition::from_blocks(2, &[vec![1, -1], vec![2, 1], vec![-2]]).unwrap_err(),
            Error::DuplicateVertex { vertex: 1 }
        );
        assert_eq!(
            Partition::from_blocks(2, &[vec![1, -1], vec![2]]).unwrap_err(),
            Error::MissingVertex { vertex: -2 }
        );
        assert!(matches!(
            Partition::from_blocks(2, &[vec![1, -3]]).unwrap_err(),
            Error::VertexOutOfRange { .. }
        ));
        let id: Vec<Vec<i32>> = (1..=5).map(|i| vec![i, -i]).collect();
        assert_eq!(Partition::from_blocks(5, &id).unwrap(), Partition::identity(5));
    }

    #[test]
    fn idempotent_figures() {
        let a = Subset::from_points(6, &[1, 2, 4, 5]).unwrap();
        let id_a = Partition::id_subset(&a);
        let expected = Partition::from_blocks(
            6,
            &[vec![1, -1], vec![2, -2], vec![3], vec![4, -4], vec![5, -5], vec![6], vec![-3], vec![-6]],
        )
        .unwrap();
        assert_eq!(id_a, expected);

        let eps = SetPartition::from_classes(6, &[&[1, 2], &[3, 5, 6], &[4]]).unwrap();
        let id_e = Partition::id_equiv(&eps);
        let expected =
            Partition::from_blocks(6, &[vec![1, 2, -1, -2], vec![3, 5, 6, -3, -5, -6], vec![4, -4]]).unwrap();
        assert_eq!(id_e, expected);

        assert_eq!(Partition::id_subset(&Subset::full(3)), Partition::identity(3));
        assert_eq!(Partition::id_equiv(&SetPartition::discrete(3)), Partition::identity(3));
    }

    #[test]
    fn idempotent_products_follow_meet_and_join() {
        let n = 3;
        for a in Subset::all(n) {
            for b in Subset::all(n) {
                assert_eq!(Partition::id_subset(&a) * Partition::id_subset(&b), Partition::id_subset(&a.intersection(&b)));
            }
        }
        let nabla = Partition::id_equiv(&SetPartition::universal(n));
        for e in SetPartition::all(n) {
            for f in SetPartition::all(n) {
                assert_eq!(Partition::id_equiv(&e) * Partition::id_equiv(&f), Partition::id_equiv(&e.join(&f)));
            }
            assert_eq!(nabla * Partition::id_equiv(&e), nabla);
        }
    }

    #[test]
    fn brauer_predicates() {
        // A perfect matching of B_6 and a partial Brauer diagram with singletons.
        let b = Partition::from_blocks(6, &[vec![1, 2], vec![3, -1], vec![4, -6], vec![5, 6], vec![-2, -3], vec![-4, -5]])
            .unwrap();
        assert!(b.is_brauer() && b.is_partial_brauer());
        let pb = Partition::from_blocks(
            6,
            &[vec![1, 2], vec![3], vec![4, -2], vec![5, -5], vec![6], vec![-1], vec![-3, -4], vec![-6]],
        )
        .unwrap();
        assert!(pb.is_partial_brauer());
        assert!(!pb.is_brauer());
        let id = Partition::identity(4);
        assert!(id.is_brauer() && id.is_partial_brauer());
        assert!(!alpha().is_partial_brauer());
    }

    #[test]
    fn refinement_basics() {
        let finest = Partition::from_labels(3, &[0, 1, 2, 3, 4, 5]).unwrap();
        for b in Partition::all(3) {
            assert!(finest.refines(&b).unwrap());
            assert!(b.refines(&b).unwrap());
            assert!(b.refines(&Partition::from_labels(3, &[0; 6]).unwrap()).unwrap());
        }
    }

    #[test]
    fn enumeration_counts_and_canonical() {
        let counts: Vec<usize> = (0..4).map(|n| Partition::all(n).count()).collect();
        assert_eq!(counts, vec![1, 2, 15, 203]);
        for p in Partition::all(2) {
            let again = Partition::from_labels(2, p.labels()).unwrap();
            assert_eq!(again, p);
        }
        assert_eq!(SetPartition::all(4).count(), 15);
    }

    #[test]
    fn nontransversals() {
        let b = beta();
        // Upper non-transversals {1,2} and {6}; lower {2'} and {3'}.
        let up: Vec<Vec<i32>> = b
            .upper_nontransversals()
            .into_iter()
            .map(|l| b.signed_blocks()[l as usize].clone())
            .collect();
        assert_eq!(up, vec![vec![1, 2], vec![6]]);
        let down: Vec<Vec<i32>> = b
            .lower_nontransversals()
            .into_iter()
            .map(|l| b.signed_blocks()[l as usize].clone())
            .collect();
        assert_eq!(down, vec![vec![-2], vec![-3]]);
    }
}
