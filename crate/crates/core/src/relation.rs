//! Binary relations on `{1..n}` under composition and converse.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::partition::Subset;

/// Largest supported degree for relations.
pub const MAX_REL_DEGREE: usize = 16;

/// An `n × n` boolean incidence grid, stored as packed rows.
///
/// Row `x` has bit `y` set iff `(x, y)` is in the relation (0-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryRelation {
    degree: u8,
    rows: [u16; MAX_REL_DEGREE],
}

/// Domain, codomain, kernel and cokernel of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelParams {
    pub dom: Subset,
    pub codom: Subset,
    /// Reflexive and symmetric on `dom`, not transitive in general.
    pub ker: BinaryRelation,
    pub coker: BinaryRelation,
}

/// The four injectivity/surjectivity predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelPredicates {
    pub injective: bool,
    pub coinjective: bool,
    pub surjective: bool,
    pub cosurjective: bool,
}

impl BinaryRelation {
    pub fn empty(degree: usize) -> Self {
        assert!(degree <= MAX_REL_DEGREE, "relation degree too large");
        BinaryRelation { degree: degree as u8, rows: [0; MAX_REL_DEGREE] }
    }

    pub fn identity(degree: usize) -> Self {
        BinaryRelation::id_subset(&Subset::full(degree))
    }

    /// The partial identity `{(a, a) : a ∈ A}`.
    pub fn id_subset(a: &Subset) -> Self {
        let mut r = BinaryRelation::empty(a.degree());
        for i in a.iter() {
            r.rows[i] = 1 << i;
        }
        r
    }

    /// Builds from 1-based pairs.
    pub fn from_pairs(degree: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if degree > MAX_REL_DEGREE {
            return Err(Error::DegreeTooLarge { degree, max: MAX_REL_DEGREE });
        }
        let mut r = BinaryRelation::empty(degree);
        for &(x, y) in pairs {
            for p in [x, y] {
                if p == 0 || p > degree {
                    return Err(Error::VertexOutOfRange { vertex: p as i64, degree });
                }
            }
            r.rows[x - 1] |= 1 << (y - 1);
        }
        Ok(r)
    }

    /// Decodes the row-major bit pattern `code` (bit `x·n + y` is the pair `(x, y)`).
    pub fn from_code(degree: usize, code: u64) -> Self {
        let mut r = BinaryRelation::empty(degree);
        let mask = (1u64 << degree) - 1;
        for x in 0..degree {
            r.rows[x] = (code >> (x * degree) & mask) as u16;
        }
        r
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.degree()]
    }

    /// Membership of the 0-based pair `(x, y)`.
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }

    /// 1-based pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.degree();
        (0..n)
            .flat_map(|x| (0..n).filter(move |&y| self.contains(x, y)).map(move |y| (x + 1, y + 1)))
            .collect()
    }

    pub fn compose(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    /// `(x, y)` is in the product iff `(x, u) ∈ self` and `(u, y) ∈ other` for some `u`.
    pub fn compose_unchecked(&self, other: &BinaryRelation) -> BinaryRelation {
        let mut out = BinaryRelation::empty(self.degree());
        for x in 0..self.degree() {
            let mut row = self.rows[x];
            let mut acc = 0u16;
            while row != 0 {
                let u = row.trailing_zeros() as usize;
                acc |= other.rows[u];
                row &= row - 1;
            }
            out.rows[x] = acc;
        }
        out
    }

    pub fn converse(&self) -> BinaryRelation {
        let mut out = BinaryRelation::empty(self.degree());
        for x in 0..self.degree() {
            for y in 0..self.degree() {
                if self.contains(x, y) {
                    out.rows[y] |= 1 << x;
                }
            }
        }
        out
    }

    pub fn dom(&self) -> Subset {
        let bits = (0..self.degree()).filter(|&x| self.rows[x] != 0).fold(0u32, |b, x| b | 1 << x);
        Subset::from_bits(self.degree(), bits)
    }

    pub fn codom(&self) -> Subset {
        let bits = self.rows().iter().fold(0u16, |b, &r| b | r);
        Subset::from_bits(self.degree(), bits as u32)
    }

    /// `{(x, y) : (x, u), (y, u) ∈ self for some u}`.
    pub fn ker(&self) -> BinaryRelation {
        self.compose_unchecked(&self.converse())
    }

    /// `{(x, y) : (u, x), (u, y) ∈ self for some u}`.
    pub fn coker(&self) -> BinaryRelation {
        self.converse().compose_unchecked(self)
    }

    pub fn rel_params(&self) -> RelParams {
        RelParams { dom: self.dom(), codom: self.codom(), ker: self.ker(), coker: self.coker() }
    }

    pub fn predicates(&self) -> RelPredicates {
        RelPredicates {
            injective: self.is_injective(),
            coinjective: self.is_coinjective(),
            surjective: self.codom().is_full(),
            cosurjective: self.dom().is_full(),
        }
    }

    /// The kernel is the trivial relation on the domain.
    pub fn is_injective(&self) -> bool {
        self.ker() == BinaryRelation::id_subset(&self.dom())
    }

    /// The cokernel is the trivial relation on the codomain, i.e. a partial function.
    pub fn is_coinjective(&self) -> bool {
        self.rows().iter().all(|r| r.count_ones() <= 1)
    }

    /// All `2^(n²)` relations of degree `n` in code order; `n ≤ 4`.
    pub fn all(degree: usize) -> impl Iterator<Item = BinaryRelation> {
        assert!(degree <= 4, "exhaustive enumeration is limited to degree 4");
        (0..1u64 << (degree * degree)).map(move |c| BinaryRelation::from_code(degree, c))
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.degree())?;
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl core::ops::Mul for BinaryRelation {
    type Output = BinaryRelation;

    fn mul(self, rhs: BinaryRelation) -> BinaryRelation {
        assert_eq!(self.degree, rhs.degree, "relation degrees differ");
        self.compose_unchecked(&rhs)
    }
}
