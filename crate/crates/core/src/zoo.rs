//! Named monoid families, their semilattices, and the rook embedding.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::ehresmann::Semilattice;
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, MulTable, DEFAULT_CAP};
use crate::partition::{Partition, SetPartition, Subset};
use crate::relation::BinaryRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All partitions.
    P,
    /// Brauer: every block has size 2.
    B,
    /// Partial Brauer: every block has size at most 2.
    PB,
    /// Rook partitions, as partitions of degree `n+1` with `n+1` and `(n+1)'` in one block.
    RP,
    /// `ker = coker = Δ`.
    I,
    /// `dom = codom = X`.
    J,
    /// `dom = X`, `coker = Δ`.
    T,
    /// Partial transformations as coinjective relations.
    PT,
    /// `dom = X`.
    Pfd,
    /// `codom = X`.
    Pfcd,
    /// `ker = ∇`.
    Pfk,
    /// `dom = X` or `ker = ∇`.
    RR,
    /// `codom = X` or `coker = ∇`.
    LL,
    /// Rook block bijections: `RP_n ∩ J_{n+1}`.
    RJ,
    /// All binary relations.
    BX,
    /// `dom = ∅`, `ker = ∇`.
    D0,
    /// `dom = X`, `ker = ∇`.
    D1,
}

impl Family {
    pub const ALL: [Family; 17] = [
        Family::P,
        Family::B,
        Family::PB,
        Family::RP,
        Family::I,
        Family::J,
        Family::T,
        Family::PT,
        Family::Pfd,
        Family::Pfcd,
        Family::Pfk,
        Family::RR,
        Family::LL,
        Family::RJ,
        Family::BX,
        Family::D0,
        Family::D1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::P => "P",
            Family::B => "B",
            Family::PB => "PB",
            Family::RP => "RP",
            Family::I => "I",
            Family::J => "J",
            Family::T => "T",
            Family::PT => "PT",
            Family::Pfd => "Pfd",
            Family::Pfcd => "Pfcd",
            Family::Pfk => "Pfk",
            Family::RR => "RR",
            Family::LL => "LL",
            Family::RJ => "RJ",
            Family::BX => "BX_relations",
            Family::D0 => "D0",
            Family::D1 => "D1",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        if name == "BX" {
            return Ok(Family::BX);
        }
        Family::ALL.iter().copied().find(|f| f.name() == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Elements are binary relations rather than partitions.
    pub fn is_relational(self) -> bool {
        matches!(self, Family::PT | Family::BX)
    }

    /// Elements are partitions of degree `n+1`.
    pub fn is_rook(self) -> bool {
        matches!(self, Family::RP | Family::RJ)
    }

    /// Largest degree for which the full table is built.
    pub fn max_degree(self) -> usize {
        match self {
            Family::PB | Family::RP | Family::RJ | Family::BX => 3,
            _ => 4,
        }
    }

    /// Membership of a partition of the ambient degree.
    pub fn contains_partition(self, p: &Partition) -> bool {
        let full = |s: Subset| s.is_full();
        match self {
            Family::P => true,
            Family::B => p.is_brauer(),
            Family::PB => p.is_partial_brauer(),
            Family::RP => is_rook(p),
            Family::I => p.ker().is_discrete() && p.coker().is_discrete(),
            Family::J => full(p.dom()) && full(p.codom()),
            Family::T => full(p.dom()) && p.coker().is_discrete(),
            Family::Pfd => full(p.dom()),
            Family::Pfcd => full(p.codom()),
            Family::Pfk => p.ker().is_universal(),
            Family::RR => full(p.dom()) || p.ker().is_universal(),
            Family::LL => full(p.codom()) || p.coker().is_universal(),
            Family::RJ => is_rook(p) && full(p.dom()) && full(p.codom()),
            Family::D0 => p.dom().is_empty() && p.ker().is_universal(),
            Family::D1 => full(p.dom()) && p.ker().is_universal(),
            Family::PT | Family::BX => false,
        }
    }

    pub fn contains_relation(self, r: &BinaryRelation) -> bool {
        match self {
            Family::PT => r.is_coinjective(),
            Family::BX => true,
            _ => false,
        }
    }
}

fn is_rook(p: &Partition) -> bool {
    let n = p.degree();
    n > 0 && p.upper_label(n - 1) == p.lower_label(n - 1)
}

/// A family at a degree, written `<family><n>` (e.g. `RR4`, `D03`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub degree: usize,
}

impl FamilySpec {
    pub fn new(family: Family, degree: usize) -> Self {
        FamilySpec { family, degree }
    }

    pub fn parse(text: &str) -> Result<FamilySpec> {
        // Longest family name that leaves a non-empty run of digits.
        let mut best: Option<FamilySpec> = None;
        let names = Family::ALL.iter().map(|&f| (f, f.name())).chain(core::iter::once((Family::BX, "BX")));
        for (family, name) in names {
            let Some(rest) = text.strip_prefix(name) else { continue };
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                continue;
            }
            let Ok(degree) = rest.parse::<usize>() else { continue };
            if best.map_or(true, |b| b.family.name().len() < name.len()) {
                best = Some(FamilySpec { family, degree });
            }
        }
        best.ok_or_else(|| Error::UnknownName(text.to_string()))
    }

    /// Degree of the underlying diagrams: `n+1` for rook families.
    pub fn ambient_degree(&self) -> usize {
        if self.family.is_rook() {
            self.degree + 1
        } else {
            self.degree
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.name(), self.degree)
    }
}

/// A built family: a table plus its concrete elements.
#[derive(Debug, Clone)]
pub enum Built {
    Partitions(FiniteMonoid<Partition>),
    Relations(FiniteMonoid<BinaryRelation>),
}

impl Built {
    pub fn table(&self) -> &MulTable {
        match self {
            Built::Partitions(m) => m.table(),
            Built::Relations(m) => m.table(),
        }
    }

    pub fn size(&self) -> usize {
        self.table().size()
    }

    pub fn partitions(&self) -> Option<&FiniteMonoid<Partition>> {
        match self {
            Built::Partitions(m) => Some(m),
            Built::Relations(_) => None,
        }
    }

    pub fn relations(&self) -> Option<&FiniteMonoid<BinaryRelation>> {
        match self {
            Built::Relations(m) => Some(m),
            Built::Partitions(_) => None,
        }
    }
}

fn check_cap(spec: &FamilySpec) -> Result<()> {
    let max = spec.family.max_degree();
    if spec.degree > max {
        return Err(Error::DegreeTooLarge { degree: spec.degree, max });
    }
    Ok(())
}

/// Elements of a partition family, filtered from all partitions of the ambient degree.
pub fn partition_members(spec: &FamilySpec) -> Result<Vec<Partition>> {
    if spec.family.is_relational() {
        return Err(Error::State(format!("{spec} is a relation family")));
    }
    check_cap(spec)?;
    Ok(Partition::all(spec.ambient_degree()).filter(|p| spec.family.contains_partition(p)).collect())
}

/// Elements of a relation family, filtered from all relations.
pub fn relation_members(spec: &FamilySpec) -> Result<Vec<BinaryRelation>> {
    if !spec.family.is_relational() {
        return Err(Error::State(format!("{spec} is a partition family")));
    }
    check_cap(spec)?;
    Ok(BinaryRelation::all(spec.degree).filter(|r| spec.family.contains_relation(r)).collect())
}

/// Filters the family out of its universe, tabulates it and thereby checks closure.
pub fn build(spec: &FamilySpec) -> Result<Built> {
    if spec.family.is_relational() {
        Ok(Built::Relations(FiniteMonoid::from_elements(relation_members(spec)?, DEFAULT_CAP)?))
    } else {
        Ok(Built::Partitions(FiniteMonoid::from_elements(partition_members(spec)?, DEFAULT_CAP)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemilatticeKind {
    /// `E(I_X) = {id_A}`.
    E,
    /// `E(J_X) = {id_ε}`.
    F,
    /// `E(J_Y)` for `Y = X ∪ {∞}`, inside rook families.
    G,
}

impl SemilatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            SemilatticeKind::E => "E",
            SemilatticeKind::F => "F",
            SemilatticeKind::G => "G",
        }
    }

    pub fn from_name(name: &str) -> Result<SemilatticeKind> {
        match name {
            "E" | "E_of_I" => Ok(SemilatticeKind::E),
            "F" | "F_of_J" => Ok(SemilatticeKind::F),
            "G" | "G_rook" => Ok(SemilatticeKind::G),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }
}

/// Adds the block `{∞, ∞'}` as vertex `n+1`: the copy of `P_n` inside `RP_n`.
pub fn lift(p: &Partition) -> Partition {
    let n = p.degree();
    let mut blocks = p.signed_blocks();
    let inf = (n + 1) as i32;
    blocks.push(alloc::vec![inf, -inf]);
    Partition::from_blocks(n + 1, &blocks).expect("lifted blocks are valid")
}

/// The concrete elements of a semilattice kind for a family.
pub fn semilattice_elements(kind: SemilatticeKind, spec: &FamilySpec) -> Result<SemilatticeCandidates> {
    let n = spec.degree;
    let rook = spec.family.is_rook();
    match (kind, spec.family.is_relational()) {
        (SemilatticeKind::E, true) => {
            Ok(SemilatticeCandidates::Relations(Subset::all(n).map(|a| BinaryRelation::id_subset(&a)).collect()))
        }
        (_, true) => Err(Error::InvalidSemilattice(format!("{} is not defined for relation family {spec}", kind.name()))),
        (SemilatticeKind::E, false) => {
            let base = Subset::all(n).map(|a| Partition::id_subset(&a));
            Ok(SemilatticeCandidates::Partitions(if rook { base.map(|p| lift(&p)).collect() } else { base.collect() }))
        }
        (SemilatticeKind::F, false) => {
            let base = SetPartition::all(n).map(|e| Partition::id_equiv(&e));
            Ok(SemilatticeCandidates::Partitions(if rook { base.map(|p| lift(&p)).collect() } else { base.collect() }))
        }
        (SemilatticeKind::G, false) if rook => {
            Ok(SemilatticeCandidates::Partitions(SetPartition::all(n + 1).map(|e| Partition::id_equiv(&e)).collect()))
        }
        (SemilatticeKind::G, false) => {
            Err(Error::InvalidSemilattice(format!("G is only defined for rook families, not {spec}")))
        }
    }
}

#[derive(Debug, Clone)]
pub enum SemilatticeCandidates {
    Partitions(Vec<Partition>),
    Relations(Vec<BinaryRelation>),
}

/// The semilattice of `kind` inside a built family, validated.
pub fn semilattice(kind: SemilatticeKind, spec: &FamilySpec, built: &Built) -> Result<Semilattice> {
    let missing = || Error::InvalidSemilattice(format!("{} is not contained in {spec}", kind.name()));
    let indices: Vec<u32> = match (semilattice_elements(kind, spec)?, built) {
        (SemilatticeCandidates::Partitions(xs), Built::Partitions(m)) => {
            xs.iter().map(|x| m.index_of(x).ok_or_else(missing)).collect::<Result<_>>()?
        }
        (SemilatticeCandidates::Relations(xs), Built::Relations(m)) => {
            xs.iter().map(|x| m.index_of(x).ok_or_else(missing)).collect::<Result<_>>()?
        }
        _ => return Err(missing()),
    };
    Semilattice::new(built.table(), &indices)
}

/// A rook partition of degree `n`: ordinary blocks plus the rook dots joined to `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookDiagram {
    pub degree: usize,
    /// Signed 1-based vertices, sorted as in [`Partition::signed_blocks`].
    pub blocks: Vec<Vec<i32>>,
    /// Signed vertices sharing the block of `∞` and `∞'`.
    pub dots: Vec<i32>,
}

/// The partition of degree `n+1` represented by a rook diagram.
pub fn rook_embed(r: &RookDiagram) -> Result<Partition> {
    if let Some(&v) = r.blocks.iter().flatten().chain(r.dots.iter()).find(|v| v.unsigned_abs() as usize > r.degree) {
        return Err(Error::VertexOutOfRange { vertex: v as i64, degree: r.degree });
    }
    let inf = (r.degree + 1) as i32;
    let mut blocks = r.blocks.clone();
    let mut dotted = r.dots.clone();
    dotted.extend([inf, -inf]);
    blocks.push(dotted);
    Partition::from_blocks(r.degree + 1, &blocks)
}

/// Reads a partition of degree `n+1` as a rook diagram of degree `n`.
pub fn rook_view(p: &Partition) -> Result<RookDiagram> {
    if !is_rook(p) {
        return Err(Error::State("∞ and ∞' lie in different blocks".into()));
    }
    let n = p.degree() - 1;
    let inf = (n + 1) as i32;
    let mut blocks = Vec::new();
    let mut dots = Vec::new();
    for b in p.signed_blocks() {
        if b.contains(&inf) {
            dots.extend(b.into_iter().filter(|v| v.abs() != inf));
        } else {
            blocks.push(b);
        }
    }
    dots.sort_by_key(|&v| (v < 0, v.abs()));
    Ok(RookDiagram { degree: n, blocks, dots })
}

/// `P_n ↪ RP_n ↪ P_{n+1}` with both maps as index arrays.
#[derive(Debug, Clone)]
pub struct Tower {
    pub p: FiniteMonoid<Partition>,
    pub rp: FiniteMonoid<Partition>,
    pub p_next: FiniteMonoid<Partition>,
    pub p_to_rp: Vec<u32>,
    pub rp_to_p_next: Vec<u32>,
}

pub fn tower(n: usize) -> Result<Tower> {
    let take = |b: Built| match b {
        Built::Partitions(m) => m,
        Built::Relations(_) => unreachable!("partition family"),
    };
    let p = take(build(&FamilySpec::new(Family::P, n))?);
    let rp = take(build(&FamilySpec::new(Family::RP, n))?);
    let p_next = take(build(&FamilySpec::new(Family::P, n + 1))?);
    let p_to_rp = p.elements().iter().map(|x| rp.index_of(&lift(x)).ok_or_else(|| Error::State("lift left RP_n".into()))).collect::<Result<_>>()?;
    let rp_to_p_next = rp.elements().iter().map(|x| p_next.index_of(x).expect("rook partitions live in P_{n+1}")).collect();
    Ok(Tower { p, rp, p_next, p_to_rp, rp_to_p_next })
}

/// `(θ, α, β)` as used in congruence witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub theta: Partition,
    pub alpha: Partition,
    pub beta: Partition,
}

/// Fixed elements referenced across the verification suites.
#[derive(Debug, Clone)]
pub struct WitnessSets {
    /// The pair of degree-6 partitions of the worked multiplication example.
    pub albe: (Partition, Partition),
    /// Their product as stated.
    pub albe_product: Partition,
    /// Degree 2: `E` fails L2 and R2 on these.
    pub not_e: Triple,
    /// Rook partitions of `RP_2` (degree 3): `R̃_F` is not a left congruence.
    pub rp2: Triple,
    /// Degree 3: both in the `H̃_E`-class of the identity, product outside it; third entry is the product.
    pub r_e: (Partition, Partition, Partition),
}

fn blocks(n: usize, bs: &[&[i32]]) -> Partition {
    Partition::from_blocks(n, bs).expect("fixed witness is valid")
}

pub fn witness_sets() -> WitnessSets {
    WitnessSets {
        albe: (
            blocks(6, &[&[1, 4], &[2, 3, -4, -5], &[5, 6], &[-1, -2, -6], &[-3]]),
            blocks(6, &[&[1, 2], &[3, 4, -1], &[5, -4, -5, -6], &[6], &[-2], &[-3]]),
        ),
        albe_product: blocks(6, &[&[1, 4], &[2, 3, -1, -4, -5, -6], &[5, 6], &[-2], &[-3]]),
        not_e: Triple {
            theta: blocks(2, &[&[1, -1], &[2], &[-2]]),
            alpha: blocks(2, &[&[1, 2], &[-1, -2]]),
            beta: Partition::identity(2),
        },
        rp2: Triple {
            theta: blocks(3, &[&[2, -2], &[1, -1, 3, -3]]),
            alpha: blocks(3, &[&[1, -1], &[2, -2, 3, -3]]),
            beta: Partition::identity(3),
        },
        r_e: (
            blocks(3, &[&[1, -1, -2], &[2, 3, -3]]),
            blocks(3, &[&[1, 2], &[3, -3], &[-1, -2]]),
            blocks(3, &[&[1], &[2, 3, -3], &[-1, -2]]),
        ),
    }
}

/// `id_∇`: the single block `X ∪ X'`.
pub fn id_nabla(n: usize) -> Partition {
    Partition::id_equiv(&SetPartition::universal(n))
}

/// Human-readable list of family names for error messages.
pub fn family_names() -> String {
    Family::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(FamilySpec::parse("RR4").unwrap(), FamilySpec::new(Family::RR, 4));
        assert_eq!(FamilySpec::parse("D03").unwrap(), FamilySpec::new(Family::D0, 3));
        assert_eq!(FamilySpec::parse("P0").unwrap(), FamilySpec::new(Family::P, 0));
        assert_eq!(FamilySpec::parse("BX_relations2").unwrap(), FamilySpec::new(Family::BX, 2));
        assert_eq!(FamilySpec::parse("BX2").unwrap(), FamilySpec::new(Family::BX, 2));
        assert_eq!(FamilySpec::parse("Pfcd3").unwrap().family, Family::Pfcd);
        assert!(FamilySpec::parse("Q3").is_err());
        assert!(FamilySpec::parse("P").is_err());
        assert_eq!(FamilySpec::new(Family::D1, 2).to_string(), "D12");
    }

    #[test]
    fn small_sizes() {
        let size = |t: &str| build(&FamilySpec::parse(t).unwrap()).unwrap().size();
        assert_eq!(size("P2"), 15);
        assert_eq!(size("J2"), 3);
        assert_eq!(size("I2"), 7);
        assert_eq!(size("Pfd2"), 5);
        assert_eq!(size("RR2"), 7);
        assert_eq!(size("P0"), 1);
        assert_eq!(size("PT2"), 9);
        assert!(matches!(build(&FamilySpec::parse("P5").unwrap()), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn rook_round_trip() {
        let w = witness_sets();
        let view = rook_view(&w.rp2.alpha).unwrap();
        assert_eq!(view.dots, alloc::vec![2, -2]);
        assert_eq!(rook_embed(&view).unwrap(), w.rp2.alpha);
        assert!(rook_view(&Partition::zeta(2)).is_err());
        let plain = RookDiagram { degree: 2, blocks: alloc::vec![alloc::vec![1, -1], alloc::vec![2, -2]], dots: Vec::new() };
        assert_eq!(rook_embed(&plain).unwrap(), Partition::identity(3));
    }

    #[test]
    fn semilattice_sizes() {
        let spec = FamilySpec::parse("RP2").unwrap();
        let rp = build(&spec).unwrap();
        assert_eq!(semilattice(SemilatticeKind::G, &spec, &rp).unwrap().len(), 5);
        assert_eq!(semilattice(SemilatticeKind::F, &spec, &rp).unwrap().len(), 2);
        let pfd = FamilySpec::parse("Pfd2").unwrap();
        assert!(semilattice(SemilatticeKind::E, &pfd, &build(&pfd).unwrap()).is_err());
    }
}
