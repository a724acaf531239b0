//! Ehresmann and restriction structure of a finite semigroup relative to a semilattice `E`.

use alloc::format;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::green::{Classes, GreenStructure};
use crate::monoid::MulTable;
use crate::order::PartialOrder;

/// Up to this size the congruence sweeps range over every `θ`; above it, over generators.
pub const EXHAUSTIVE_SWEEP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A commuting, product-closed set of idempotents of a [`MulTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    members: Vec<u32>,
    position: HashMap<u32, u32>,
}

impl Semilattice {
    /// Validates and sorts `members`.
    pub fn new(s: &MulTable, members: &[u32]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x as usize >= s.size()) {
            return Err(Error::IndexOutOfRange { index: x, size: s.size() });
        }
        if let Some(&x) = members.iter().find(|&&x| !s.is_idempotent(x)) {
            return Err(Error::InvalidSemilattice(format!("element {x} is not idempotent")));
        }
        let position: HashMap<u32, u32> = members.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        for &a in &members {
            for &b in &members {
                let ab = s.mul(a, b);
                if ab != s.mul(b, a) {
                    return Err(Error::InvalidSemilattice(format!("elements {a} and {b} do not commute")));
                }
                if !position.contains_key(&ab) {
                    return Err(Error::InvalidSemilattice(format!("product of {a} and {b} leaves the set")));
                }
            }
        }
        Ok(Semilattice { members, position })
    }

    /// All idempotents, when they commute (as in an inverse semigroup).
    pub fn all_idempotents(s: &MulTable) -> Result<Self> {
        Semilattice::new(s, &s.idempotents())
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.position.contains_key(&x)
    }

    /// Position of `x` in the sorted member list.
    pub fn position(&self, x: u32) -> Option<usize> {
        self.position.get(&x).map(|&p| p as usize)
    }
}

/// `E_L(x) = {e ∈ E : ex = x}`.
pub fn e_left(s: &MulTable, e: &Semilattice, x: u32) -> Vec<u32> {
    e.members().iter().copied().filter(|&f| s.mul(f, x) == x).collect()
}

/// `E_R(x) = {e ∈ E : xe = x}`.
pub fn e_right(s: &MulTable, e: &Semilattice, x: u32) -> Vec<u32> {
    e.members().iter().copied().filter(|&f| s.mul(x, f) == x).collect()
}

fn identity_set(s: &MulTable, e: &Semilattice, x: u32, side: Side) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(e.len());
    for (i, &f) in e.members().iter().enumerate() {
        let fixes = match side {
            Side::Left => s.mul(f, x) == x,
            Side::Right => s.mul(x, f) == x,
        };
        if fixes {
            set.insert(i);
        }
    }
    set
}

/// `R̃_E` for [`Side::Left`] (equal left identity sets), `L̃_E` for [`Side::Right`].
pub fn tilde_classes(s: &MulTable, e: &Semilattice, side: Side) -> Classes {
    let mut ids: HashMap<FixedBitSet, u32> = HashMap::new();
    let labels: Vec<u32> = (0..s.size() as u32)
        .map(|x| {
            let key = identity_set(s, e, x, side);
            let next = ids.len() as u32;
            *ids.entry(key).or_insert(next)
        })
        .collect();
    Classes::from_labels(&labels)
}

/// `H̃_E = R̃_E ∩ L̃_E`.
pub fn tilde_h(r: &Classes, l: &Classes) -> Classes {
    let lc = l.count() as u32;
    let labels: Vec<u32> = (0..r.labels().len() as u32).map(|x| r.class_of(x) * lc + l.class_of(x)).collect();
    Classes::from_labels(&labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    L1,
    L2,
    R1,
    R2,
    L3,
    R3,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::L1, Axiom::L2, Axiom::R1, Axiom::R2, Axiom::L3, Axiom::R3];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::L1 => "L1",
            Axiom::L2 => "L2",
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::L3 => "L3",
            Axiom::R3 => "R3",
        }
    }

    pub fn side(self) -> Side {
        match self {
            Axiom::L1 | Axiom::L2 | Axiom::L3 => Side::Left,
            Axiom::R1 | Axiom::R2 | Axiom::R3 => Side::Right,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Evidence that an axiom fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The tilde-class of `element` holds `count ≠ 1` members of `E`.
    ClassCount { element: u32, count: usize },
    /// `a` and `b` are tilde-related but `θa`, `θb` (or `aθ`, `bθ` on the right) are not.
    Congruence { theta: u32, a: u32, b: u32 },
    /// `xe ∉ Ex` (left), or `ex ∉ xE` (right).
    Containment { x: u32, e: u32 },
}

impl Witness {
    /// Re-derives the failure from identity sets alone.
    pub fn verify(&self, axiom: Axiom, s: &MulTable, e: &Semilattice) -> bool {
        let side = axiom.side();
        let idset = |x: u32| match side {
            Side::Left => e_left(s, e, x),
            Side::Right => e_right(s, e, x),
        };
        match (*self, axiom) {
            (Witness::ClassCount { element, count }, Axiom::L1 | Axiom::R1) => {
                let key = idset(element);
                let found = e.members().iter().filter(|&&f| idset(f) == key).count();
                found == count && count != 1
            }
            (Witness::Congruence { theta, a, b }, Axiom::L2 | Axiom::R2) => {
                let act = |x: u32| match side {
                    Side::Left => s.mul(theta, x),
                    Side::Right => s.mul(x, theta),
                };
                idset(a) == idset(b) && idset(act(a)) != idset(act(b))
            }
            (Witness::Containment { x, e: f }, Axiom::L3) => {
                let xf = s.mul(x, f);
                !e.members().iter().any(|&g| s.mul(g, x) == xf)
            }
            (Witness::Containment { x, e: f }, Axiom::R3) => {
                let fx = s.mul(f, x);
                !e.members().iter().any(|&g| s.mul(x, g) == fx)
            }
            _ => false,
        }
    }
}

/// Which `θ` the congruence sweeps ranged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Generators,
}

impl SweepMode {
    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Exhaustive => "exhaustive",
            SweepMode::Generators => "generators",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EhresmannReport {
    holds: [bool; 6],
    witnesses: [Option<Witness>; 6],
    pub r_tilde: Classes,
    pub l_tilde: Classes,
    pub h_tilde: Classes,
    /// `x ↦ x⁺`, present iff L1 holds.
    pub plus: Option<Vec<u32>>,
    /// `x ↦ x*`, present iff R1 holds.
    pub star: Option<Vec<u32>>,
    pub sweep: SweepMode,
}

impl EhresmannReport {
    pub fn holds(&self, axiom: Axiom) -> bool {
        self.holds[axiom.slot()]
    }

    pub fn witness(&self, axiom: Axiom) -> Option<Witness> {
        self.witnesses[axiom.slot()]
    }

    pub fn is_left_ehresmann(&self) -> bool {
        self.holds(Axiom::L1) && self.holds(Axiom::L2)
    }

    pub fn is_right_ehresmann(&self) -> bool {
        self.holds(Axiom::R1) && self.holds(Axiom::R2)
    }

    pub fn is_ehresmann(&self) -> bool {
        self.is_left_ehresmann() && self.is_right_ehresmann()
    }

    /// Ehresmann together with L3.
    pub fn is_left_restriction(&self) -> bool {
        self.is_ehresmann() && self.holds(Axiom::L3)
    }

    pub fn is_right_restriction(&self) -> bool {
        self.is_ehresmann() && self.holds(Axiom::R3)
    }

    pub fn is_restriction(&self) -> bool {
        self.is_left_restriction() && self.holds(Axiom::R3)
    }

    pub fn plus(&self) -> Result<&[u32]> {
        self.plus.as_deref().ok_or_else(|| Error::State("x⁺ needs L1".into()))
    }

    pub fn star(&self) -> Result<&[u32]> {
        self.star.as_deref().ok_or_else(|| Error::State("x* needs R1".into()))
    }

    /// Re-verifies every stored witness.
    pub fn witnesses_verify(&self, s: &MulTable, e: &Semilattice) -> bool {
        Axiom::ALL.iter().all(|&a| match self.witness(a) {
            Some(w) => !self.holds(a) && w.verify(a, s, e),
            None => self.holds(a),
        })
    }
}

/// L1/R1: each tilde-class holds one member of `E`; returns the representative map or a witness.
fn unique_representatives(s: &MulTable, e: &Semilattice, classes: &Classes) -> Result<Vec<u32>, Witness> {
    let mut rep = alloc::vec![u32::MAX; classes.count()];
    let mut count = alloc::vec![0usize; classes.count()];
    for &f in e.members() {
        let c = classes.class_of(f) as usize;
        count[c] += 1;
        rep[c] = f;
    }
    let bad = (0..s.size() as u32).find(|&x| count[classes.class_of(x) as usize] != 1);
    match bad {
        Some(x) => Err(Witness::ClassCount { element: x, count: count[classes.class_of(x) as usize] }),
        None => Ok((0..s.size() as u32).map(|x| rep[classes.class_of(x) as usize]).collect()),
    }
}

/// L2/R2: minimal `(θ, a, b)` with `a < b` tilde-related and their translates not.
fn congruence_witness(s: &MulTable, classes: &Classes, thetas: &[u32], side: Side) -> Option<Witness> {
    let n = s.size() as u32;
    let act = |t: u32, x: u32| match side {
        Side::Left => s.mul(t, x),
        Side::Right => s.mul(x, t),
    };
    for &theta in thetas {
        // Image class of the first member seen in each class.
        let mut image = alloc::vec![u32::MAX; classes.count()];
        let mut failing = false;
        for x in 0..n {
            let c = classes.class_of(x) as usize;
            let img = classes.class_of(act(theta, x));
            if image[c] == u32::MAX {
                image[c] = img;
            } else if image[c] != img {
                failing = true;
                break;
            }
        }
        if !failing {
            continue;
        }
        for a in 0..n {
            let ia = classes.class_of(act(theta, a));
            let b = (a + 1..n).find(|&b| classes.related(a, b) && classes.class_of(act(theta, b)) != ia);
            if let Some(b) = b {
                return Some(Witness::Congruence { theta, a, b });
            }
        }
    }
    None
}

/// L3 (`xE ⊆ Ex`) on the left, R3 (`Ex ⊆ xE`) on the right; minimal `(x, e)` failure.
fn containment_witness(s: &MulTable, e: &Semilattice, side: Side) -> Option<Witness> {
    let n = s.size();
    let mut orbit = FixedBitSet::with_capacity(n);
    for x in 0..n as u32 {
        orbit.clear();
        for &g in e.members() {
            let v = match side {
                Side::Left => s.mul(g, x),
                Side::Right => s.mul(x, g),
            };
            orbit.insert(v as usize);
        }
        for &f in e.members() {
            let v = match side {
                Side::Left => s.mul(x, f),
                Side::Right => s.mul(f, x),
            };
            if !orbit.contains(v as usize) {
                return Some(Witness::Containment { x, e: f });
            }
        }
    }
    None
}

/// Checks L1, L2, R1, R2, L3, R3 definitionally.
pub fn check_axioms(s: &MulTable, e: &Semilattice) -> EhresmannReport {
    let r_tilde = tilde_classes(s, e, Side::Left);
    let l_tilde = tilde_classes(s, e, Side::Right);
    let h_tilde = tilde_h(&r_tilde, &l_tilde);

    let (sweep, thetas): (SweepMode, Vec<u32>) = if s.size() <= EXHAUSTIVE_SWEEP {
        (SweepMode::Exhaustive, (0..s.size() as u32).collect())
    } else {
        let mut g = s.generators().to_vec();
        g.sort_unstable();
        (SweepMode::Generators, g)
    };

    let mut witnesses = [None; 6];
    let plus = unique_representatives(s, e, &r_tilde).map_err(|w| witnesses[Axiom::L1.slot()] = Some(w)).ok();
    let star = unique_representatives(s, e, &l_tilde).map_err(|w| witnesses[Axiom::R1.slot()] = Some(w)).ok();
    witnesses[Axiom::L2.slot()] = congruence_witness(s, &r_tilde, &thetas, Side::Left);
    witnesses[Axiom::R2.slot()] = congruence_witness(s, &l_tilde, &thetas, Side::Right);
    witnesses[Axiom::L3.slot()] = containment_witness(s, e, Side::Left);
    witnesses[Axiom::R3.slot()] = containment_witness(s, e, Side::Right);

    let holds = witnesses.map(|w| w.is_none());
    EhresmannReport { holds, witnesses, r_tilde, l_tilde, h_tilde, plus, star, sweep }
}

/// With L3: `xe = (xe)⁺x` for all `x ∈ S`, `e ∈ E`.
pub fn l3_prime_holds(s: &MulTable, e: &Semilattice, plus: &[u32]) -> bool {
    (0..s.size() as u32).all(|x| {
        e.members().iter().all(|&f| {
            let xf = s.mul(x, f);
            xf == s.mul(plus[xf as usize], x)
        })
    })
}

/// With R3: `ex = x(ex)*`.
pub fn r3_prime_holds(s: &MulTable, e: &Semilattice, star: &[u32]) -> bool {
    (0..s.size() as u32).all(|x| {
        e.members().iter().all(|&f| {
            let fx = s.mul(f, x);
            fx == s.mul(x, star[fx as usize])
        })
    })
}

/// The largest left, right and two-sided restriction subsemigroups as index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestSets {
    /// `{x : xE ⊆ Ex}`
    pub left: Vec<u32>,
    /// `{x : Ex ⊆ xE}`
    pub right: Vec<u32>,
    pub both: Vec<u32>,
}

/// Whether `xE ⊆ Ex` (left) or `Ex ⊆ xE` (right) for the single element `x`.
pub fn satisfies_containment(s: &MulTable, e: &Semilattice, x: u32, side: Side) -> bool {
    e.members().iter().all(|&f| {
        let target = match side {
            Side::Left => s.mul(x, f),
            Side::Right => s.mul(f, x),
        };
        e.members().iter().any(|&g| {
            let v = match side {
                Side::Left => s.mul(g, x),
                Side::Right => s.mul(x, g),
            };
            v == target
        })
    })
}

pub fn rest_subsemigroups(s: &MulTable, e: &Semilattice) -> RestSets {
    let n = s.size() as u32;
    let left: Vec<u32> = (0..n).filter(|&x| satisfies_containment(s, e, x, Side::Left)).collect();
    let right: Vec<u32> = (0..n).filter(|&x| satisfies_containment(s, e, x, Side::Right)).collect();
    let both = left.iter().copied().filter(|x| right.binary_search(x).is_ok()).collect();
    RestSets { left, right, both }
}

/// `{x : x R e and x L f for some e, f ∈ E}`, using Green's relations.
pub fn reg_e(s: &MulTable, e: &Semilattice, green: &GreenStructure) -> Vec<u32> {
    let mut r_hit = FixedBitSet::with_capacity(green.r.count());
    let mut l_hit = FixedBitSet::with_capacity(green.l.count());
    for &f in e.members() {
        r_hit.insert(green.r.class_of(f) as usize);
        l_hit.insert(green.l.class_of(f) as usize);
    }
    (0..s.size() as u32)
        .filter(|&x| r_hit.contains(green.r.class_of(x) as usize) && l_hit.contains(green.l.class_of(x) as usize))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeHClass {
    pub members: Vec<u32>,
    pub closed: bool,
    /// Minimal `(a, b)` with `ab` outside the class, when not closed.
    pub witness: Option<(u32, u32)>,
}

/// The `H̃_E`-class of `idem ∈ E`, with a closure check.
pub fn tilde_h_class(s: &MulTable, e: &Semilattice, idem: u32) -> Result<TildeHClass> {
    if !e.contains(idem) {
        return Err(Error::State(format!("element {idem} is not in the semilattice")));
    }
    let (kl, kr) = (identity_set(s, e, idem, Side::Left), identity_set(s, e, idem, Side::Right));
    let members: Vec<u32> = (0..s.size() as u32)
        .filter(|&x| identity_set(s, e, x, Side::Left) == kl && identity_set(s, e, x, Side::Right) == kr)
        .collect();
    let witness = members.iter().find_map(|&a| {
        members.iter().find(|&&b| members.binary_search(&s.mul(a, b)).is_err()).map(|&b| (a, b))
    });
    Ok(TildeHClass { closed: witness.is_none(), members, witness })
}

fn orbit_order(s: &MulTable, e: &Semilattice, side: Side) -> PartialOrder {
    let n = s.size();
    let below = (0..n as u32)
        .map(|y| {
            let mut set = FixedBitSet::with_capacity(n);
            for &f in e.members() {
                let v = match side {
                    Side::Left => s.mul(f, y),
                    Side::Right => s.mul(y, f),
                };
                set.insert(v as usize);
            }
            set.insert(y as usize);
            set
        })
        .collect();
    PartialOrder::from_down_sets(below)
}

/// `x ≤_r y ⟺ x ∈ Ey`; requires the left Ehresmann axioms.
pub fn leq_r(s: &MulTable, e: &Semilattice, report: &EhresmannReport) -> Result<PartialOrder> {
    if !report.is_left_ehresmann() {
        return Err(Error::State("≤_r needs L1 and L2".into()));
    }
    Ok(orbit_order(s, e, Side::Left))
}

/// `x ≤_l y ⟺ x ∈ yE`; requires the right Ehresmann axioms.
pub fn leq_l(s: &MulTable, e: &Semilattice, report: &EhresmannReport) -> Result<PartialOrder> {
    if !report.is_right_ehresmann() {
        return Err(Error::State("≤_l needs R1 and R2".into()));
    }
    Ok(orbit_order(s, e, Side::Right))
}

fn require_identity(s: &MulTable, e: &Semilattice) -> Result<()> {
    match s.identity() {
        Some(one) if e.contains(one) => Ok(()),
        _ => Err(Error::State("the semilattice must contain the identity".into())),
    }
}

/// `x ∈ Ey` with no Ehresmann hypothesis; a partial order once `1 ∈ E`.
pub fn leq_r_prime(s: &MulTable, e: &Semilattice) -> Result<PartialOrder> {
    require_identity(s, e)?;
    Ok(orbit_order(s, e, Side::Left))
}

/// `x ∈ yE`, dual to [`leq_r_prime`].
pub fn leq_l_prime(s: &MulTable, e: &Semilattice) -> Result<PartialOrder> {
    require_identity(s, e)?;
    Ok(orbit_order(s, e, Side::Right))
}
