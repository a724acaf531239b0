//! Verification suites run by `diagmon verify`.
//!
//! Checks are grouped under the labels `2`–`5` accepted on the command line.
//! Each check runs over a degree range capped by `--nmax`; closed-form counts
//! used as oracles live in [`counts`].

use std::collections::BTreeSet;
use std::time::Instant;

use diagmon_core::category::{check_semisimple_quotient, verify_stein, EhresmannCategory};
use diagmon_core::ehresmann::{
    self, check_axioms, e_left, e_right, leq_l, leq_r, leq_r_prime, rest_subsemigroups, satisfies_containment,
    tilde_classes, tilde_h_class, Axiom, Semilattice, Side, SweepMode, Witness,
};
use diagmon_core::green::{self, eggbox, minimal_ideal, GreenStructure};
use diagmon_core::monoid::check_embedding;
use diagmon_core::zoo::{self, build, semilattice, witness_sets, Built, Family, FamilySpec, SemilatticeKind};
use diagmon_core::{BinaryRelation, FiniteMonoid, MulTable, Partition, SetPartition, Subset};
use rayon::prelude::*;

use crate::dot::{count_clusters, eggbox_dot};

/// Closed-form sizes.
pub mod counts {
    pub fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    pub fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    /// `(2k−1)!!`, with the empty product for `k = 0`.
    pub fn odd_double_factorial(k: u64) -> u64 {
        (1..=k).map(|i| 2 * i - 1).product()
    }

    /// Bell numbers from the Bell triangle.
    pub fn bell(n: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            row = next;
        }
        row[0]
    }

    pub fn stirling2(n: u64, k: u64) -> u64 {
        match (n, k) {
            (0, 0) => 1,
            (0, _) | (_, 0) => 0,
            _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
        }
    }

    pub fn symmetric_inverse(n: u64) -> u64 {
        (0..=n).map(|k| binomial(n, k).pow(2) * factorial(k)).sum()
    }

    pub fn dual_symmetric_inverse(n: u64) -> u64 {
        (0..=n).map(|k| stirling2(n, k).pow(2) * factorial(k)).sum()
    }

    /// Partial matchings of `2n` points.
    pub fn partial_brauer(n: u64) -> u64 {
        (0..=n).map(|k| binomial(2 * n, 2 * k) * odd_double_factorial(k)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Group {
    General,
    Relations,
    Partitions,
    Diagrams,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::General, Group::Relations, Group::Partitions, Group::Diagrams];

    pub fn label(self) -> &'static str {
        match self {
            Group::General => "2",
            Group::Relations => "3",
            Group::Partitions => "4",
            Group::Diagrams => "5",
        }
    }

    pub fn from_label(s: &str) -> Option<Vec<Group>> {
        match s {
            "all" => Some(Group::ALL.to_vec()),
            _ => Group::ALL.iter().find(|g| g.label() == s).map(|&g| vec![g]),
        }
    }
}

/// Exhaustive checks default to `n ≤ 3`, structure-only checks to `n ≤ 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Structure,
}

impl Scope {
    pub fn default_nmax(self) -> usize {
        match self {
            Scope::Exhaustive => 3,
            Scope::Structure => 4,
        }
    }
}

pub struct Check {
    pub group: Group,
    pub name: &'static str,
    pub scope: Scope,
    pub min: usize,
    pub max: usize,
    run: fn(usize) -> Outcome,
}

type Outcome = Result<(), String>;

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub group: Group,
    pub name: &'static str,
    pub degrees: Vec<usize>,
    pub result: Outcome,
    pub seconds: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }

    pub fn line(&self) -> String {
        let range = match (self.degrees.first(), self.degrees.last()) {
            (Some(a), Some(b)) if a == b => format!("n={a}"),
            (Some(a), Some(b)) => format!("n={a}..{b}"),
            _ => "vacuous".into(),
        };
        let status = match &self.result {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL: {e}"),
        };
        format!("[{}] {:<44} {:<9} {}", self.group.label(), self.name, range, status)
    }
}

impl Check {
    pub fn degrees(&self, nmax: Option<usize>) -> Vec<usize> {
        let top = nmax.unwrap_or(self.scope.default_nmax()).min(self.max);
        (self.min..=top).collect()
    }

    pub fn run(&self, nmax: Option<usize>) -> CheckReport {
        let start = Instant::now();
        let degrees = self.degrees(nmax);
        let result = degrees.iter().try_for_each(|&n| (self.run)(n).map_err(|e| format!("n={n}: {e}")));
        CheckReport { group: self.group, name: self.name, degrees, result, seconds: start.elapsed().as_secs_f64() }
    }
}

/// Runs the checks of `groups` on the current rayon pool; results keep registry order.
pub fn run_groups(groups: &[Group], nmax: Option<usize>) -> Vec<CheckReport> {
    let checks: Vec<&Check> = registry().iter().filter(|c| groups.contains(&c.group)).collect();
    checks.par_iter().map(|c| c.run(nmax)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn built(f: Family, n: usize) -> Result<(FamilySpec, Built), String> {
    let spec = FamilySpec::new(f, n);
    let b = build(&spec).map_err(|e| format!("{spec}: {e}"))?;
    Ok((spec, b))
}

fn partitions(f: Family, n: usize) -> Result<FiniteMonoid<Partition>, String> {
    match built(f, n)?.1 {
        Built::Partitions(m) => Ok(m),
        Built::Relations(_) => Err(format!("{f:?} is relation-based")),
    }
}

fn relations(f: Family, n: usize) -> Result<FiniteMonoid<BinaryRelation>, String> {
    match built(f, n)?.1 {
        Built::Relations(m) => Ok(m),
        Built::Partitions(_) => Err(format!("{f:?} is partition-based")),
    }
}

fn with_semilattice(f: Family, n: usize, kind: SemilatticeKind) -> Result<(Built, Semilattice), String> {
    let (spec, b) = built(f, n)?;
    let e = semilattice(kind, &spec, &b).map_err(|e| e.to_string())?;
    Ok((b, e))
}

fn members(f: Family, n: usize) -> Result<BTreeSet<Partition>, String> {
    zoo::partition_members(&FamilySpec::new(f, n)).map(|v| v.into_iter().collect()).map_err(|e| e.to_string())
}

fn decode<T: diagmon_core::Element + Ord>(m: &FiniteMonoid<T>, xs: &[u32]) -> BTreeSet<T> {
    xs.iter().map(|&x| m.element(x).clone()).collect()
}

fn check_size(name: &str, got: usize, want: u64) -> Outcome {
    ensure(got as u64 == want, || format!("|{name}| = {got}, expected {want}"))
}

/// Green's R, L and H lie inside their tilde counterparts.
fn green_in_tilde(s: &MulTable, e: &Semilattice) -> Outcome {
    let g = GreenStructure::compute(s);
    let (r, l) = (tilde_classes(s, e, Side::Left), tilde_classes(s, e, Side::Right));
    let h = ehresmann::tilde_h(&r, &l);
    ensure(g.r.refines(&r) && g.l.refines(&l) && g.h.refines(&h), || "a Green class leaves its tilde class".into())
}

fn restrict_semilattice(s: &MulTable, e: &Semilattice, subset: &[u32]) -> Result<(MulTable, Semilattice), String> {
    let t = s.restrict(subset).map_err(|e| e.to_string())?;
    let pos: Vec<u32> = e.members().iter().filter_map(|x| subset.binary_search(x).ok()).map(|p| p as u32).collect();
    let f = Semilattice::new(&t, &pos).map_err(|e| e.to_string())?;
    Ok((t, f))
}

// ---- general theory -------------------------------------------------------

fn inverse_monoids_are_restriction(n: usize) -> Outcome {
    for (f, kind) in [(Family::I, SemilatticeKind::E), (Family::J, SemilatticeKind::F)] {
        let (b, e) = with_semilattice(f, n, kind)?;
        let s = b.table();
        let idem = s.idempotents();
        ensure(idem == e.members(), || format!("{f:?}: the semilattice is not E(S)"))?;
        let report = check_axioms(s, &e);
        ensure(Axiom::ALL.iter().all(|&a| report.holds(a)), || format!("{f:?}{n} is not restriction"))?;
        let g = GreenStructure::compute(s);
        ensure(report.r_tilde == g.r && report.l_tilde == g.l, || format!("{f:?}: tilde relations differ from Green's"))?;
        ensure(green::is_inverse(s, &g), || format!("{f:?} is not inverse"))?;
    }
    Ok(())
}

fn green_inside_tilde(n: usize) -> Outcome {
    for (f, kind) in [
        (Family::P, SemilatticeKind::E),
        (Family::P, SemilatticeKind::F),
        (Family::PB, SemilatticeKind::E),
        (Family::RR, SemilatticeKind::F),
        (Family::BX, SemilatticeKind::E),
    ] {
        let (b, e) = with_semilattice(f, n, kind)?;
        green_in_tilde(b.table(), &e).map_err(|m| format!("{f:?}: {m}"))?;
    }
    Ok(())
}

fn representatives_are_left_identities(n: usize) -> Outcome {
    for (f, kind) in [(Family::P, SemilatticeKind::F), (Family::RR, SemilatticeKind::F), (Family::PT, SemilatticeKind::E)] {
        let (b, e) = with_semilattice(f, n, kind)?;
        let s = b.table();
        let report = check_axioms(s, &e);
        let plus = report.plus().map_err(|e| e.to_string())?;
        let star = report.star().map_err(|e| e.to_string())?;
        for x in 0..s.size() as u32 {
            let (p, q) = (plus[x as usize], star[x as usize]);
            ensure(e.contains(p) && e.contains(q), || format!("{f:?}: representative outside E"))?;
            ensure(s.mul(p, x) == x && s.mul(x, q) == x, || format!("{f:?}: x⁺x or xx* differs from x at {x}"))?;
            let class = report.r_tilde.class_of(x);
            let in_class = e.members().iter().filter(|&&g| report.r_tilde.class_of(g) == class).count();
            ensure(in_class == 1, || format!("{f:?}: R̃-class of {x} holds {in_class} members of E"))?;
        }
    }
    Ok(())
}

fn containment_reformulations(n: usize) -> Outcome {
    for (f, kind) in [
        (Family::PT, SemilatticeKind::E),
        (Family::I, SemilatticeKind::E),
        (Family::RR, SemilatticeKind::F),
        (Family::LL, SemilatticeKind::F),
        (Family::P, SemilatticeKind::F),
    ] {
        let (b, e) = with_semilattice(f, n, kind)?;
        let s = b.table();
        let report = check_axioms(s, &e);
        let plus = report.plus().map_err(|e| e.to_string())?;
        let star = report.star().map_err(|e| e.to_string())?;
        ensure(ehresmann::l3_prime_holds(s, &e, plus) == report.holds(Axiom::L3), || format!("{f:?}: L3 and xe = (xe)⁺x disagree"))?;
        ensure(ehresmann::r3_prime_holds(s, &e, star) == report.holds(Axiom::R3), || format!("{f:?}: R3 and ex = x(ex)* disagree"))?;
    }
    Ok(())
}

fn tilde_h_classes_are_monoids(n: usize) -> Outcome {
    for (f, kind) in [(Family::P, SemilatticeKind::F), (Family::PT, SemilatticeKind::E), (Family::Pfd, SemilatticeKind::F)] {
        let (b, e) = with_semilattice(f, n, kind)?;
        let s = b.table();
        for &idem in e.members() {
            let class = tilde_h_class(s, &e, idem).map_err(|e| e.to_string())?;
            ensure(class.closed, || format!("{f:?}: H̃-class of {idem} is not closed"))?;
            ensure(class.members.iter().all(|&x| s.mul(idem, x) == x && s.mul(x, idem) == x), || {
                format!("{f:?}: {idem} is not the identity of its H̃-class")
            })?;
        }
    }
    Ok(())
}

fn regular_parts_are_inverse(n: usize) -> Outcome {
    for (f, kind) in [
        (Family::P, SemilatticeKind::E),
        (Family::P, SemilatticeKind::F),
        (Family::PT, SemilatticeKind::E),
        (Family::Pfd, SemilatticeKind::F),
        (Family::PB, SemilatticeKind::E),
    ] {
        let (b, e) = with_semilattice(f, n, kind)?;
        let s = b.table();
        let reg = ehresmann::reg_e(s, &e, &GreenStructure::compute(s));
        ensure(s.is_closed(&reg), || format!("{f:?}: Reg_E is not closed"))?;
        let t = s.restrict(&reg).map_err(|e| e.to_string())?;
        ensure(green::is_inverse(&t, &GreenStructure::compute(&t)), || format!("{f:?}: Reg_E is not inverse"))?;
    }
    Ok(())
}

fn largest_restriction_subsemigroups(n: usize) -> Outcome {
    for (f, kind) in [(Family::P, SemilatticeKind::F), (Family::BX, SemilatticeKind::E)] {
        let (b, e) = with_semilattice(f, n, kind)?;
        let s = b.table();
        let rest = rest_subsemigroups(s, &e);
        for (side, set) in [(Side::Left, &rest.left), (Side::Right, &rest.right)] {
            ensure(s.is_closed(set), || format!("{f:?}: one-sided restriction set not closed"))?;
            let (t, g) = restrict_semilattice(s, &e, set)?;
            let report = check_axioms(&t, &g);
            let ok = match side {
                Side::Left => report.is_left_restriction(),
                Side::Right => report.is_right_restriction(),
            };
            ensure(ok, || format!("{f:?}: {} restriction set fails its axioms", side.name()))?;
            for x in (0..s.size() as u32).filter(|x| set.binary_search(x).is_err()) {
                ensure(!satisfies_containment(s, &e, x, side), || format!("{f:?}: {x} was left out"))?;
            }
        }
    }
    Ok(())
}

// ---- binary relations -----------------------------------------------------

fn relation_counts(n: usize) -> Outcome {
    let n64 = n as u64;
    check_size("B_n", relations(Family::BX, n)?.size(), 1 << (n * n))?;
    check_size("PT_n", relations(Family::PT, n)?.size(), (n64 + 1).pow(n as u32))?;
    let all: Vec<BinaryRelation> = BinaryRelation::all(n).collect();
    let t = all.iter().filter(|r| r.is_coinjective() && r.dom().is_full()).count();
    check_size("T_n", t, n64.pow(n as u32))?;
    let i = all.iter().filter(|r| r.is_coinjective() && r.is_injective()).count();
    check_size("I_n", i, counts::symmetric_inverse(n64))
}

fn brauer_relations_ehresmann(n: usize) -> Outcome {
    let (b, e) = with_semilattice(Family::BX, n, SemilatticeKind::E)?;
    let m = b.relations().expect("relation family");
    let s = b.table();
    let report = check_axioms(s, &e);
    ensure(report.is_ehresmann(), || "B_n is not E-Ehresmann".into())?;
    let plus = report.plus().map_err(|e| e.to_string())?;
    let star = report.star().map_err(|e| e.to_string())?;
    let els = m.elements();
    for (i, a) in els.iter().enumerate() {
        ensure(*m.element(plus[i]) == BinaryRelation::id_subset(&a.dom()), || "α⁺ is not id_dom".into())?;
        ensure(*m.element(star[i]) == BinaryRelation::id_subset(&a.codom()), || "α* is not id_codom".into())?;
        for (j, b) in els.iter().enumerate() {
            let (i, j) = (i as u32, j as u32);
            ensure(report.r_tilde.related(i, j) == (a.dom() == b.dom()), || "R̃ is not equal domains".into())?;
            ensure(report.l_tilde.related(i, j) == (a.codom() == b.codom()), || "L̃ is not equal codomains".into())?;
        }
    }
    let order = leq_r(s, &e, &report).map_err(|e| e.to_string())?;
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            let expect = a.dom().is_subset_of(&b.dom()) && BinaryRelation::id_subset(&a.dom()) * *b == *a;
            ensure(order.leq(i as u32, j as u32) == expect, || "≤_r is not restriction".into())?;
        }
    }
    Ok(())
}

fn brauer_relations_restriction_parts(n: usize) -> Outcome {
    let (b, e) = with_semilattice(Family::BX, n, SemilatticeKind::E)?;
    let m = b.relations().expect("relation family");
    let s = b.table();
    let rest = rest_subsemigroups(s, &e);
    let pt: BTreeSet<BinaryRelation> = relations(Family::PT, n)?.elements().iter().copied().collect();
    let inj: BTreeSet<BinaryRelation> = pt.iter().copied().filter(BinaryRelation::is_injective).collect();
    ensure(decode(m, &rest.left) == pt, || "Rest_L is not PT_n".into())?;
    ensure(decode(m, &rest.both) == inj, || "Rest is not I_n".into())?;
    let reg = ehresmann::reg_e(s, &e, &GreenStructure::compute(s));
    ensure(decode(m, &reg) == inj, || "Reg_E is not I_n".into())
}

fn partial_transformation_category(n: usize) -> Outcome {
    let (b, e) = with_semilattice(Family::PT, n, SemilatticeKind::E)?;
    let m = b.relations().expect("relation family");
    let s = b.table();
    let cat = EhresmannCategory::build(s, &e).map_err(|e| e.to_string())?;
    ensure(cat.check_invariants(s), || "hom-sets do not partition S".into())?;
    ensure(cat.is_ei(s).is_ei, || "C′(PT_n, E) is not EI".into())?;
    for &obj in cat.objects() {
        let k = m.element(obj).len() as u64;
        check_size("hom(id_A, id_A)", cat.hom(obj, obj).len(), counts::factorial(k))?;
    }
    Ok(())
}

fn partial_transformation_factorisation(n: usize) -> Outcome {
    let pt: BTreeSet<BinaryRelation> = relations(Family::PT, n)?.elements().iter().copied().collect();
    let t: Vec<&BinaryRelation> = pt.iter().filter(|r| r.dom().is_full()).collect();
    let prod: BTreeSet<BinaryRelation> =
        Subset::all(n).flat_map(|a| t.iter().map(move |x| BinaryRelation::id_subset(&a) * **x)).collect();
    ensure(prod == pt, || "E(I_n)·T_n differs from PT_n".into())
}

fn stein_and_quotient(f: Family, n: usize, kind: SemilatticeKind, side: Side, reg_size: u64) -> Outcome {
    let (b, e) = with_semilattice(f, n, kind)?;
    let s = b.table();
    let check = verify_stein(s, &e, side).map_err(|e| e.to_string())?;
    ensure(check.holds(), || format!("Stein map fails: {check:?}"))?;
    let q = check_semisimple_quotient(s, &e).map_err(|e| e.to_string())?;
    check_size("Reg_E", q.reg_size, reg_size)?;
    ensure(q.dim - q.radical == q.reg_size, || format!("quotient dimension {} vs |Reg_E| {}", q.dim - q.radical, q.reg_size))?;
    ensure(q.reg_radical == 0, || "K[Reg_E] has a radical".into())
}

fn partial_transformation_stein(n: usize) -> Outcome {
    stein_and_quotient(Family::PT, n, SemilatticeKind::E, Side::Left, counts::symmetric_inverse(n as u64))
}

// ---- partition monoids ----------------------------------------------------

fn worked_example(_: usize) -> Outcome {
    let w = witness_sets();
    let (a, b) = w.albe;
    ensure(a * b == w.albe_product, || "αβ differs from the stated product".into())?;
    ensure(a.rank() == 1 && a.dom() == Subset::from_points(6, &[2, 3]).expect("valid"), || "params(α)".into())?;
    ensure(b.supp() == Subset::from_points(6, &[1, 2, 3, 4, 5]).expect("valid"), || "supp(β)".into())?;
    ensure(b.cosupp() == Subset::from_points(6, &[1, 4, 5, 6]).expect("valid"), || "cosupp(β)".into())
}

fn partition_counts(n: usize) -> Outcome {
    let n64 = n as u64;
    check_size("P_n", members(Family::P, n)?.len(), counts::bell(2 * n))?;
    check_size("I_n", members(Family::I, n)?.len(), counts::symmetric_inverse(n64))?;
    check_size("J_n", members(Family::J, n)?.len(), counts::dual_symmetric_inverse(n64))?;
    check_size("T_n", members(Family::T, n)?.len(), n64.pow(n as u32))?;
    check_size("B_n", members(Family::B, n)?.len(), counts::odd_double_factorial(n64))
}

fn partition_green(n: usize) -> Outcome {
    let m = partitions(Family::P, n)?;
    let g = GreenStructure::compute(m.table());
    ensure(g.d_equals_j(), || "D ≠ J".into())?;
    let els = m.elements();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            let (x, y) = (i as u32, j as u32);
            let upper = b.upper_nontransversals().into_iter().all(|l| b.block_is_block_of(l, a));
            let lower = b.lower_nontransversals().into_iter().all(|l| b.block_is_block_of(l, a));
            ensure(g.leq_r(x, y) == (b.ker().is_finer_than(&a.ker()) && upper), || "≤_R".into())?;
            ensure(g.leq_l(x, y) == (b.coker().is_finer_than(&a.coker()) && lower), || "≤_L".into())?;
            ensure(g.leq_j(x, y) == (a.rank() <= b.rank()), || "≤_J".into())?;
            ensure(g.r.related(x, y) == (a.dom() == b.dom() && a.ker() == b.ker()), || "R".into())?;
            ensure(g.l.related(x, y) == (a.codom() == b.codom() && a.coker() == b.coker()), || "L".into())?;
        }
    }
    Ok(())
}

fn kernel_semilattice_ehresmann(n: usize) -> Outcome {
    let (b, f) = with_semilattice(Family::P, n, SemilatticeKind::F)?;
    let report = check_axioms(b.table(), &f);
    for a in [Axiom::L1, Axiom::L2, Axiom::R1, Axiom::R2] {
        ensure(report.holds(a), || format!("{} fails", a.name()))?;
    }
    let expect = if b.size() > ehresmann::EXHAUSTIVE_SWEEP { SweepMode::Generators } else { SweepMode::Exhaustive };
    ensure(report.sweep == expect, || "unexpected sweep mode".into())
}

fn partition_monoid_not_subset_ehresmann(n: usize) -> Outcome {
    subset_semilattice_fails(Family::P, n)
}

fn partial_brauer_not_subset_ehresmann(n: usize) -> Outcome {
    subset_semilattice_fails(Family::PB, n)
}

fn subset_semilattice_fails(f: Family, n: usize) -> Outcome {
    {
        let (b, e) = with_semilattice(f, n, SemilatticeKind::E)?;
        let m = b.partitions().expect("partition family");
        let s = b.table();
        let report = check_axioms(s, &e);
        ensure(!report.holds(Axiom::L2) && !report.holds(Axiom::R2), || format!("{f:?}: L2 or R2 holds"))?;
        ensure(report.witnesses_verify(s, &e), || format!("{f:?}: stored witnesses do not re-verify"))?;
        if n == 2 {
            let t = witness_sets().not_e;
            ensure(t.alpha.supp() == t.beta.supp(), || "supp(α) ≠ supp(β)".into())?;
            ensure((t.theta * t.alpha).supp() != (t.theta * t.beta).supp(), || "supp(θα) = supp(θβ)".into())?;
            let idx = |p: &Partition| m.index_of(p).ok_or_else(|| format!("{f:?}: witness element missing"));
            let w = Witness::Congruence { theta: idx(&t.theta)?, a: idx(&t.alpha)?, b: idx(&t.beta)? };
            ensure(w.verify(Axiom::L2, s, &e), || format!("{f:?}: fixed witness does not re-verify"))?;
        }
    }
    Ok(())
}

fn identity_sets(n: usize) -> Outcome {
    let (b, e) = with_semilattice(Family::P, n, SemilatticeKind::E)?;
    let (_, f) = with_semilattice(Family::P, n, SemilatticeKind::F)?;
    let m = b.partitions().expect("partition family");
    let s = b.table();
    let subsets: Vec<Subset> = Subset::all(n).collect();
    let equivs: Vec<SetPartition> = SetPartition::all(n).collect();
    for (x, a) in m.elements().iter().enumerate() {
        let x = x as u32;
        let ids = |keep: &dyn Fn(&Subset) -> bool| subsets.iter().filter(|s| keep(s)).map(Partition::id_subset).collect::<BTreeSet<_>>();
        let eqs = |c: &SetPartition| equivs.iter().filter(|s| s.is_finer_than(c)).map(Partition::id_equiv).collect::<BTreeSet<_>>();
        ensure(decode(m, &e_left(s, &e, x)) == ids(&|h| a.supp().is_subset_of(h)), || "E_L".into())?;
        ensure(decode(m, &e_right(s, &e, x)) == ids(&|h| a.cosupp().is_subset_of(h)), || "E_R".into())?;
        ensure(decode(m, &e_left(s, &f, x)) == eqs(&a.ker()), || "F_L".into())?;
        ensure(decode(m, &e_right(s, &f, x)) == eqs(&a.coker()), || "F_R".into())?;
    }
    Ok(())
}

fn natural_orders(n: usize) -> Outcome {
    let (b, f) = with_semilattice(Family::P, n, SemilatticeKind::F)?;
    let (_, e) = with_semilattice(Family::P, n, SemilatticeKind::E)?;
    let m = b.partitions().expect("partition family");
    let s = b.table();
    let report = check_axioms(s, &f);
    let r = leq_r(s, &f, &report).map_err(|e| e.to_string())?;
    let l = leq_l(s, &f, &report).map_err(|e| e.to_string())?;
    let rp = leq_r_prime(s, &e).map_err(|e| e.to_string())?;
    let els = m.elements();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            let (x, y) = (i as u32, j as u32);
            let coarser = b.refines(a).map_err(|e| e.to_string())?;
            let lower = b.lower_nontransversals().into_iter().all(|k| b.block_is_block_of(k, a));
            let upper = b.upper_nontransversals().into_iter().all(|k| b.block_is_block_of(k, a));
            ensure(r.leq(x, y) == (coarser && lower), || "≤_r".into())?;
            ensure(l.leq(x, y) == (coarser && upper), || "≤_l".into())?;
            ensure(rp.leq(x, y) == stripped_upper(a, b), || "≤′_r".into())?;
            if rp.leq(x, y) {
                ensure(a.refines(b).unwrap_or(false), || "≤′_r does not imply ≼".into())?;
            }
        }
    }
    Ok(())
}

/// `a` arises from `b` by detaching some upper vertices into singletons:
/// within each block of `b`, the lower vertices and the upper vertices that are not
/// singletons of `a` form a single block of `a`, and the rest are upper singletons.
fn stripped_upper(a: &Partition, b: &Partition) -> bool {
    let a_blocks: BTreeSet<Vec<i32>> = a.signed_blocks().into_iter().collect();
    b.signed_blocks().iter().all(|block| {
        let kept: Vec<i32> = block.iter().copied().filter(|&v| v < 0 || !a_blocks.contains(&vec![v])).collect();
        kept.is_empty() || a_blocks.contains(&kept)
    })
}

fn regular_parts_of_partition_monoid(n: usize) -> Outcome {
    let (b, f) = with_semilattice(Family::P, n, SemilatticeKind::F)?;
    let (_, e) = with_semilattice(Family::P, n, SemilatticeKind::E)?;
    let m = b.partitions().expect("partition family");
    let s = b.table();
    let g = GreenStructure::compute(s);
    for (sl, fam) in [(&f, Family::J), (&e, Family::I)] {
        let reg = ehresmann::reg_e(s, sl, &g);
        ensure(decode(m, &reg) == members(fam, n)?, || format!("Reg is not {fam:?}_n"))?;
        let t = s.restrict(&reg).map_err(|e| e.to_string())?;
        ensure(green::has_unique_inverses(&t), || format!("{fam:?}_n lacks unique inverses"))?;
    }
    for eq in SetPartition::all(n) {
        let idx = m.index_of(&Partition::id_equiv(&eq)).ok_or("id_ε missing")?;
        let class = tilde_h_class(s, &f, idx).map_err(|e| e.to_string())?;
        check_size("H̃_{id_ε}", class.members.len(), counts::symmetric_inverse(eq.num_classes() as u64))?;
    }
    if n == 3 {
        let (a, bb, ab) = witness_sets().r_e;
        let one = m.index_of(&Partition::identity(3)).ok_or("identity missing")?;
        let class = tilde_h_class(s, &e, one).map_err(|e| e.to_string())?;
        let has = |p: &Partition| m.index_of(p).is_some_and(|i| class.members.contains(&i));
        ensure(a * bb == ab && has(&a) && has(&bb) && !has(&ab), || "H̃_E non-closure witness".into())?;
    }
    Ok(())
}

fn restriction_parts_of_partition_monoid(n: usize) -> Outcome {
    let (b, f) = with_semilattice(Family::P, n, SemilatticeKind::F)?;
    let m = b.partitions().expect("partition family");
    let s = b.table();
    for (x, a) in m.elements().iter().enumerate() {
        let expect = a.dom().is_full() || a.ker().is_universal();
        ensure(satisfies_containment(s, &f, x as u32, Side::Right) == expect, || format!("Fx ⊆ xF at {a:?}"))?;
    }
    let rest = rest_subsemigroups(s, &f);
    let zeta = Partition::zeta(n);
    let mut expect = members(Family::J, n)?;
    expect.insert(zeta);
    ensure(decode(m, &rest.both) == expect, || "Rest is not J_n ∪ {ζ}".into())?;
    check_size("Rest", rest.both.len(), counts::dual_symmetric_inverse(n as u64) + u64::from(n > 0))?;
    let z = m.index_of(&zeta).ok_or("ζ missing")?;
    ensure(rest.both.iter().all(|&x| s.mul(z, x) == z && s.mul(x, z) == z), || "ζ is not a zero of Rest".into())?;
    ensure(decode(m, &rest.right) == members(Family::RR, n)?, || "Rest_R is not RR_n".into())
}

fn full_domain_structure(n: usize) -> Outcome {
    for (f, bottom) in [(Family::RR, Family::D0), (Family::Pfd, Family::D1)] {
        let (_, b) = built(f, n)?;
        let m = b.partitions().expect("partition family");
        let s = b.table();
        let g = GreenStructure::compute(s);
        ensure(green::is_regular(s, &g), || format!("{f:?} is not regular"))?;
        ensure(g.j_order_is_chain(), || format!("{f:?}: J-order is not a chain"))?;
        let els = m.elements();
        for (i, a) in els.iter().enumerate() {
            for (j, c) in els.iter().enumerate() {
                let (x, y) = (i as u32, j as u32);
                ensure(g.r.related(x, y) == (a.dom() == c.dom() && a.ker() == c.ker()), || format!("{f:?}: R"))?;
                ensure(g.l.related(x, y) == (a.codom() == c.codom() && a.coker() == c.coker()), || format!("{f:?}: L"))?;
                ensure(g.d.related(x, y) == (a.rank() == c.rank()), || format!("{f:?}: D"))?;
            }
        }
        let eb = eggbox(s, &g);
        for class in &eb.classes {
            let mu = m.element(class.cells[0][0][0]).rank() as u64;
            for (r, row) in class.cells.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    if class.group[r][c] {
                        check_size("group H-class", cell.len(), counts::factorial(mu))?;
                    }
                }
            }
        }
        if n > 0 {
            let bottom_set = members(bottom, n)?;
            ensure(decode(m, &s.right_zeros()) == bottom_set, || format!("{f:?}: right zeros"))?;
            ensure(decode(m, &minimal_ideal(&g)) == bottom_set, || format!("{f:?}: minimal ideal"))?;
        }
        let ideals: Vec<BTreeSet<u32>> =
            (0..s.size() as u32).map(|x| (0..s.size() as u32).filter(|&y| g.leq_j(y, x)).collect()).collect();
        for a in &ideals {
            for c in &ideals {
                ensure(a.is_subset(c) || c.is_subset(a), || format!("{f:?}: ideals not a chain"))?;
            }
        }
        let dot = eggbox_dot(&b, &eb, &BTreeSet::new());
        let ranks = if f == Family::RR || n == 0 { n + 1 } else { n };
        ensure(count_clusters(&dot) == ranks, || format!("{f:?}: {} clusters", count_clusters(&dot)))?;
    }
    Ok(())
}

fn full_domain_factorisation(n: usize) -> Outcome {
    let t = members(Family::T, n)?;
    let ids: Vec<Partition> = SetPartition::all(n).map(|e| Partition::id_equiv(&e)).collect();
    let prod: BTreeSet<Partition> = t.iter().flat_map(|x| ids.iter().map(move |e| *x * *e)).collect();
    ensure(prod == members(Family::Pfd, n)?, || "T_n·E(J_n) differs from Pfd_n".into())?;
    let (pfd, pfcd) = (members(Family::Pfd, n)?, members(Family::Pfcd, n)?);
    ensure(pfd.intersection(&pfcd).copied().collect::<BTreeSet<_>>() == members(Family::J, n)?, || "Pfd ∩ Pfcd ≠ J".into())?;
    ensure(pfd.iter().map(Partition::involute).collect::<BTreeSet<_>>() == pfcd, || "involution".into())?;
    let (d0, d1) = (members(Family::D0, n)?, members(Family::D1, n)?);
    ensure(members(Family::Pfk, n)? == d0.union(&d1).copied().collect(), || "Pfk ≠ D0 ⊔ D1".into())
}

fn partition_categories(n: usize) -> Outcome {
    for (f, hom_count) in [
        (Family::P, (|p: u64, q: u64| (0..=p.min(q)).map(|k| counts::binomial(p, k) * counts::binomial(q, k) * counts::factorial(k)).sum()) as fn(u64, u64) -> u64),
        (Family::Pfd, |p: u64, q: u64| if p <= q { counts::factorial(q) / counts::factorial(q - p) } else { 0 }),
    ] {
        let (b, e) = with_semilattice(f, n, SemilatticeKind::F)?;
        let m = b.partitions().expect("partition family");
        let s = b.table();
        let cat = EhresmannCategory::build(s, &e).map_err(|e| e.to_string())?;
        ensure(cat.check_invariants(s), || format!("{f:?}: hom-sets"))?;
        for &x in cat.objects() {
            for &y in cat.objects() {
                let (p, q) = (m.element(x).ker().num_classes() as u64, m.element(y).ker().num_classes() as u64);
                check_size("hom", cat.hom(x, y).len(), hom_count(p, q))?;
            }
        }
        if f == Family::Pfd {
            ensure(cat.is_ei(s).is_ei, || "C″(Pfd_n, F) is not EI".into())?;
        }
    }
    if n >= 2 {
        let (b, e) = with_semilattice(Family::RR, n, SemilatticeKind::F)?;
        let m = b.partitions().expect("partition family");
        let ei = EhresmannCategory::build(b.table(), &e).map_err(|e| e.to_string())?.is_ei(b.table());
        ensure(!ei.is_ei && ei.witness.map(|w| *m.element(w)) == Some(Partition::zeta(n)), || "RR_n EI witness is not ζ".into())?;
    }
    Ok(())
}

fn full_domain_stein(n: usize) -> Outcome {
    stein_and_quotient(Family::Pfd, n, SemilatticeKind::F, Side::Right, counts::dual_symmetric_inverse(n as u64))
}

// ---- Brauer and rook diagrams ---------------------------------------------

fn diagram_counts(n: usize) -> Outcome {
    check_size("B_n", partitions(Family::B, n)?.size(), counts::odd_double_factorial(n as u64))?;
    check_size("PB_n", partitions(Family::PB, n)?.size(), counts::partial_brauer(n as u64))
}

fn partial_brauer_subset_semilattice(n: usize) -> Outcome {
    let (b, e) = with_semilattice(Family::PB, n, SemilatticeKind::E)?;
    let m = b.partitions().expect("partition family");
    let s = b.table();
    let reg = ehresmann::reg_e(s, &e, &GreenStructure::compute(s));
    ensure(decode(m, &reg) == members(Family::I, n)?, || "Reg_E(PB_n) is not I_n".into())?;
    for a in Subset::all(n) {
        let idx = m.index_of(&Partition::id_subset(&a)).ok_or("id_A missing")?;
        let class = tilde_h_class(s, &e, idx).map_err(|e| e.to_string())?;
        check_size("H̃_{id_A}", class.members.len(), counts::odd_double_factorial(a.len() as u64))?;
        ensure(class.closed, || "H̃_{id_A} is not closed".into())?;
    }
    Ok(())
}

fn rook_tower(n: usize) -> Outcome {
    let t = zoo::tower(n).map_err(|e| e.to_string())?;
    ensure(check_embedding(&t.p_to_rp, t.p.table(), t.rp.table()), || "P_n ↪ RP_n".into())?;
    ensure(check_embedding(&t.rp_to_p_next, t.rp.table(), t.p_next.table()), || "RP_n ↪ P_{n+1}".into())?;
    for x in t.rp.elements() {
        let view = zoo::rook_view(x).map_err(|e| e.to_string())?;
        ensure(zoo::rook_embed(&view).ok() == Some(*x), || "rook view does not round-trip".into())?;
    }
    Ok(())
}

fn rook_semilattice(n: usize) -> Outcome {
    let (b, g) = with_semilattice(Family::RP, n, SemilatticeKind::G)?;
    let m = b.partitions().expect("partition family");
    let s = b.table();
    let report = check_axioms(s, &g);
    ensure(report.is_ehresmann(), || "RP_n is not G-Ehresmann".into())?;
    let reg = ehresmann::reg_e(s, &g, &GreenStructure::compute(s));
    ensure(decode(m, &reg) == members(Family::RJ, n)?, || "Reg_G(RP_n) is not RJ_n".into())?;
    if n == 2 {
        let (_, f) = with_semilattice(Family::RP, n, SemilatticeKind::F)?;
        let t = witness_sets().rp2;
        let idx = |p: &Partition| m.index_of(p).ok_or("RP_2 witness element missing");
        let w = Witness::Congruence { theta: idx(&t.theta)?, a: idx(&t.alpha)?, b: idx(&t.beta)? };
        ensure(w.verify(Axiom::L2, s, &f), || "R̃_F stays a left congruence on RP_2".into())?;
    }
    Ok(())
}

pub fn registry() -> &'static [Check] {
    use Group::*;
    use Scope::*;
    const CHECKS: &[Check] = &[
        Check { group: General, name: "inverse monoids are restriction", scope: Exhaustive, min: 0, max: 4, run: inverse_monoids_are_restriction },
        Check { group: General, name: "Green's relations inside tilde relations", scope: Exhaustive, min: 0, max: 3, run: green_inside_tilde },
        Check { group: General, name: "x⁺ and x* are one-sided identities", scope: Exhaustive, min: 0, max: 3, run: representatives_are_left_identities },
        Check { group: General, name: "restriction axioms and their reformulations", scope: Exhaustive, min: 0, max: 3, run: containment_reformulations },
        Check { group: General, name: "H̃-classes of idempotents are monoids", scope: Exhaustive, min: 0, max: 3, run: tilde_h_classes_are_monoids },
        Check { group: General, name: "Reg_E is an inverse subsemigroup", scope: Exhaustive, min: 0, max: 3, run: regular_parts_are_inverse },
        Check { group: General, name: "largest restriction subsemigroups", scope: Exhaustive, min: 0, max: 3, run: largest_restriction_subsemigroups },
        Check { group: Relations, name: "relation monoid sizes", scope: Structure, min: 0, max: 3, run: relation_counts },
        Check { group: Relations, name: "B_n is E-Ehresmann", scope: Exhaustive, min: 0, max: 3, run: brauer_relations_ehresmann },
        Check { group: Relations, name: "Rest and Reg of (B_n, E)", scope: Exhaustive, min: 0, max: 3, run: brauer_relations_restriction_parts },
        Check { group: Relations, name: "C′(PT_n, E) is EI", scope: Exhaustive, min: 0, max: 3, run: partial_transformation_category },
        Check { group: Relations, name: "PT_n = E(I_n)·T_n", scope: Exhaustive, min: 0, max: 3, run: partial_transformation_factorisation },
        Check { group: Relations, name: "Stein isomorphism and quotient for PT_n", scope: Exhaustive, min: 0, max: 3, run: partial_transformation_stein },
        Check { group: Partitions, name: "worked product in P_6", scope: Structure, min: 0, max: 0, run: worked_example },
        Check { group: Partitions, name: "partition monoid sizes", scope: Structure, min: 0, max: 4, run: partition_counts },
        Check { group: Partitions, name: "Green's relations of P_n by parameters", scope: Exhaustive, min: 0, max: 3, run: partition_green },
        Check { group: Partitions, name: "P_n is F-Ehresmann", scope: Structure, min: 0, max: 4, run: kernel_semilattice_ehresmann },
        Check { group: Partitions, name: "P_n is not E-Ehresmann", scope: Exhaustive, min: 2, max: 3, run: partition_monoid_not_subset_ehresmann },
        Check { group: Partitions, name: "identity sets in closed form", scope: Exhaustive, min: 0, max: 3, run: identity_sets },
        Check { group: Partitions, name: "natural orders by parameters", scope: Exhaustive, min: 0, max: 3, run: natural_orders },
        Check { group: Partitions, name: "Reg_F = J_n, Reg_E = I_n, H̃ sizes", scope: Exhaustive, min: 0, max: 3, run: regular_parts_of_partition_monoid },
        Check { group: Partitions, name: "Rest(P_n, F) = J_n ∪ {ζ}", scope: Exhaustive, min: 0, max: 3, run: restriction_parts_of_partition_monoid },
        Check { group: Partitions, name: "RR_n and Pfd_n structure", scope: Structure, min: 0, max: 4, run: full_domain_structure },
        Check { group: Partitions, name: "Pfd_n factorisation and duals", scope: Exhaustive, min: 0, max: 3, run: full_domain_factorisation },
        Check { group: Partitions, name: "categories of P_n, Pfd_n, RR_n", scope: Exhaustive, min: 0, max: 3, run: partition_categories },
        Check { group: Partitions, name: "Stein isomorphism and quotient for Pfd_n", scope: Exhaustive, min: 0, max: 3, run: full_domain_stein },
        Check { group: Diagrams, name: "Brauer monoid sizes", scope: Structure, min: 0, max: 3, run: diagram_counts },
        Check { group: Diagrams, name: "PB_n with E", scope: Exhaustive, min: 0, max: 3, run: partial_brauer_subset_semilattice },
        Check { group: Diagrams, name: "PB_n is not E-Ehresmann", scope: Exhaustive, min: 2, max: 3, run: partial_brauer_not_subset_ehresmann },
        Check { group: Diagrams, name: "tower P_n ↪ RP_n ↪ P_{n+1}", scope: Exhaustive, min: 0, max: 3, run: rook_tower },
        Check { group: Diagrams, name: "RP_n is G-Ehresmann, Reg_G = RJ_n", scope: Exhaustive, min: 1, max: 2, run: rook_semilattice },
    ];
    CHECKS
}
