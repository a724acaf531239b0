use std::collections::BTreeSet;

use diagmon_core::ehresmann::{
    self, check_axioms, e_left, e_right, leq_l, leq_r, leq_r_prime, rest_subsemigroups, satisfies_containment,
    tilde_classes, tilde_h_class, Axiom, Semilattice, Side, Witness,
};
use diagmon_core::green::GreenStructure;
use diagmon_core::zoo::{build, semilattice, witness_sets, Built, Family, FamilySpec, SemilatticeKind};
use diagmon_core::{FiniteMonoid, Partition, SetPartition, Subset};

fn family(f: Family, n: usize) -> (FamilySpec, Built) {
    let spec = FamilySpec::new(f, n);
    let built = build(&spec).unwrap();
    (spec, built)
}

fn with_semilattice(f: Family, n: usize, kind: SemilatticeKind) -> (FiniteMonoid<Partition>, Semilattice) {
    let (spec, built) = family(f, n);
    let e = semilattice(kind, &spec, &built).unwrap();
    match built {
        Built::Partitions(m) => (m, e),
        Built::Relations(_) => unreachable!(),
    }
}

fn decode(m: &FiniteMonoid<Partition>, xs: &[u32]) -> BTreeSet<Partition> {
    xs.iter().map(|&x| *m.element(x)).collect()
}

#[test]
fn identity_sets_in_partition_monoid() {
    for n in 0..=3 {
        let (m, e) = with_semilattice(Family::P, n, SemilatticeKind::E);
        let (_, f) = with_semilattice(Family::P, n, SemilatticeKind::F);
        for (x, a) in m.elements().iter().enumerate() {
            let x = x as u32;
            let expect = |keep: &dyn Fn(&Subset) -> bool| -> BTreeSet<Partition> {
                Subset::all(n).filter(|s| keep(s)).map(|s| Partition::id_subset(&s)).collect()
            };
            assert_eq!(decode(&m, &e_left(m.table(), &e, x)), expect(&|s| a.supp().is_subset_of(s)));
            assert_eq!(decode(&m, &e_right(m.table(), &e, x)), expect(&|s| a.cosupp().is_subset_of(s)));
            let expect = |eq: &SetPartition| -> BTreeSet<Partition> {
                SetPartition::all(n).filter(|s| s.is_finer_than(eq)).map(|s| Partition::id_equiv(&s)).collect()
            };
            assert_eq!(decode(&m, &e_left(m.table(), &f, x)), expect(&a.ker()));
            assert_eq!(decode(&m, &e_right(m.table(), &f, x)), expect(&a.coker()));
        }
    }
}

#[test]
fn tilde_relations_by_parameters() {
    for n in 0..=3 {
        let (m, e) = with_semilattice(Family::P, n, SemilatticeKind::E);
        let (_, f) = with_semilattice(Family::P, n, SemilatticeKind::F);
        let s = m.table();
        let (re, le) = (tilde_classes(s, &e, Side::Left), tilde_classes(s, &e, Side::Right));
        let (rf, lf) = (tilde_classes(s, &f, Side::Left), tilde_classes(s, &f, Side::Right));
        let els = m.elements();
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                let (i, j) = (i as u32, j as u32);
                assert_eq!(re.related(i, j), a.supp() == b.supp());
                assert_eq!(le.related(i, j), a.cosupp() == b.cosupp());
                assert_eq!(rf.related(i, j), a.ker() == b.ker());
                assert_eq!(lf.related(i, j), a.coker() == b.coker());
            }
        }
    }
}

#[test]
fn green_refines_tilde() {
    for (f, kind) in [
        (Family::P, SemilatticeKind::E),
        (Family::P, SemilatticeKind::F),
        (Family::PB, SemilatticeKind::E),
        (Family::RP, SemilatticeKind::G),
        (Family::RR, SemilatticeKind::F),
    ] {
        let (m, e) = with_semilattice(f, 3, kind);
        let s = m.table();
        let g = GreenStructure::compute(s);
        assert!(g.r.refines(&tilde_classes(s, &e, Side::Left)), "{f:?}");
        assert!(g.l.refines(&tilde_classes(s, &e, Side::Right)), "{f:?}");
    }
}

#[test]
fn kernel_semilattice_is_ehresmann() {
    for n in 0..=3 {
        let (m, f) = with_semilattice(Family::P, n, SemilatticeKind::F);
        let s = m.table();
        let report = check_axioms(s, &f);
        assert!(report.is_ehresmann());
        assert!(report.witnesses_verify(s, &f));
        let (plus, star) = (report.plus().unwrap(), report.star().unwrap());
        for (x, a) in m.elements().iter().enumerate() {
            assert_eq!(*m.element(plus[x]), Partition::id_equiv(&a.ker()));
            assert_eq!(*m.element(star[x]), Partition::id_equiv(&a.coker()));
            // x⁺ is a left identity for its whole R̃ class.
            assert_eq!(s.mul(plus[x], x as u32), x as u32);
            assert_eq!(s.mul(x as u32, star[x]), x as u32);
        }
        assert!(ehresmann::l3_prime_holds(s, &f, plus) == report.holds(Axiom::L3));
        assert!(ehresmann::r3_prime_holds(s, &f, star) == report.holds(Axiom::R3));
    }
}

#[test]
fn containment_by_parameters() {
    for n in 1..=3 {
        let (m, f) = with_semilattice(Family::P, n, SemilatticeKind::F);
        let s = m.table();
        for (x, a) in m.elements().iter().enumerate() {
            let right = a.dom().is_full() || a.ker().is_universal();
            assert_eq!(satisfies_containment(s, &f, x as u32, Side::Right), right, "{a:?}");
            let left = a.codom().is_full() || a.coker().is_universal();
            assert_eq!(satisfies_containment(s, &f, x as u32, Side::Left), left, "{a:?}");
        }
    }
}

#[test]
fn restriction_subsemigroups_of_partition_monoid() {
    for n in 1..=3 {
        let (m, f) = with_semilattice(Family::P, n, SemilatticeKind::F);
        let rest = rest_subsemigroups(m.table(), &f);
        let members = |fam: Family| -> BTreeSet<Partition> {
            let (_, b) = family(fam, n);
            b.partitions().unwrap().elements().iter().copied().collect()
        };
        assert_eq!(decode(&m, &rest.right), members(Family::RR));
        assert_eq!(decode(&m, &rest.left), members(Family::LL));
        let mut both = members(Family::J);
        both.insert(Partition::zeta(n));
        assert_eq!(decode(&m, &rest.both), both);
        for set in [&rest.left, &rest.right, &rest.both] {
            assert!(m.table().is_closed(set));
        }
    }
}

#[test]
fn rest_subsemigroups_are_restriction() {
    for n in 1..=3 {
        let (m, f) = with_semilattice(Family::RR, n, SemilatticeKind::F);
        let report = check_axioms(m.table(), &f);
        assert!(report.is_right_restriction());
        assert!(report.is_ehresmann());
        let (m, f) = with_semilattice(Family::LL, n, SemilatticeKind::F);
        assert!(check_axioms(m.table(), &f).is_left_restriction());
    }
}

#[test]
fn brauer_relations_with_subsets() {
    for n in 0..=3 {
        let (spec, built) = family(Family::BX, n);
        let e = semilattice(SemilatticeKind::E, &spec, &built).unwrap();
        let m = built.relations().unwrap();
        let s = m.table();
        let report = check_axioms(s, &e);
        assert!(report.is_ehresmann());
        assert_eq!(report.is_left_restriction(), n <= 1);
        let (plus, star) = (report.plus().unwrap(), report.star().unwrap());
        let id = |a: Subset| m.index_of(&diagmon_core::BinaryRelation::id_subset(&a)).unwrap();
        for (x, r) in m.elements().iter().enumerate() {
            assert_eq!(plus[x], id(r.dom()));
            assert_eq!(star[x], id(r.codom()));
        }
        // x ≤_r y iff x is y restricted to dom x.
        let order = leq_r(s, &e, &report).unwrap();
        for (x, a) in m.elements().iter().enumerate() {
            for (y, b) in m.elements().iter().enumerate() {
                let restricted = diagmon_core::BinaryRelation::id_subset(&a.dom()) * *b;
                let expect = a.dom().is_subset_of(&b.dom()) && restricted == *a;
                assert_eq!(order.leq(x as u32, y as u32), expect);
            }
        }
        let rest = rest_subsemigroups(s, &e);
        let pt: BTreeSet<u32> = (0..s.size() as u32).filter(|&x| m.element(x).is_coinjective()).collect();
        assert_eq!(rest.left.iter().copied().collect::<BTreeSet<_>>(), pt);
    }
}

#[test]
fn orders_on_partition_monoid_with_kernels() {
    let n = 3;
    let (m, f) = with_semilattice(Family::P, n, SemilatticeKind::F);
    let s = m.table();
    let report = check_axioms(s, &f);
    let r = leq_r(s, &f, &report).unwrap();
    let l = leq_l(s, &f, &report).unwrap();
    assert!(r.is_partial_order() && l.is_partial_order());
    for (x, a) in m.elements().iter().enumerate() {
        for (y, b) in m.elements().iter().enumerate() {
            let lower_kept = b.lower_nontransversals().into_iter().all(|k| b.block_is_block_of(k, a));
            let upper_kept = b.upper_nontransversals().into_iter().all(|k| b.block_is_block_of(k, a));
            let coarser = b.refines(a).unwrap();
            assert_eq!(r.leq(x as u32, y as u32), coarser && lower_kept, "{a:?} ≤_r {b:?}");
            assert_eq!(l.leq(x as u32, y as u32), coarser && upper_kept, "{a:?} ≤_l {b:?}");
        }
    }
}

#[test]
fn primed_order_strips_upper_vertices() {
    let n = 3;
    let (m, e) = with_semilattice(Family::P, n, SemilatticeKind::E);
    let order = leq_r_prime(m.table(), &e).unwrap();
    assert!(order.is_partial_order());
    for (y, b) in m.elements().iter().enumerate() {
        let below: BTreeSet<Partition> = Subset::all(n).map(|h| Partition::id_subset(&h) * *b).collect();
        let got: BTreeSet<Partition> = order.down_set(y as u32).ones().map(|x| *m.element(x as u32)).collect();
        assert_eq!(got, below);
    }
    let (m, f) = with_semilattice(Family::RR, 2, SemilatticeKind::F);
    if m.table().identity().is_some_and(|one| f.contains(one)) {
        assert!(leq_r_prime(m.table(), &f).is_ok());
    }
}

#[test]
fn fixed_witnesses() {
    let w = witness_sets();
    let (m, e) = with_semilattice(Family::P, 2, SemilatticeKind::E);
    let s = m.table();
    let idx = |p: &Partition| m.index_of(p).unwrap();
    let report = check_axioms(s, &e);
    assert!(!report.holds(Axiom::L2) && !report.holds(Axiom::R2));
    assert!(report.witnesses_verify(s, &e));
    let t = w.not_e;
    let witness = Witness::Congruence { theta: idx(&t.theta), a: idx(&t.alpha), b: idx(&t.beta) };
    assert!(witness.verify(Axiom::L2, s, &e));

    let (m, g) = with_semilattice(Family::RP, 2, SemilatticeKind::F);
    let idx = |p: &Partition| m.index_of(p).unwrap();
    let t = w.rp2;
    let witness = Witness::Congruence { theta: idx(&t.theta), a: idx(&t.alpha), b: idx(&t.beta) };
    assert!(witness.verify(Axiom::L2, m.table(), &g));
    assert!(!check_axioms(m.table(), &g).holds(Axiom::L2));

    let (m, e) = with_semilattice(Family::P, 3, SemilatticeKind::E);
    let (a, b, ab) = w.r_e;
    assert_eq!(a * b, ab);
    let class = tilde_h_class(m.table(), &e, m.index_of(&Partition::identity(3)).unwrap()).unwrap();
    assert!(!class.closed);
    for p in [a, b] {
        assert!(class.members.contains(&m.index_of(&p).unwrap()));
    }
    assert!(!class.members.contains(&m.index_of(&ab).unwrap()));
}

fn double_factorial(k: usize) -> usize {
    (1..=k).filter(|i| i % 2 == 1).product()
}

#[test]
fn partial_brauer_tilde_classes_are_brauer() {
    for n in 0..=3 {
        let (m, e) = with_semilattice(Family::PB, n, SemilatticeKind::E);
        for a in Subset::all(n) {
            let class = tilde_h_class(m.table(), &e, m.index_of(&Partition::id_subset(&a)).unwrap()).unwrap();
            let k = a.len();
            assert_eq!(class.members.len(), double_factorial(2 * k), "A = {:?}", a.points());
            assert!(class.closed);
            for &x in &class.members {
                let p = m.element(x);
                assert_eq!(p.supp(), a);
                assert_eq!(p.cosupp(), a);
            }
        }
    }
}
