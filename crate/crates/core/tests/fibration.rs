mod common;

use std::collections::BTreeSet;

use common::*;
use mcg_core::calculus::{package_commutator, Relation};
use mcg_core::curves::CurveWord;
use mcg_core::fibration::{bounds_from, bounds_lookup, fiber_sum, from_commutator_relation, invariants, MonodromyFactorization, Source};
use mcg_core::homology::HomologyLattice;
use mcg_core::twist::CurveTable;
use proptest::prelude::*;

fn closed_genus_two() -> CurveTable {
    let t = genus_two();
    t.on_surface(&t.surface().with_caps(&BTreeSet::from([0, 1])).unwrap()).unwrap()
}

fn factorization(t: &CurveTable, names: &[&str]) -> MonodromyFactorization {
    let cycles: Vec<CurveWord> = names.iter().map(|n| t.get(n).unwrap().clone()).collect();
    MonodromyFactorization::new(t.surface(), vec![], cycles, true).unwrap()
}

fn four_curve() -> MonodromyFactorization {
    factorization(&closed_genus_two(), &["B0", "B1", "B2", "C", "B0", "B1", "B2", "C"])
}

#[test]
fn four_curve_pencil() {
    let inv = invariants(&four_curve()).unwrap();
    assert_eq!((inv.n, inv.euler, inv.reducible_count, inv.irreducible_count), (8, 4, 2, 6));
    assert!(inv.relatively_minimal);
    // the capped boundary curves bound disks in the closed fibre
    let with_disk = factorization(&closed_genus_two(), &["B0", "d1"]);
    assert!(!invariants(&with_disk).unwrap().relatively_minimal);
}

#[test]
fn two_copies_and_a_torus_summand() {
    let m = four_curve();
    let double = invariants(&fiber_sum(&m, &m).unwrap()).unwrap();
    assert_eq!((double.n, double.euler), (16, 12));
    let over_torus = fiber_sum(&m, &MonodromyFactorization::trivial(2, 1)).unwrap();
    assert_eq!(over_torus.base_genus, 1);
    let inv = invariants(&over_torus).unwrap();
    assert_eq!((inv.n, inv.euler), (8, 8));
}

#[test]
fn sphere_summand_changes_nothing() {
    let m = four_curve();
    let s = fiber_sum(&m, &MonodromyFactorization::trivial(2, 0)).unwrap();
    assert_eq!((s.base_genus, s.n(), s.pairs.len()), (m.base_genus, m.n(), m.pairs.len()));
    assert_eq!(invariants(&s).unwrap(), invariants(&m).unwrap());
}

#[test]
fn factorizations_need_closed_fibres() {
    let t = genus_two();
    assert!(MonodromyFactorization::new(t.surface(), vec![], vec![], true).is_err());
    let rel = Relation::new(t, word("c1 c3 ~c1 ~c3"), word("")).unwrap();
    let swap = [("c1".to_string(), "c3".to_string()), ("c3".to_string(), "c1".to_string())];
    let cr = package_commutator(&rel, &swap, "phi").unwrap();
    assert!(from_commutator_relation(&cr, 2).is_err());

    let closed = Relation::new(closed_genus_two(), word("c1 c3 ~c1 ~c3"), word("")).unwrap();
    let cr = package_commutator(&closed, &swap, "phi").unwrap();
    let mf = from_commutator_relation(&cr, 2).unwrap();
    assert_eq!((mf.base_genus, mf.n()), (1, 0));
    assert_eq!(invariants(&mf).unwrap().euler, 0);
    assert!(from_commutator_relation(&cr, 3).is_err());
}

#[test]
fn bounds_table() {
    let table: [(usize, [(usize, usize); 4]); 7] = [
        (1, [(12, 12), (12, 12), (12, 12), (12, 12)]),
        (2, [(7, 7), (6, 7), (5, 6), (5, 5)]),
        (3, [(3, 16), (2, 6), (1, 1), (1, 1)]),
        (4, [(4, 12), (2, 6), (1, 1), (1, 1)]),
        (5, [(5, 20), (2, 6), (1, 1), (1, 1)]),
        (6, [(6, 16), (2, 6), (1, 1), (1, 1)]),
        (7, [(6, 24), (2, 5), (1, 1), (1, 1)]),
    ];
    for (g, row) in table {
        for (h, want) in (0..=6).map(|h| (h, row[h.min(3)])) {
            let e = bounds_lookup(g, h).unwrap();
            assert_eq!((e.lower, e.upper), want, "N({g},{h})");
        }
    }
    assert!(bounds_lookup(0, 1).is_err());
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn new_sources_only_tighten(g in 1usize..40, h in 0usize..10) {
        let prior = bounds_from(g, h, &Source::PRIOR).unwrap();
        let all = bounds_from(g, h, &Source::ALL).unwrap();
        prop_assert!(all.lower >= prior.lower && all.upper <= prior.upper);
        prop_assert!(all.lower <= all.upper && prior.lower <= prior.upper);
        prop_assert!(all.sources.iter().all(|s| Source::ALL.contains(s)));
        prop_assert!(prior.sources.iter().all(|s| Source::PRIOR.contains(s)));
        let next = bounds_lookup(g, h + 1).unwrap();
        prop_assert!(next.upper <= all.upper);
        if g >= 3 && h == 0 {
            prop_assert_eq!(all.lower, (4 * g + 2).div_ceil(5));
        }
    }

    #[test]
    fn euler_is_additive_under_fibre_sum(
        a in prop::collection::vec(0usize..11, 0..10),
        b in prop::collection::vec(0usize..11, 0..10),
        ha in 0usize..3,
        hb in 0usize..3,
    ) {
        let t = closed_genus_two();
        let pick = |idx: &[usize], h: usize| {
            let cycles: Vec<CurveWord> = idx.iter().map(|&i| t.curves()[i].clone()).collect();
            let base = MonodromyFactorization::new(t.surface(), vec![], cycles, true).unwrap();
            fiber_sum(&base, &MonodromyFactorization::trivial(2, h)).unwrap()
        };
        let (x, y) = (pick(&a, ha), pick(&b, hb));
        let (ex, ey) = (invariants(&x).unwrap().euler, invariants(&y).unwrap().euler);
        let sum = invariants(&fiber_sum(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(sum.euler, ex + ey - 2 * (2 - 2 * 2));
        prop_assert_eq!(sum.n, a.len() + b.len());
    }

    #[test]
    fn reducible_fibres_are_the_null_homologous_cycles(idx in prop::collection::vec(0usize..9, 0..12)) {
        let t = closed_genus_two();
        let lattice = HomologyLattice::new(t.surface()).unwrap();
        let cycles: Vec<CurveWord> = idx.iter().map(|&i| t.curves()[i].clone()).collect();
        let expected = cycles
            .iter()
            .filter(|c| lattice.homology_class(c).unwrap().iter().all(|&x| x == 0))
            .count();
        let mf = MonodromyFactorization::new(t.surface(), vec![], cycles, true).unwrap();
        let inv = invariants(&mf).unwrap();
        prop_assert_eq!(inv.reducible_count, expected);
        prop_assert_eq!(inv.euler, -4 + idx.len() as i64);
    }
}
