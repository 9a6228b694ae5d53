mod common;

use common::*;
use mcg_core::calculus::{
    package_commutator, reorder, reorder_disjoint, slide, symbolic_expand, transport_left, Direction, Relation, Side,
};
use mcg_core::curves::{exists_mapping_class, CurveSystem};
use mcg_core::twist::{TwistLetter, TwistWord};
use mcg_core::Error;
use proptest::prelude::*;

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn trivial(t: &mcg_core::twist::CurveTable, w: &TwistWord) -> Relation {
    Relation::new(t.clone(), w.clone(), w.clone()).unwrap()
}

#[test]
fn slide_builds_one_definition() {
    let t = genus_two();
    let rel = Relation::new(t, word("(B0 B1 B2 C)^2"), word("d1 d2")).unwrap();
    assert!(rel.verify().unwrap().passed);
    let once = slide(&rel, Side::Lhs, 2, Direction::Left).unwrap();
    assert_eq!(once.lhs.to_string(), "B0 B2' B1 C B0 B1 B2 C");
    let twice = slide(&once, Side::Lhs, 1, Direction::Left).unwrap();
    assert_eq!(twice.lhs.to_string(), "B2' B0 B1 C B0 B1 B2 C");
    assert_eq!(twice.table.definition("B2'").unwrap().to_string(), "(B0 B1) B2 (~B1 ~B0)");
    assert!(twice.verify().unwrap().passed);
}

#[test]
fn slide_past_a_disjoint_letter_keeps_the_name() {
    let t = genus_two();
    let rel = trivial(&t, &word("c1 c3"));
    let out = slide(&rel, Side::Rhs, 1, Direction::Left).unwrap();
    assert_eq!(out.rhs.to_string(), "c3 c1");
    assert!(slide(&rel, Side::Rhs, 0, Direction::Left).is_err());
    assert!(slide(&rel, Side::Rhs, 1, Direction::Right).is_err());
}

#[test]
fn reorder_refuses_intersecting_letters() {
    let t = genus_two();
    assert_eq!(
        reorder_disjoint(&t, &word("c1 c2"), &[1, 0]).unwrap_err(),
        Error::Intersecting("c1".into(), "c2".into())
    );
    assert_eq!(reorder_disjoint(&t, &word("c1 c3 c5"), &[2, 0, 1]).unwrap().to_string(), "c5 c1 c3");
    assert!(reorder_disjoint(&t, &word("c1 c3"), &[0, 0]).is_err());
    let rel = trivial(&t, &word("c1 c3 c2"));
    assert!(reorder(&rel, Side::Lhs, &[1, 0, 2]).unwrap().verify().unwrap().passed);
}

#[test]
fn transport_moves_letters_across() {
    let t = genus_two();
    let rel = Relation::new(t, word("(B0 B1 B2 C)^2"), word("d1 d2")).unwrap();
    let out = transport_left(&rel, &["d2"]).unwrap();
    assert_eq!(out.rhs.to_string(), "d1");
    assert_eq!(out.lhs.to_string(), "~d2 B0 B1 B2 C B0 B1 B2 C");
    assert!(out.verify().unwrap().passed);
    assert!(matches!(transport_left(&rel, &["c4"]), Err(Error::Rewrite(_))));
}

#[test]
fn package_swap_of_disjoint_curves() {
    let t = genus_two();
    let rel = Relation::new(t, word("c1 c3 ~c1 ~c3"), word("")).unwrap();
    let cr = package_commutator(&rel, &pairs(&[("c1", "c3"), ("c3", "c1")]), "phi").unwrap();
    assert_eq!((cr.h(), cr.n()), (1, 0));
    assert_eq!(cr.to_string(), "[c1 c3, phi] = 1");
    let steps = symbolic_expand(&cr).unwrap();
    assert_eq!(steps.len(), 4);
    assert_eq!(steps[1].eliminations, 2);
    assert_eq!(steps[3].text, "[c1 c3, phi]");
}

#[test]
fn degenerate_package_has_no_commutators() {
    let t = genus_two();
    let cr = package_commutator(&Relation::new(t.clone(), word(""), word("")).unwrap(), &[], "phi").unwrap();
    assert_eq!((cr.h(), cr.n()), (0, 0));
    assert_eq!(cr.to_string(), "1 = 1");
    assert!(symbolic_expand(&cr).unwrap().is_empty());
    let rel = Relation::new(t, word("c1 ~c1"), word("")).unwrap();
    assert!(matches!(package_commutator(&rel, &[], "phi"), Err(Error::Rewrite(_))));
}

#[test]
fn package_rejects_bad_input() {
    let t = genus_two();
    let rel = Relation::new(t.clone(), word("c1 c3 ~c1 ~c3"), word("")).unwrap();
    let err = package_commutator(&rel, &pairs(&[("c1", "c1"), ("c3", "c3")]), "phi").unwrap_err();
    assert!(matches!(err, Error::Rewrite(m) if m.contains("block mismatch")));
    let left = Relation::new(t.clone(), word("c1 ~c1"), word("~c2 c2")).unwrap();
    assert!(matches!(package_commutator(&left, &pairs(&[("c1", "c1")]), "phi"), Err(Error::Rewrite(_))));
    let false_rel = Relation::new(t, word("c1 ~c2"), word("")).unwrap();
    assert!(matches!(package_commutator(&false_rel, &pairs(&[("c1", "c2")]), "phi"), Err(Error::Rewrite(_))));
}

proptest! {
    #![proptest_config(config(120))]

    #[test]
    fn slides_keep_the_relation_true(
        w in twist_word_strategy(chain_curves().names(), 4),
        i in 0usize..4,
        left in any::<bool>(),
    ) {
        let fx = chain_curves();
        prop_assume!(w.len() >= 2);
        let i = i % w.len();
        let dir = if left { Direction::Left } else { Direction::Right };
        let rel = trivial(&fx.table, &w);
        match slide(&rel, Side::Rhs, i, dir) {
            Ok(out) => {
                prop_assert!(out.verify().unwrap().passed);
                prop_assert_eq!(out.rhs.len(), w.len());
                let signs = |x: &TwistWord| { let mut s: Vec<i32> = x.letters().iter().map(TwistLetter::sign).collect(); s.sort(); s };
                prop_assert_eq!(signs(&out.rhs), signs(&w));
            }
            Err(e) => prop_assert!(matches!(e, Error::Rewrite(_)) && (i == 0 && left || i + 1 == w.len() && !left)),
        }
    }

    #[test]
    fn slide_back_restores_the_curve(w in twist_word_strategy(chain_curves().names(), 4), i in 1usize..4) {
        let fx = chain_curves();
        prop_assume!(w.len() >= 2);
        let i = 1 + (i - 1) % (w.len() - 1);
        let rel = trivial(&fx.table, &w);
        let there = slide(&rel, Side::Rhs, i, Direction::Left).unwrap();
        let back = slide(&there, Side::Rhs, i - 1, Direction::Right).unwrap();
        let name = |r: &Relation| r.rhs.letters()[i].curve().unwrap().to_string();
        let class = |r: &Relation| r.table.get(&name(r)).unwrap().word().unoriented_normal_form();
        prop_assert_eq!(class(&back), class(&rel));
        prop_assert_eq!(back.rhs.letters()[i].sign(), w.letters()[i].sign());
    }

    #[test]
    fn transport_shortens_the_right_side(w in twist_word_strategy(chain_curves().names(), 4), pick in 0usize..4) {
        let fx = chain_curves();
        let right: Vec<&str> = w.letters().iter().filter(|l| l.sign() > 0).filter_map(TwistLetter::curve).collect();
        prop_assume!(!right.is_empty());
        let name = right[pick % right.len()];
        let out = transport_left(&trivial(&fx.table, &w), &[name]).unwrap();
        prop_assert_eq!(out.rhs.len(), w.len() - 1);
        prop_assert_eq!(out.lhs.len(), w.len() + 1);
        prop_assert!(out.verify().unwrap().passed);
    }

    #[test]
    fn swap_packages_exactly_when_a_swap_exists(i in 0usize..10_000) {
        let fx = chain_curves();
        let (p, q) = fx.disjoint[i % fx.disjoint.len()];
        let (x, y) = (fx.curves[p].name(), fx.curves[q].name());
        let lhs = TwistWord::new(vec![
            TwistLetter::right(x), TwistLetter::right(y), TwistLetter::left(x), TwistLetter::left(y),
        ]);
        let rel = Relation::new(fx.table.clone(), lhs, TwistWord::default()).unwrap();
        let from = CurveSystem::new(&fx.surface, vec![fx.curves[p].clone(), fx.curves[q].clone()]).unwrap();
        let to = CurveSystem::new(&fx.surface, vec![fx.curves[q].clone(), fx.curves[p].clone()]).unwrap();
        let exists = exists_mapping_class(&fx.surface, &from, &to).unwrap().exists;
        match package_commutator(&rel, &pairs(&[(x, y), (y, x)]), "phi") {
            Ok(cr) => {
                prop_assert!(exists);
                prop_assert_eq!((cr.h(), cr.n()), (1, 0));
                prop_assert!(symbolic_expand(&cr).is_ok());
            }
            Err(e) => prop_assert!(!exists && matches!(e, Error::Rewrite(_))),
        }
    }
}
