#![allow(dead_code)]

//! Shared fixtures and property checks over the catalog curves. Each check
//! runs its own proptest runner so that the property suite and the
//! acceptance report use the same code.

use mcg_cli::load::{host, load_relation, Origin};
use mcg_core::automorphism::{Automorphism, Hand};
use mcg_core::curves::geometric_intersection;
use mcg_core::homology::{word_matrix, HomologyLattice};
use mcg_core::twist::{curve_image, evaluate_twist_word, verify_relation, CurveTable, TwistLetter, TwistWord};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub fn catalog_table(file: &str) -> CurveTable {
    load_relation(&Origin::Catalog, file).unwrap().0.table
}

/// The bordered tables whose curves the properties range over.
pub fn bordered_tables() -> Vec<CurveTable> {
    ["matsumoto-bordered.rel", "torus-7.rel"].iter().map(|f| catalog_table(f)).collect()
}

/// Closed surfaces carrying catalog curves.
pub fn closed_tables() -> Vec<CurveTable> {
    let mut out = vec![catalog_table("matsumoto-closed.rel")];
    for g in [3, 4, 7] {
        out.push(host(&format!("sigma{g}")).unwrap().unwrap().table);
    }
    out
}

fn names(t: &CurveTable) -> Vec<String> {
    t.curves().iter().map(|c| c.name().to_string()).collect()
}

/// A table index with a random twist word of length at most `max_len` in
/// that table's curves.
fn table_and_word(count: usize, sizes: Vec<usize>, max_len: usize) -> impl Strategy<Value = (usize, Vec<(usize, bool)>)> {
    (0..count).prop_flat_map(move |t| {
        let n = sizes[t];
        (Just(t), prop::collection::vec((0..n, any::<bool>()), 0..=max_len))
    })
}

fn to_word(t: &CurveTable, letters: &[(usize, bool)]) -> TwistWord {
    let names = names(t);
    TwistWord::new(
        letters
            .iter()
            .map(|&(i, right)| if right { TwistLetter::right(&names[i]) } else { TwistLetter::left(&names[i]) })
            .collect(),
    )
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Twists about certified-disjoint catalog curves commute.
pub fn disjoint_twists_commute(cases: u32) -> Result<(), String> {
    let tables = bordered_tables();
    let mut pairs = Vec::new();
    for (k, t) in tables.iter().enumerate() {
        let cs = t.curves();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if geometric_intersection(t.surface(), &cs[i], &cs[j]).unwrap() == 0 {
                    pairs.push((k, cs[i].name().to_string(), cs[j].name().to_string()));
                }
            }
        }
    }
    finish(runner(cases).run(&(0..pairs.len(), any::<bool>(), any::<bool>()), |(p, sa, sb)| {
        let (k, a, b) = &pairs[p];
        let la = if sa { TwistLetter::right(a) } else { TwistLetter::left(a) };
        let lb = if sb { TwistLetter::right(b) } else { TwistLetter::left(b) };
        let ab = TwistWord::new(vec![la.clone(), lb.clone()]);
        let ba = TwistWord::new(vec![lb, la]);
        prop_assert!(verify_relation(&tables[*k], &ab, &ba).unwrap().passed);
        Ok(())
    }))
}

/// `t_{w(c)} = w t_c w⁻¹` for catalog curves `c` and twist words `w`.
pub fn conjugation_identity(cases: u32) -> Result<(), String> {
    let tables = bordered_tables();
    let sizes: Vec<usize> = tables.iter().map(|t| t.curves().len()).collect();
    let strategy = table_and_word(tables.len(), sizes, 3).prop_flat_map(|(k, w)| (Just(k), Just(w), 0usize..1000));
    finish(runner(cases).run(&strategy, |(k, letters, i)| {
        let t = &tables[k];
        let w = to_word(t, &letters);
        let c = &t.curves()[i % t.curves().len()];
        let f = evaluate_twist_word(t, &w).unwrap();
        let image = curve_image(t, &w, c.word()).unwrap();
        let direct = Automorphism::twist(t.surface(), &image, Hand::Right).unwrap();
        let tc = Automorphism::twist(t.surface(), c.word(), Hand::Right).unwrap();
        prop_assert!(direct.equals(&f.compose(&tc).unwrap().compose(&f.inverse()).unwrap()).unwrap());
        Ok(())
    }))
}

/// The action on homology is a homomorphism and agrees with the product of
/// transvections.
pub fn homology_functoriality(cases: u32) -> Result<(), String> {
    let tables = bordered_tables();
    let sizes: Vec<usize> = tables.iter().map(|t| t.curves().len()).collect();
    let strategy = table_and_word(tables.len(), sizes.clone(), 3).prop_flat_map(move |(k, u)| {
        (Just(k), Just(u), prop::collection::vec((0..sizes[k], any::<bool>()), 0..=3))
    });
    finish(runner(cases).run(&strategy, |(k, u, v)| {
        let t = &tables[k];
        let lattice = HomologyLattice::new(t.surface()).unwrap();
        let (u, v) = (to_word(t, &u), to_word(t, &v));
        let f = evaluate_twist_word(t, &u).unwrap();
        let g = evaluate_twist_word(t, &v).unwrap();
        let (mf, mg) = (lattice.matrix_of(&f).unwrap(), lattice.matrix_of(&g).unwrap());
        prop_assert_eq!(lattice.matrix_of(&f.compose(&g).unwrap()).unwrap(), mf.mul(&mg).unwrap());
        prop_assert_eq!(mf, word_matrix(&lattice, t, &u).unwrap());
        Ok(())
    }))
}

/// Every twist word fixes the boundary.
pub fn peripheral_preservation(cases: u32) -> Result<(), String> {
    let tables = bordered_tables();
    let sizes: Vec<usize> = tables.iter().map(|t| t.curves().len()).collect();
    finish(runner(cases).run(&table_and_word(tables.len(), sizes, 4), |(k, letters)| {
        let t = &tables[k];
        let f = evaluate_twist_word(t, &to_word(t, &letters)).unwrap();
        prop_assert!(f.peripheral_check(t.surface()));
        prop_assert!(f.fixes_boundary(t.surface()));
        Ok(())
    }))
}

/// Transvections of catalog curves on closed surfaces are symplectic.
pub fn transvections_symplectic(cases: u32) -> Result<(), String> {
    let tables = closed_tables();
    let lattices: Vec<HomologyLattice> = tables.iter().map(|t| HomologyLattice::new(t.surface()).unwrap()).collect();
    finish(runner(cases).run(&(0..tables.len(), 0usize..1000, any::<bool>()), |(k, i, right)| {
        let t = &tables[k];
        let lattice = &lattices[k];
        prop_assert!(t.surface().is_closed());
        let v = lattice.class_of(t.curves()[i % t.curves().len()].word());
        let hand = if right { Hand::Right } else { Hand::Left };
        prop_assert!(lattice.is_symplectic(&lattice.twist_matrix(&v, hand).unwrap()).unwrap());
        Ok(())
    }))
}

pub type Check = fn(u32) -> Result<(), String>;

pub const PROPERTIES: [(&str, Check); 5] = [
    ("disjoint twists commute", disjoint_twists_commute),
    ("conjugation identity", conjugation_identity),
    ("homology functoriality", homology_functoriality),
    ("peripheral preservation", peripheral_preservation),
    ("closed transvections symplectic", transvections_symplectic),
];
