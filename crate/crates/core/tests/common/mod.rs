#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use mcg_core::curves::{geometric_intersection, CurveWord};
use mcg_core::surface::{HalfEdge, RibbonGraph, Surface};
use mcg_core::twist::{CurveTable, TwistLetter, TwistWord};
use mcg_core::word::{letter, FreeWord};
use proptest::prelude::*;

pub fn one_vertex(edges: &[&str], order: &[(&str, bool)]) -> Surface {
    Surface::analyze(RibbonGraph::one_vertex(edges, order).unwrap(), &BTreeSet::new()).unwrap()
}

/// The neighbourhood of a chain of `n` curves, generators `e1 … en`.
pub fn chain(n: usize) -> Surface {
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut order = vec![(refs[0], true)];
    for i in 1..n {
        order.push((refs[i], true));
        order.push((refs[i - 1], false));
    }
    order.push((refs[n - 1], false));
    one_vertex(&refs, &order)
}

pub fn torus() -> Surface {
    one_vertex(&["a", "b"], &[("a", true), ("b", true), ("a", false), ("b", false)])
}

pub fn table(surface: &Surface, curves: &[(&str, &str)]) -> CurveTable {
    let mut t = CurveTable::new(surface);
    for (name, word) in curves {
        t.insert(CurveWord::parse(surface, *name, word).unwrap()).unwrap();
    }
    t
}

/// Genus 2 with two holes and the curves of the chain relation and of the
/// four-curve half relation.
pub fn genus_two() -> CurveTable {
    table(
        &chain(5),
        &[
            ("c1", "e1"),
            ("c2", "e2"),
            ("c3", "e3"),
            ("c4", "e4"),
            ("c5", "e5"),
            ("B0", "e2- e3 e4-"),
            ("B1", "e3- e4 e5-"),
            ("B2", "e1- e2 e3-"),
            ("C", "e2 e3- e2- e3"),
            ("d1", "e2 e4 e5- e4- e3- e2- e1-"),
            ("d2", "e3 e5 e1"),
        ],
    )
}

pub fn word(text: &str) -> TwistWord {
    TwistWord::parse(text, &[]).unwrap()
}

/// Embedded curves among all cyclically reduced words of length at most
/// `max_len`, one per unoriented class.
pub fn simple_curves(surface: &Surface, max_len: usize) -> Vec<CurveWord> {
    let n = surface.rank();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i32>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        if !cur.is_empty() {
            let w = FreeWord::from_letters(cur.iter().copied());
            if w.len() == cur.len() && w.is_cyclically_reduced() && !w.is_proper_power() && seen.insert(w.unoriented_normal_form()) {
                let c = CurveWord::new(surface, format!("x{}", out.len()), w).unwrap();
                if c.is_embedded() {
                    out.push(c);
                }
            }
        }
        if cur.len() < max_len {
            for g in 0..n {
                for plus in [true, false] {
                    let l = letter(g, plus);
                    if cur.last() != Some(&-l) {
                        let mut next = cur.clone();
                        next.push(l);
                        stack.push(next);
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| (c.word().len(), c.word().letters().to_vec()));
    out
}

/// Independent genus count: boundary cycles of a one-vertex ribbon graph
/// are the cycles of `rotation ∘ pairing` on half-edges.
pub fn oracle_genus_and_boundaries(rotation: &[HalfEdge]) -> (usize, usize) {
    let m = rotation.len();
    if m == 0 {
        return (0, 1);
    }
    let pos = |h: HalfEdge| rotation.iter().position(|&x| x == h).unwrap();
    let mut seen = vec![false; m];
    let mut cycles = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = (pos(rotation[p].opposite()) + 1) % m;
        }
    }
    let edges = m / 2;
    // 1 - E = 2 - 2g - k
    let g = (1 + edges - cycles) / 2;
    (g, cycles)
}

/// A random cyclic order of the `2n` half-edges of `n` loops.
pub fn rotation_strategy(max_edges: usize) -> impl Strategy<Value = (usize, Vec<HalfEdge>)> {
    (1..=max_edges).prop_flat_map(|n| {
        let halves: Vec<HalfEdge> = (0..n).flat_map(|e| [HalfEdge::new(e, true), HalfEdge::new(e, false)]).collect();
        Just(halves).prop_shuffle().prop_map(move |r| (n, r))
    })
}

pub fn ribbon_from(n: usize, rotation: &[HalfEdge]) -> RibbonGraph {
    let edges = (0..n).map(|i| format!("x{i}")).collect();
    RibbonGraph::new(edges, vec![rotation.to_vec()]).unwrap()
}

/// A random signed word in the named curves.
pub fn twist_word_strategy(names: Vec<String>, max_len: usize) -> impl Strategy<Value = TwistWord> {
    let n = names.len();
    prop::collection::vec((0..n, prop::bool::ANY), 0..=max_len).prop_map(move |ls| {
        TwistWord::new(
            ls.into_iter()
                .map(|(i, right)| if right { TwistLetter::right(&names[i]) } else { TwistLetter::left(&names[i]) })
                .collect(),
        )
    })
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

pub struct ChainCurves {
    pub surface: Surface,
    pub curves: Vec<CurveWord>,
    /// Index pairs of distinct disjoint curves.
    pub disjoint: Vec<(usize, usize)>,
    /// Index pairs of curves meeting once.
    pub once: Vec<(usize, usize)>,
    pub table: CurveTable,
}

impl ChainCurves {
    pub fn names(&self) -> Vec<String> {
        self.curves.iter().map(|c| c.name().to_string()).collect()
    }
}

/// Simple curves of length at most 4 on the genus 2 surface with two holes.
pub fn chain_curves() -> &'static ChainCurves {
    static CELL: OnceLock<ChainCurves> = OnceLock::new();
    CELL.get_or_init(|| {
        let surface = chain(5);
        let curves = simple_curves(&surface, 4);
        let (mut disjoint, mut once) = (Vec::new(), Vec::new());
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                match geometric_intersection(&surface, &curves[i], &curves[j]).unwrap() {
                    0 => disjoint.push((i, j)),
                    1 => once.push((i, j)),
                    _ => {}
                }
            }
        }
        let mut table = CurveTable::new(&surface);
        for c in &curves {
            table.insert(c.clone()).unwrap();
        }
        ChainCurves { surface, curves, disjoint, once, table }
    })
}
