//! One line per acceptance criterion. Each criterion also has to finish
//! within ten seconds.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mcg_cli::commands::{self, VerifyOptions};
use mcg_cli::load::{load_relation, Origin};
use mcg_core::calculus::{symbolic_expand, Relation};
use mcg_core::curves::{cut_along, CurveSystem};
use mcg_core::fibration::{bounds_from, bounds_lookup, fiber_sum, invariants, MonodromyFactorization, Source};
use mcg_core::twist::{TwistLetter, TwistWord};

const LIMIT: Duration = Duration::from_secs(10);

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matsumoto_swap() -> Outcome {
    let r = commands::verify("matsumoto-bordered", &VerifyOptions::default()).map_err(|e| e.to_string())?;
    for key in ["curve data", "homology screen", "pi1 automorphism", "alexander", "half word swap"] {
        ensure(r.get(key) == Some("pass"), || format!("{key}: {:?}", r.get(key)))?;
    }
    ensure(r.body.iter().any(|l| l.trim() == "g3 -> g5"), || "g3 is not sent to g5".into())?;
    let (rel, _) = load_relation(&Origin::Catalog, "matsumoto-bordered.rel").map_err(|e| e.to_string())?;
    let cert = rel.verify().map_err(|e| e.to_string())?;
    let loops: Vec<&str> = cert.entries.iter().map(|e| e.label.as_str()).filter(|l| l.starts_with('e')).collect();
    ensure(loops == ["e1", "e2", "e3", "e4", "e5"] && cert.passed, || format!("generator images: {loops:?}"))
}

fn torus_relations() -> Outcome {
    for (name, rank) in [("torus-1", 2), ("torus-2", 3), ("torus-7", 8)] {
        let r = commands::verify(name, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.passed && r.get("pi1 automorphism") == Some("pass"), || format!("{name} fails"))?;
        let (rel, _) = load_relation(&Origin::Catalog, &format!("{name}.rel")).map_err(|e| e.to_string())?;
        let s = rel.table.surface();
        ensure(s.genus() == 1 && s.rank() == rank, || format!("{name} has rank {}", s.rank()))?;
    }
    Ok(())
}

fn derivation(target: &str, genera: &[usize], letters: &str, eliminations: usize) -> Outcome {
    let (r, outs) = commands::derive(target, Some(genera)).map_err(|e| e.to_string())?;
    ensure(r.passed && outs.len() == genera.len(), || format!("{target} report fails"))?;
    for o in &outs {
        let g = o.genus;
        ensure(o.h() == 1 && o.relation.positive_part.to_string() == letters, || format!("genus {g}: {}", o.relation))?;
        ensure(o.relation.verification.passed && o.expansion_agrees, || format!("genus {g}: not verified"))?;
        let cert = &o.relation.pairs[0].symbol.certificate;
        ensure(cert.exists && cert.from.is_connected() && cert.to.is_connected(), || {
            format!("genus {g}: complements not connected")
        })?;
        let steps = symbolic_expand(&o.relation).map_err(|e| e.to_string())?;
        ensure(steps.iter().map(|s| s.eliminations).sum::<usize>() == eliminations, || {
            format!("genus {g}: eliminations differ")
        })?;
    }
    Ok(())
}

fn six_twists() -> Outcome {
    derivation("thm1-1", &[3, 4, 5, 6], "B0' C B0 B1 B2 C", 2)?;
    let cut = commands::cut("sigma3", &["B2".into(), "d1".into()]).map_err(|e| e.to_string())?;
    ensure(cut.get("connected") == Some("true"), || "sigma3 minus B2, d1 is not connected".into())
}

fn five_twists() -> Outcome {
    derivation("thm1-2", &[7, 8, 9, 10], "b' b5' s3' b3 s4", 7)
}

fn negative_controls() -> Outcome {
    let (rel, _) = load_relation(&Origin::Catalog, "matsumoto-bordered.rel").map_err(|e| e.to_string())?;
    let fails = |rhs: TwistWord| -> Result<bool, String> {
        let m = Relation::new(rel.table.clone(), rel.lhs.clone(), rhs).map_err(|e| e.to_string())?;
        Ok(!m.screen().map_err(|e| e.to_string())?.passed || !m.verify().map_err(|e| e.to_string())?.passed)
    };
    let letters = rel.rhs.letters();
    let mut tried = 0;
    for i in 0..letters.len() {
        let mut dropped = letters.to_vec();
        dropped.remove(i);
        ensure(fails(TwistWord::new(dropped))?, || format!("dropping letter {} still verifies", i + 1))?;
        for c in rel.table.curves() {
            for right in [true, false] {
                let l = if right { TwistLetter::right(c.name()) } else { TwistLetter::left(c.name()) };
                if l == letters[i] {
                    continue;
                }
                let mut m = letters.to_vec();
                m[i] = l.clone();
                tried += 1;
                ensure(fails(TwistWord::new(m))?, || format!("letter {} -> {l} still verifies", i + 1))?;
            }
        }
    }
    let closed = rel.table.surface().with_caps(&BTreeSet::from([0, 1])).map_err(|e| e.to_string())?;
    let c = rel.table.get("C").map_err(|e| e.to_string())?.clone();
    let system = CurveSystem::new(&closed, vec![c]).map_err(|e| e.to_string())?;
    let report = cut_along(&closed, &system).map_err(|e| e.to_string())?;
    let profile: Vec<(usize, usize)> = report.components.iter().map(|p| (p.genus, p.boundary_count)).collect();
    ensure(profile == [(1, 1), (1, 1)], || format!("cut along C: {profile:?}"))?;
    ensure(tried > 100, || format!("only {tried} mutations"))
}

fn properties() -> Outcome {
    let failed: Vec<String> = common::PROPERTIES
        .iter()
        .filter_map(|(name, check)| check(100).err().map(|e| format!("{name}: {e}")))
        .collect();
    ensure(failed.is_empty(), || failed.join("; "))
}

fn fibrations() -> Outcome {
    let (_, inv) = commands::invariants_cmd("matsumoto-fib", None).map_err(|e| e.to_string())?;
    ensure((inv.n, inv.euler, inv.reducible_count) == (8, 4, 2), || format!("{inv:?}"))?;
    let (mf, _) = commands::load_factorization("matsumoto-fib").map_err(|e| e.to_string())?;
    let summed = fiber_sum(&mf, &MonodromyFactorization::trivial(2, 1)).map_err(|e| e.to_string())?;
    let inv = invariants(&summed).map_err(|e| e.to_string())?;
    ensure(summed.base_genus == 1 && inv.n == 8, || format!("trivial torus summand: {inv:?}"))?;

    let table: [(usize, [(usize, usize); 4]); 7] = [
        (1, [(12, 12), (12, 12), (12, 12), (12, 12)]),
        (2, [(7, 7), (6, 7), (5, 6), (5, 5)]),
        (3, [(3, 16), (2, 16), (1, 1), (1, 1)]),
        (4, [(4, 12), (2, 12), (1, 1), (1, 1)]),
        (5, [(5, 20), (2, 20), (1, 1), (1, 1)]),
        (6, [(6, 16), (2, 16), (1, 1), (1, 1)]),
        (7, [(6, 24), (2, 24), (1, 1), (1, 1)]),
    ];
    for (g, row) in table {
        for h in 0..=6 {
            let e = bounds_from(g, h, &Source::PRIOR).map_err(|e| e.to_string())?;
            let want = row[h.min(3)];
            ensure((e.lower, e.upper) == want, || format!("N({g},{h}) = {}..{}, table {want:?}", e.lower, e.upper))?;
        }
    }
    for g in 3..=30 {
        let e = bounds_lookup(g, 1).map_err(|e| e.to_string())?;
        let upper = if g >= 7 { 5 } else { 6 };
        ensure(e.upper == upper && e.lower == 2, || format!("N({g},1) = {}..{}", e.lower, e.upper))?;
        let e = bounds_lookup(g, 0).map_err(|e| e.to_string())?;
        ensure(e.lower == (4 * g + 2).div_ceil(5), || format!("N({g},0) lower bound {}", e.lower))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("four-curve relation with the half-word swap", matsumoto_swap),
        ("holed torus relations", torus_relations),
        ("one commutator and six twists, genus 3 to 6", six_twists),
        ("one commutator and five twists, genus 7 to 10", five_twists),
        ("negative controls", negative_controls),
        ("property suites", properties),
        ("fibration invariants and bounds", fibrations),
    ];
    let mut all = true;
    for (i, (what, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| ensure(elapsed < LIMIT, || format!("took {elapsed:?}")));
        let verdict = if result.is_ok() { "pass" } else { "fail" };
        println!("criterion {}: {verdict}  {what} ({:.2}s)", i + 1, elapsed.as_secs_f64());
        if let Err(e) = result {
            println!("  {e}");
            all = false;
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
