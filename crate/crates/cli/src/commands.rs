use mcg_core::calculus::{package_commutator, reorder, slide, symbolic_expand, transport_left, CommutatorRelation, Relation};
use mcg_core::curves::{cut_along, CurveSystem, ExistenceCertificate};
use mcg_core::fibration::{
    bounds_from, fiber_sum, from_commutator_relation, invariants, FibrationInvariants, MonodromyFactorization, Source,
};
use mcg_core::parse::{parse_factorization_file, parse_script, parse_twist_word, Directive};
use mcg_core::twist::{action_on_system, TwistLetter, TwistWord};

use crate::catalog::{self, Expected, Kind};
use crate::check::run_checks;
use crate::load::{close_relation, host, load_relation, load_table, resolve, CliError, CliResult, Origin};
use crate::report::Report;

/// Name given to the mapping class built by `package`.
pub const SYMBOL: &str = "phi";

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Overrides the filling system named in the file.
    pub alexander: Option<Vec<String>>,
    pub screen_only: bool,
    pub transcript: bool,
}

fn add_checks(report: &mut Report, origin: &Origin, check: &str, rel: &Relation) -> CliResult<()> {
    let lines = run_checks(&rel.table, &origin.read(check)?).map_err(|source| CliError::Input {
        file: check.to_string(),
        source,
    })?;
    let failed: Vec<_> = lines.iter().filter(|l| !l.passed).collect();
    report.line(format!("curve data: {} of {} checks agree", lines.len() - failed.len(), lines.len()));
    for l in &failed {
        report.line(format!("  disagrees: {} (found {})", l.what, l.found));
    }
    report.outcome("curve data", failed.is_empty());
    Ok(())
}

fn certificate(report: &mut Report, cert: &mcg_core::twist::Certificate, transcript: bool) {
    if transcript {
        report.block("", cert.to_string().trim_end());
    } else {
        report.line(format!("{}: {}", cert.check, cert.verdict()));
        for e in cert.failures() {
            report.line(format!("  {}: {} != {}", e.label, e.lhs, e.rhs));
        }
        for n in &cert.notes {
            report.line(format!("  note: {n}"));
        }
    }
    report.outcome(&cert.check, cert.passed);
}

pub fn verify(target: &str, opts: &VerifyOptions) -> CliResult<Report> {
    let (origin, file, entry) = resolve(target)?;
    if entry.is_some_and(|e| e.kind != Kind::Relation) {
        return Err(CliError::Usage(format!("`{target}` is not a relation")));
    }
    let (rel, parsed) = load_relation(&origin, &file)?;
    let mut report = Report::new(format!("verify {target}"));
    let s = rel.table.surface();
    report.line(format!("relation: {rel}"));
    report.line(format!(
        "surface: genus {}, {} boundary components ({} capped)",
        s.genus(),
        s.boundary_count(),
        s.capped().len()
    ));
    if !rel.lift.is_empty() {
        report.line(format!("bordered lift: {}", rel.lift));
    }
    if let Some(check) = entry.and_then(|e| e.check) {
        add_checks(&mut report, &origin, check, &rel)?;
    }
    let screen = rel.screen()?;
    certificate(&mut report, &screen, opts.transcript);
    if opts.screen_only || !screen.passed {
        return Ok(report);
    }
    certificate(&mut report, &rel.verify()?, opts.transcript);
    let system = opts.alexander.clone().unwrap_or(parsed.alexander);
    if !system.is_empty() {
        let names: Vec<&str> = system.iter().map(String::as_str).collect();
        certificate(&mut report, &rel.alexander(&names)?, opts.transcript);
        if let Some(half) = &parsed.half {
            let table = rel.bordered_table()?;
            let w = parse_twist_word(&table, half, parsed.lines[3])?;
            let curves = names.iter().map(|n| table.get(n).cloned()).collect::<mcg_core::Result<Vec<_>>>()?;
            report.line(format!("action of {w} on the filling system:"));
            let action = action_on_system(&table, &w, &curves)?;
            for (c, image) in &action {
                report.line(format!("  {c} -> {}", image.as_deref().unwrap_or("(outside the system)")));
            }
            if !parsed.swaps.is_empty() {
                let sends = |a: &str, b: &str| action.iter().any(|(c, i)| c == a && i.as_deref() == Some(b));
                let ok = parsed.swaps.iter().all(|(a, b)| sends(a, b) && sends(b, a));
                report.outcome("half word swap", ok);
            }
        }
    }
    Ok(report)
}

/// Result of running a derivation script on one closed host.
#[derive(Clone, Debug)]
pub struct DeriveOutcome {
    pub genus: usize,
    pub relation: CommutatorRelation,
    pub expansion_agrees: bool,
    pub invariants: FibrationInvariants,
}

impl DeriveOutcome {
    pub fn h(&self) -> usize {
        self.relation.h()
    }

    pub fn n(&self) -> usize {
        self.relation.n()
    }
}

fn existence(report: &mut Report, cert: &ExistenceCertificate) {
    report.line(format!("mapping class exists: {} ({})", cert.exists, cert.reason));
    report.line("  source system cut:".to_string());
    report.block("    ", &cert.from.to_string());
    report.line("  target system cut:".to_string());
    report.block("    ", &cert.to.to_string());
}

fn derive_on(report: &mut Report, base: &Relation, directives: &[(usize, Directive)], g: usize) -> CliResult<DeriveOutcome> {
    report.line(format!("== closed genus {g}"));
    let mut rel = close_relation(base, g)?;
    report.line(format!("start: {rel}"));
    let mut packaged = None;
    for (line, d) in directives {
        let at = |e: mcg_core::Error| CliError::Input { file: format!("script line {line}"), source: e };
        match d {
            Directive::Genus(_) => continue,
            Directive::Slide { side, index, dir } => {
                rel = slide(&rel, *side, *index, *dir).map_err(at)?;
                report.line(format!("slide {side:?} {} {dir:?}: {rel}", index + 1));
            }
            Directive::Transport(names) => {
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                rel = transport_left(&rel, &names).map_err(at)?;
                report.line(format!("transport {}: {rel}", names.join(" ")));
            }
            Directive::Reorder { side, perm } => {
                rel = reorder(&rel, *side, perm).map_err(at)?;
                report.line(format!("reorder disjoint letters: {rel}"));
            }
            Directive::Package(pairs) => {
                let cr = package_commutator(&rel, pairs, SYMBOL).map_err(at)?;
                report.line(format!("package: {cr}"));
                packaged = Some(cr);
            }
        }
    }
    let defs = rel.table.definitions();
    if !defs.is_empty() {
        report.line("derived curves:".to_string());
        for (name, def) in defs {
            let conj = &def.conjugator;
            report.line(format!("  {name} = ({conj}) {} ({})", def.base, conj.inverse()));
        }
    }
    let cert = rel.verify()?;
    certificate(report, &cert, false);
    let Some(cr) = packaged else {
        return Err(CliError::Usage("the script never packages a commutator".into()));
    };
    for p in &cr.pairs {
        existence(report, &p.symbol.certificate);
    }
    let steps = symbolic_expand(&cr)?;
    report.line("expansion:".to_string());
    for s in &steps {
        let elim = if s.eliminations > 0 { format!(" ({} eliminations)", s.eliminations) } else { String::new() };
        report.line(format!("  {}{elim}: {}", s.rule, s.text));
    }
    report.line(format!("  expands back to the left side: {}", cr.source_lhs));
    let expansion_agrees = !steps.is_empty();
    let inv = invariants(&from_commutator_relation(&cr, g)?)?;
    report.line(format!("result: {cr}"));
    report.line(format!("h = {}, n = {}", cr.h(), cr.n()));
    report.block("  ", &inv.to_string());
    Ok(DeriveOutcome { genus: g, relation: cr, expansion_agrees, invariants: inv })
}

/// Runs a script on each requested genus. Failures of individual hosts are
/// reported and make the report fail.
pub fn derive(target: &str, genus: Option<&[usize]>) -> CliResult<(Report, Vec<DeriveOutcome>)> {
    let (origin, file, entry) = resolve(target)?;
    if entry.is_some_and(|e| e.kind != Kind::Script) {
        return Err(CliError::Usage(format!("`{target}` is not a derivation script")));
    }
    let script = parse_script(&origin.read(&file)?).map_err(|source| CliError::Input { file: file.clone(), source })?;
    let (base, _) = load_relation(&origin, &script.relation)?;
    if script.directives.iter().all(|(_, d)| matches!(d, Directive::Genus(_))) && genus.is_none() {
        let mut report = Report::new(format!("derive {target}"));
        report.line(format!("no rewriting directives; relation unchanged: {base}"));
        return Ok((report, Vec::new()));
    }
    let genera: Vec<usize> = match genus {
        Some(g) => g.to_vec(),
        None => script
            .directives
            .iter()
            .find_map(|(_, d)| if let Directive::Genus(g) = d { Some(g.clone()) } else { None })
            .unwrap_or_default(),
    };
    if genera.is_empty() {
        return Err(CliError::Usage("no genus given; add a `genus` line or pass --genus".into()));
    }
    let mut report = Report::new(format!("derive {target}"));
    report.line(format!("source: {base}"));
    let mut outcomes = Vec::new();
    for g in genera {
        match derive_on(&mut report, &base, &script.directives, g) {
            Ok(o) => {
                report.outcome(&format!("genus {g}"), o.relation.verification.passed && o.expansion_agrees);
                report.summarize(format!("genus {g} h"), o.h());
                report.summarize(format!("genus {g} n"), o.n());
                outcomes.push(o);
            }
            Err(CliError::Usage(m)) => return Err(CliError::Usage(m)),
            Err(e) => {
                report.line(format!("error: {e}"));
                report.outcome(&format!("genus {g}"), false);
            }
        }
    }
    Ok((report, outcomes))
}

pub fn cut(target: &str, names: &[String]) -> CliResult<Report> {
    let rel = match host(target)? {
        Some(r) => r,
        None => {
            let (origin, file, entry) = resolve(target)?;
            if entry.is_some_and(|e| e.kind != Kind::Relation) {
                return Err(CliError::Usage(format!("`{target}` does not name a surface with curves")));
            }
            load_relation(&origin, &file)?.0
        }
    };
    let table = &rel.table;
    let curves = names.iter().map(|n| table.get(n).cloned()).collect::<mcg_core::Result<Vec<_>>>()?;
    let system = CurveSystem::new(table.surface(), curves)?;
    let cr = cut_along(table.surface(), &system)?;
    let mut report = Report::new(format!("cut {target} {}", names.join(" ")));
    report.block("", &cr.to_string());
    report.summarize("components", cr.components.len());
    report.summarize("connected", cr.is_connected());
    Ok(report)
}

pub fn bounds(g: usize, h: usize, prior: bool) -> CliResult<Report> {
    let sources: &[Source] = if prior { &Source::PRIOR } else { &Source::ALL };
    let b = bounds_from(g, h, sources)?;
    let mut report = Report::new(format!("bounds {g} {h}{}", if prior { " --prior" } else { "" }));
    report.block("", &b.to_string());
    report.summarize("lower", b.lower);
    report.summarize("upper", b.upper);
    Ok(report)
}

/// Product of commutators `[X, Y] = X Y X⁻¹ Y⁻¹`.
fn commutator_product(pairs: &[(TwistWord, TwistWord)]) -> TwistWord {
    pairs.iter().fold(TwistWord::default(), |acc, (x, y)| {
        acc.concat(x).concat(y).concat(&x.inverse()).concat(&y.inverse())
    })
}

pub fn load_factorization(target: &str) -> CliResult<(MonodromyFactorization, Report)> {
    let (origin, file, entry) = resolve(target)?;
    if entry.is_some_and(|e| e.kind != Kind::Factorization) {
        return Err(CliError::Usage(format!("`{target}` is not a factorization")));
    }
    let tag = |source| CliError::Input { file: file.clone(), source };
    let parsed = parse_factorization_file(&origin.read(&file)?).map_err(tag)?;
    let table = load_table(&origin, &parsed.surface, &parsed.curves)?;
    let pairs = parsed
        .pairs
        .iter()
        .map(|(n, x, y)| Ok((parse_twist_word(&table, x, *n)?, parse_twist_word(&table, y, *n)?)))
        .collect::<mcg_core::Result<Vec<_>>>()
        .map_err(tag)?;
    let vanishing = parse_twist_word(&table, &parsed.vanishing.1, parsed.vanishing.0).map_err(tag)?;
    let lift = parse_twist_word(&table, &parsed.lift.1, parsed.lift.0).map_err(tag)?;
    let mut cycles = Vec::new();
    for l in vanishing.letters() {
        match l {
            TwistLetter::Twist { curve, sign: 1 } => cycles.push(table.get(curve)?.clone()),
            other => return Err(CliError::Usage(format!("vanishing cycle `{other}` is not a right-handed twist"))),
        }
    }
    let rel = Relation::with_lift(table.clone(), commutator_product(&pairs), vanishing, lift)?;
    let mut report = Report::new(format!("invariants {target}"));
    report.line(format!("monodromy: {rel}"));
    if let Some(check) = entry.and_then(|e| e.check) {
        add_checks(&mut report, &origin, check, &rel)?;
    }
    let cert = rel.verify()?;
    certificate(&mut report, &cert, false);
    let mf = MonodromyFactorization::new(table.surface(), pairs, cycles, cert.passed)?;
    Ok((mf, report))
}

pub fn invariants_cmd(target: &str, sum_trivial: Option<usize>) -> CliResult<(Report, FibrationInvariants)> {
    let (mut mf, mut report) = load_factorization(target)?;
    if let Some(h) = sum_trivial {
        mf = fiber_sum(&mf, &MonodromyFactorization::trivial(mf.fiber_genus, h))?;
        report.command.push_str(&format!(" --sum-trivial {h}"));
        report.line(format!("fiber sum with the trivial bundle over genus {h}"));
    }
    report.line(format!("fiber genus {}, base genus {}", mf.fiber_genus, mf.base_genus));
    let inv = invariants(&mf)?;
    report.block("", &inv.to_string());
    report.summarize("n", inv.n);
    report.summarize("euler", inv.euler);
    report.summarize("reducible", inv.reducible_count);
    Ok((report, inv))
}

pub fn catalog_list() -> Report {
    let mut report = Report::new("catalog list");
    for e in catalog::ENTRIES {
        let kind = match e.kind {
            Kind::Relation => "relation",
            Kind::Script => "script",
            Kind::Factorization => "factorization",
        };
        report.line(format!("{:<20} {:<14} {}", e.name, kind, e.about));
    }
    report.summarize("entries", catalog::ENTRIES.len());
    report
}

/// Runs every catalog entry and compares with its recorded outcome.
pub fn selftest() -> Report {
    let mut report = Report::new("selftest");
    for e in catalog::ENTRIES {
        let ok = match (e.kind, e.expected) {
            (Kind::Relation, Expected::Holds) => verify(e.name, &VerifyOptions::default()).map(|r| r.passed),
            (Kind::Script, Expected::Derives { h, n }) => derive(e.name, None)
                .map(|(r, out)| r.passed && !out.is_empty() && out.iter().all(|o| o.h() == h && o.n() == n)),
            (Kind::Factorization, Expected::Fibration { n, euler, reducible }) => {
                invariants_cmd(e.name, None).map(|(r, i)| {
                    r.passed && i.n == n && i.euler == euler && i.reducible_count == reducible
                })
            }
            _ => Ok(false),
        };
        let line = match &ok {
            Ok(true) => "pass".to_string(),
            Ok(false) => "fail".to_string(),
            Err(err) => format!("error: {err}"),
        };
        report.line(format!("{:<20} {line}", e.name));
        report.outcome(e.name, matches!(ok, Ok(true)));
    }
    report
}
