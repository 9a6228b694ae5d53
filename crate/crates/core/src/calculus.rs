//! Rewriting of twist relations: conjugation slides, transport of letters
//! across the equals sign, reordering of commuting letters, and packaging a
//! relation `A·B = P` into `[A, φ] = P` for a formal mapping class `φ`.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::automorphism::{Automorphism, Hand};
use crate::curves::{bounds_disk, exists_mapping_class, geometric_intersection, CurveSystem, CurveWord, ExistenceCertificate};
use crate::error::{Error, Result};
use crate::homology::screen_relation;
use crate::twist::{
    alexander_check, verify_relation, Certificate, CurveTable, Definition, TwistLetter, TwistWord,
};

/// `lhs = rhs` in the mapping class group of the table's surface. On a
/// surface with caps the relation is certified through its bordered lift
/// `lhs · lift = rhs`, where every lift letter bounds a disk once capped.
#[derive(Clone, Debug)]
pub struct Relation {
    pub table: CurveTable,
    pub lhs: TwistWord,
    pub rhs: TwistWord,
    pub lift: TwistWord,
    pub notes: Vec<String>,
    cache: Arc<Mutex<Option<(u64, Certificate)>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl Relation {
    pub fn new(table: CurveTable, lhs: TwistWord, rhs: TwistWord) -> Result<Relation> {
        Relation::with_lift(table, lhs, rhs, TwistWord::default())
    }

    pub fn with_lift(table: CurveTable, lhs: TwistWord, rhs: TwistWord, lift: TwistWord) -> Result<Relation> {
        for w in [&lhs, &rhs, &lift] {
            table.check_word(w)?;
        }
        if !lift.is_explicit() {
            return Err(Error::Invalid("lift letters must be explicit twists".into()));
        }
        if !lift.is_empty() && table.surface().capped().is_empty() {
            return Err(Error::Invalid("lift letters only make sense on a surface with caps".into()));
        }
        Ok(Relation { table, lhs, rhs, lift, notes: Vec::new(), cache: Arc::new(Mutex::new(None)) })
    }

    pub fn side(&self, side: Side) -> &TwistWord {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }

    fn with_side(&self, side: Side, w: TwistWord, table: CurveTable) -> Relation {
        let mut r = Relation {
            table,
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            lift: self.lift.clone(),
            notes: self.notes.clone(),
            cache: Arc::new(Mutex::new(None)),
        };
        match side {
            Side::Lhs => r.lhs = w,
            Side::Rhs => r.rhs = w,
        }
        r
    }

    /// Hash of the surface, the words, and the curves they use.
    pub fn content_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.table.surface().fingerprint().hash(&mut h);
        for w in [&self.lhs, &self.rhs, &self.lift] {
            w.hash(&mut h);
            for l in w.letters() {
                if let Some(c) = l.curve().and_then(|c| self.table.get(c).ok()) {
                    c.word().hash(&mut h);
                }
            }
        }
        h.finish()
    }

    /// The table on the bordered model, where twists can be evaluated.
    pub fn bordered_table(&self) -> Result<CurveTable> {
        if self.table.surface().capped().is_empty() {
            Ok(self.table.clone())
        } else {
            self.table.on_surface(&self.table.surface().bordered())
        }
    }

    fn lifted_lhs(&self) -> Result<TwistWord> {
        for l in self.lift.letters() {
            let name = l.curve().unwrap_or_default();
            if !bounds_disk(self.table.surface(), self.table.get(name)?)? {
                return Err(Error::Invalid(format!("lift curve `{name}` does not bound a disk after capping")));
            }
        }
        Ok(self.lhs.concat(&self.lift))
    }

    /// Exact check on the bordered lift; cached by content hash.
    pub fn verify(&self) -> Result<Certificate> {
        let key = self.content_hash();
        if let Some((k, cert)) = self.cache.lock().expect("cache lock").as_ref() {
            if *k == key {
                return Ok(cert.clone());
            }
        }
        let mut cert = verify_relation(&self.bordered_table()?, &self.lifted_lhs()?, &self.rhs)?;
        if !self.table.surface().capped().is_empty() {
            cert.notes.push(if self.lift.is_empty() {
                "checked on the surface before capping".to_string()
            } else {
                format!("checked on the bordered lift with extra letters `{}`", self.lift)
            });
        }
        *self.cache.lock().expect("cache lock") = Some((key, cert.clone()));
        Ok(cert)
    }

    pub fn screen(&self) -> Result<Certificate> {
        screen_relation(&self.table, &self.lhs, &self.rhs)
    }

    pub fn alexander(&self, system: &[&str]) -> Result<Certificate> {
        let table = self.bordered_table()?;
        let curves = system.iter().map(|n| table.get(n).cloned()).collect::<Result<Vec<_>>>()?;
        alexander_check(&table, &self.lifted_lhs()?, &self.rhs, &curves)
    }

    fn occurrences(&self, name: &str) -> usize {
        [&self.lhs, &self.rhs, &self.lift]
            .iter()
            .flat_map(|w| w.letters())
            .filter(|l| l.curve() == Some(name))
            .count()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn explicit(l: &TwistLetter) -> Result<(&str, i32)> {
    match l {
        TwistLetter::Twist { curve, sign } => Ok((curve, *sign)),
        TwistLetter::Formal { name, .. } => Err(Error::FormalSymbol(name.clone())),
    }
}

/// Moves letter `i` of one side one place. Moving left past `x^ε` turns the
/// curve `c` into `t_x^ε(c)`; moving right past `y^η` turns it into
/// `t_y^{-η}(c)`. The mapping class of the side is unchanged.
///
/// A curve whose class changes gets a primed name. A curve that is already
/// primed and occurs once keeps its name, so repeated slides of one letter
/// build a single definition such as `B0' = (~B2 ~B1) B0 (B1 B2)`.
pub fn slide(rel: &Relation, side: Side, i: usize, dir: Direction) -> Result<Relation> {
    let word = rel.side(side);
    let j = match dir {
        Direction::Left if i >= 1 && i < word.len() => i - 1,
        Direction::Right if i + 1 < word.len() => i + 1,
        _ => return Err(Error::Rewrite(format!("no neighbour to slide letter {} past", i + 1))),
    };
    let (moving, sign) = explicit(&word.letters()[i])?;
    let (other, other_sign) = explicit(&word.letters()[j])?;
    let acting = match dir {
        Direction::Left => TwistLetter::Twist { curve: other.to_string(), sign: other_sign },
        Direction::Right => TwistLetter::Twist { curve: other.to_string(), sign: -other_sign },
    };
    let bordered = rel.table.surface().bordered();
    let c = rel.table.get(moving)?;
    let twist = Automorphism::twist(&bordered, rel.table.get(other)?.word(), Hand::from_sign(acting.sign()))?;
    let image = twist.apply_curve(c.word());
    let mut table = rel.table.clone();
    let name = if image.unoriented_normal_form() == c.word().unoriented_normal_form() {
        moving.to_string()
    } else {
        let (name, base, conj) = match rel.table.definition(moving) {
            Some(d) if rel.occurrences(moving) == 1 => (moving.to_string(), d.base.clone(), d.conjugator.clone()),
            Some(d) => (fresh_name(&rel.table, moving), d.base.clone(), d.conjugator.clone()),
            None => (fresh_name(&rel.table, moving), moving.to_string(), TwistWord::default()),
        };
        let conjugator = TwistWord::new(vec![acting]).concat(&conj);
        table.define(CurveWord::new(rel.table.surface(), name.clone(), image)?, Definition { base, conjugator });
        name
    };
    let mut letters = word.letters().to_vec();
    letters[i] = TwistLetter::Twist { curve: name, sign };
    letters.swap(i, j);
    Ok(rel.with_side(side, TwistWord::new(letters), table))
}

fn fresh_name(table: &CurveTable, base: &str) -> String {
    let mut name = format!("{base}'");
    while table.contains(&name) {
        name.push('\'');
    }
    name
}

/// Brings the named right-handed letters to the front of the right side, in
/// the order they first occur, by sliding the letters they pass; then
/// multiplies both sides on the left by the inverse of that prefix.
pub fn transport_left(rel: &Relation, names: &[&str]) -> Result<Relation> {
    let mut wanted: Vec<&str> = names.to_vec();
    let mut cur = rel.clone();
    let mut p = 0;
    while !wanted.is_empty() {
        let found = (p..cur.rhs.len()).find_map(|j| match &cur.rhs.letters()[j] {
            TwistLetter::Twist { curve, sign: 1 } => wanted.iter().position(|w| w == curve).map(|k| (j, k)),
            _ => None,
        });
        let Some((j, k)) = found else {
            return Err(Error::Rewrite(format!(
                "right-handed letter `{}` not found on the right side",
                wanted.join("`, `")
            )));
        };
        wanted.remove(k);
        for q in (p..j).rev() {
            cur = slide(&cur, Side::Rhs, q, Direction::Right)?;
        }
        p += 1;
    }
    let prefix = cur.rhs.slice(0, p);
    let rest = cur.rhs.slice(p, cur.rhs.len());
    let lhs = prefix.inverse().concat(&cur.lhs);
    let mut out = cur.with_side(Side::Rhs, rest, cur.table.clone());
    out.lhs = lhs;
    Ok(out)
}

/// Applies `perm` (new position `i` holds old letter `perm[i]`) after
/// checking that every pair of letters whose order changes commutes by
/// disjointness.
pub fn reorder_disjoint(table: &CurveTable, word: &TwistWord, perm: &[usize]) -> Result<TwistWord> {
    let n = word.len();
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::LengthMismatch(perm.len(), n));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Invalid("not a permutation".into()));
        }
        seen[p] = true;
    }
    let surface = table.surface();
    for a in 0..n {
        for b in a + 1..n {
            if perm[a] < perm[b] {
                continue;
            }
            let (x, _) = explicit(&word.letters()[perm[b]])?;
            let (y, _) = explicit(&word.letters()[perm[a]])?;
            if x != y && geometric_intersection(surface, table.get(x)?, table.get(y)?)? > 0 {
                return Err(Error::Intersecting(x.to_string(), y.to_string()));
            }
        }
    }
    Ok(TwistWord::new(perm.iter().map(|&p| word.letters()[p].clone()).collect()))
}

pub fn reorder(rel: &Relation, side: Side, perm: &[usize]) -> Result<Relation> {
    let w = reorder_disjoint(&rel.table, rel.side(side), perm)?;
    Ok(rel.with_side(side, w, rel.table.clone()))
}

/// A mapping class known only by where it sends some curves, with the
/// certificate that such a class exists.
#[derive(Clone, Debug)]
pub struct FormalSymbol {
    pub name: String,
    /// `(c, φ(c))` pairs.
    pub correspondences: Vec<(String, String)>,
    pub certificate: ExistenceCertificate,
}

impl FormalSymbol {
    pub fn image_of(&self, c: &str) -> Option<&str> {
        self.correspondences.iter().find(|(s, _)| s == c).map(|(_, t)| t.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CommutatorPair {
    pub word: TwistWord,
    pub symbol: FormalSymbol,
}

/// `∏ [A_j, φ_j] = P` with `P` a product of right-handed twists.
#[derive(Clone, Debug)]
pub struct CommutatorRelation {
    pub table: CurveTable,
    pub pairs: Vec<CommutatorPair>,
    pub positive_part: TwistWord,
    /// The explicit left side the commutators stand for.
    pub source_lhs: TwistWord,
    pub verification: Certificate,
}

impl CommutatorRelation {
    pub fn h(&self) -> usize {
        self.pairs.len()
    }

    pub fn n(&self) -> usize {
        self.positive_part.len()
    }

    pub fn commutator_text(&self) -> String {
        if self.pairs.is_empty() {
            return "1".into();
        }
        self.pairs
            .iter()
            .map(|p| format!("[{}, {}]", p.word, p.symbol.name))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CommutatorRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.commutator_text(), self.positive_part)
    }
}

/// Packages `A·B = P` as `[A, φ] = P`. `correspondences` lists `(c, φ(c))`
/// for the curves of `A`; the left side must split into `A` followed by
/// `φ A⁻¹ φ⁻¹` written out through those correspondences. The relation must
/// verify, and the classification test must certify that a mapping class
/// with the given correspondences exists.
pub fn package_commutator(rel: &Relation, correspondences: &[(String, String)], symbol: &str) -> Result<CommutatorRelation> {
    for l in rel.rhs.letters() {
        if explicit(l)?.1 != 1 {
            return Err(Error::Rewrite(format!("right side letter `{l}` is not right-handed")));
        }
    }
    let verification = rel.verify()?;
    if !verification.passed {
        return Err(Error::Rewrite("the relation does not verify".into()));
    }
    let m = correspondences.len();
    let base = CommutatorRelation {
        table: rel.table.clone(),
        pairs: Vec::new(),
        positive_part: rel.rhs.clone(),
        source_lhs: rel.lhs.clone(),
        verification,
    };
    if m == 0 {
        if !rel.lhs.is_empty() {
            return Err(Error::Rewrite("left side is not empty but no correspondences were given".into()));
        }
        return Ok(base);
    }
    if rel.lhs.len() != 2 * m {
        return Err(Error::Rewrite(format!(
            "left side has {} letters; {} correspondences need blocks of {m} and {m}",
            rel.lhs.len(),
            m
        )));
    }
    let a = rel.lhs.slice(0, m);
    let b = rel.lhs.slice(m, 2 * m);
    let map: BTreeMap<&str, &str> = correspondences.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
    if map.len() != m {
        return Err(Error::Rewrite("a curve has two correspondences".into()));
    }
    for (j, bl) in b.letters().iter().enumerate() {
        let al = &a.letters()[m - 1 - j];
        let (ac, asign) = explicit(al)?;
        let (bc, bsign) = explicit(bl)?;
        let Some(&target) = map.get(ac) else {
            return Err(Error::Rewrite(format!("no correspondence for `{ac}`")));
        };
        if target != bc || bsign != -asign {
            return Err(Error::Rewrite(format!(
                "block mismatch at letter {}: expected {} from {ac} -> {target}, found `{bl}`",
                m + j + 1,
                TwistLetter::Twist { curve: target.to_string(), sign: -asign }
            )));
        }
    }
    let surface = rel.table.surface();
    let pick = |names: Vec<&str>| -> Result<CurveSystem> {
        let curves = names.iter().map(|n| rel.table.get(n).cloned()).collect::<Result<Vec<_>>>()?;
        CurveSystem::new(surface, curves)
    };
    let from = pick(correspondences.iter().map(|(s, _)| s.as_str()).collect())?;
    let to = pick(correspondences.iter().map(|(_, t)| t.as_str()).collect())?;
    let certificate = exists_mapping_class(surface, &from, &to)?;
    if !certificate.exists {
        return Err(Error::Rewrite(format!("no mapping class realizes the correspondences: {}", certificate.reason)));
    }
    let symbol = FormalSymbol { name: symbol.to_string(), correspondences: correspondences.to_vec(), certificate };
    Ok(CommutatorRelation { pairs: vec![CommutatorPair { word: a, symbol }], ..base })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionStep {
    pub rule: String,
    pub text: String,
    pub eliminations: usize,
}

/// The algebra from the explicit left side to the commutator: rewrite the
/// second block through the correspondences, expand each `t_{φ(c)}` as
/// `φ t_c φ⁻¹`, cancel the inner `φ⁻¹φ`, and close the commutator. The
/// final check expands the commutators back and compares with the original
/// left side letter by letter.
pub fn symbolic_expand(cr: &CommutatorRelation) -> Result<Vec<ExpansionStep>> {
    let mut steps: Vec<Vec<String>> = vec![Vec::new(); 4];
    let mut elim = 0;
    let mut rebuilt = TwistWord::default();
    for pair in &cr.pairs {
        let phi = &pair.symbol.name;
        let inv = pair.word.inverse();
        let mut unresolved = Vec::new();
        let mut images = Vec::new();
        for l in inv.letters() {
            let (c, s) = explicit(l)?;
            match pair.symbol.image_of(c) {
                Some(t) => images.push(TwistLetter::Twist { curve: t.to_string(), sign: s }),
                None => unresolved.push(l.to_string()),
            }
        }
        if !unresolved.is_empty() {
            return Err(Error::Rewrite(format!("cannot eliminate {phi} from: {}", unresolved.join(", "))));
        }
        rebuilt = rebuilt.concat(&pair.word).concat(&TwistWord::new(images));
        let bar = |s: i32| if s < 0 { "~" } else { "" };
        let through: Vec<String> = inv
            .letters()
            .iter()
            .map(|l| format!("{}{phi}({})", bar(l.sign()), l.curve().unwrap_or_default()))
            .collect();
        let conjugated: Vec<String> = inv.letters().iter().map(|l| format!("{phi} {l} ~{phi}")).collect();
        elim += inv.len();
        steps[0].push(format!("({}) {}", pair.word, through.join(" ")));
        steps[1].push(format!("({}) {}", pair.word, conjugated.join(" ")));
        steps[2].push(format!("({}) {phi} ({}) ~{phi}", pair.word, inv));
        steps[3].push(format!("[{}, {phi}]", pair.word));
    }
    if rebuilt != cr.source_lhs {
        return Err(Error::Rewrite(format!("expansion gives `{rebuilt}`, expected `{}`", cr.source_lhs)));
    }
    if cr.pairs.is_empty() {
        return Ok(Vec::new());
    }
    let phi = &cr.pairs[0].symbol.name;
    let rules = [
        ("second block through the correspondences".to_string(), 0),
        (format!("t_{phi}(c) = {phi} t_c ~{phi}"), elim),
        (format!("cancel ~{phi} {phi}"), 0),
        (format!("[X, {phi}] = X {phi} ~X ~{phi}"), 0),
    ];
    Ok(steps
        .into_iter()
        .zip(rules)
        .map(|(parts, (rule, eliminations))| ExpansionStep {
            rule,
            text: parts.join(" "),
            eliminations,
        })
        .collect())
}
