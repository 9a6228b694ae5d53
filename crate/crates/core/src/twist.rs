//! Words in Dehn twists and their evaluation as groupoid automorphisms.
//!
//! A twist word is read in display order and evaluated functionally: the
//! word `x y z` is the mapping class `t_x ∘ t_y ∘ t_z`, so `z` acts first.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::automorphism::{Automorphism, Hand};
use crate::curves::{is_filling, CurveWord};
use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::word::FreeWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TwistLetter {
    /// Twist about a named curve; sign `+1` is right-handed.
    Twist { curve: String, sign: i32 },
    /// A mapping class known only through properties, such as `φ`.
    Formal { name: String, inverse: bool },
}

impl TwistLetter {
    pub fn right(curve: impl Into<String>) -> TwistLetter {
        TwistLetter::Twist { curve: curve.into(), sign: 1 }
    }

    pub fn left(curve: impl Into<String>) -> TwistLetter {
        TwistLetter::Twist { curve: curve.into(), sign: -1 }
    }

    pub fn formal(name: impl Into<String>) -> TwistLetter {
        TwistLetter::Formal { name: name.into(), inverse: false }
    }

    pub fn inverse(&self) -> TwistLetter {
        match self {
            TwistLetter::Twist { curve, sign } => TwistLetter::Twist { curve: curve.clone(), sign: -sign },
            TwistLetter::Formal { name, inverse } => TwistLetter::Formal { name: name.clone(), inverse: !inverse },
        }
    }

    pub fn curve(&self) -> Option<&str> {
        match self {
            TwistLetter::Twist { curve, .. } => Some(curve),
            TwistLetter::Formal { .. } => None,
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            TwistLetter::Twist { sign, .. } => *sign,
            TwistLetter::Formal { inverse, .. } => {
                if *inverse {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, TwistLetter::Formal { .. })
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistLetter::Twist { curve, sign } if *sign < 0 => write!(f, "~{curve}"),
            TwistLetter::Twist { curve, .. } => write!(f, "{curve}"),
            TwistLetter::Formal { name, inverse: true } => write!(f, "~{name}"),
            TwistLetter::Formal { name, .. } => write!(f, "{name}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistWord {
    letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn new(letters: Vec<TwistLetter>) -> TwistWord {
        TwistWord { letters }
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord { letters: self.letters.iter().rev().map(TwistLetter::inverse).collect() }
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord { letters }
    }

    pub fn slice(&self, from: usize, to: usize) -> TwistWord {
        TwistWord { letters: self.letters[from..to].to_vec() }
    }

    pub fn is_explicit(&self) -> bool {
        self.letters.iter().all(|l| !l.is_formal())
    }

    /// Parses whitespace separated letters: `name`, `~name` for the inverse,
    /// and parenthesised groups raised to a power, `(a b)^6`; `1` is the
    /// empty word. Names listed in `formal` become formal symbols.
    pub fn parse(text: &str, formal: &[&str]) -> Result<TwistWord> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let word = parse_seq(&tokens, &mut pos, formal)?;
        if pos != tokens.len() {
            return Err(Error::Invalid(format!("unbalanced `)` in `{text}`")));
        }
        Ok(word)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Name(String, bool),
    Open,
    Close(i64),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let is_name = |c: char| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.';
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            i += 1;
            let mut power = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                power = s.parse().map_err(|_| Error::Invalid(format!("bad exponent `{s}`")))?;
            }
            out.push(Token::Close(power));
        } else {
            let inverse = c == '~';
            if inverse {
                i += 1;
            }
            let start = i;
            while i < chars.len() && is_name(chars[i]) {
                i += 1;
            }
            if start == i {
                return Err(Error::Invalid(format!("unexpected character `{}`", chars.get(i).copied().unwrap_or(c))));
            }
            out.push(Token::Name(chars[start..i].iter().collect(), inverse));
        }
    }
    Ok(out)
}

fn parse_seq(tokens: &[Token], pos: &mut usize, formal: &[&str]) -> Result<TwistWord> {
    let mut letters = Vec::new();
    while *pos < tokens.len() {
        match &tokens[*pos] {
            Token::Name(n, false) if n == "1" => *pos += 1,
            Token::Name(n, inv) => {
                let l = if formal.contains(&n.as_str()) {
                    TwistLetter::Formal { name: n.clone(), inverse: *inv }
                } else {
                    TwistLetter::Twist { curve: n.clone(), sign: if *inv { -1 } else { 1 } }
                };
                letters.push(l);
                *pos += 1;
            }
            Token::Open => {
                *pos += 1;
                let inner = parse_seq(tokens, pos, formal)?;
                match tokens.get(*pos) {
                    Some(Token::Close(p)) => {
                        *pos += 1;
                        let unit = if *p < 0 { inner.inverse() } else { inner };
                        for _ in 0..p.unsigned_abs() {
                            letters.extend(unit.letters.iter().cloned());
                        }
                    }
                    _ => return Err(Error::Invalid("missing `)`".into())),
                }
            }
            Token::Close(_) => break,
        }
    }
    Ok(TwistWord { letters })
}

/// Named curves on one surface, with the definitions of curves produced by
/// rewriting.
#[derive(Clone, Debug)]
pub struct CurveTable {
    surface: Surface,
    curves: Vec<CurveWord>,
    index: BTreeMap<String, usize>,
    definitions: BTreeMap<String, Definition>,
}

/// A derived curve `image = conjugator(base)`, the conjugator acting as a
/// mapping class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub base: String,
    pub conjugator: TwistWord,
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {} ({})", self.conjugator, self.base, self.conjugator.inverse())
    }
}

impl CurveTable {
    pub fn new(surface: &Surface) -> CurveTable {
        CurveTable { surface: surface.clone(), curves: Vec::new(), index: BTreeMap::new(), definitions: BTreeMap::new() }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn curves(&self) -> &[CurveWord] {
        &self.curves
    }

    pub fn insert(&mut self, c: CurveWord) -> Result<()> {
        if self.index.contains_key(c.name()) {
            return Err(Error::Invalid(format!("curve `{}` declared twice", c.name())));
        }
        let c = CurveWord::new(&self.surface, c.name(), c.word().clone())?;
        self.index.insert(c.name().to_string(), self.curves.len());
        self.curves.push(c);
        Ok(())
    }

    /// Adds or replaces a curve produced by rewriting.
    pub fn define(&mut self, c: CurveWord, def: Definition) {
        let name = c.name().to_string();
        match self.index.get(&name) {
            Some(&i) => self.curves[i] = c,
            None => {
                self.index.insert(name.clone(), self.curves.len());
                self.curves.push(c);
            }
        }
        self.definitions.insert(name, def);
    }

    pub fn get(&self, name: &str) -> Result<&CurveWord> {
        self.index
            .get(name)
            .map(|&i| &self.curves[i])
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.get(name)
    }

    pub fn definitions(&self) -> &BTreeMap<String, Definition> {
        &self.definitions
    }

    /// The same curves on another model with the same generators, such as
    /// the bordered lift or a host surface carrying pushed-forward words.
    pub fn on_surface(&self, surface: &Surface) -> Result<CurveTable> {
        let mut t = CurveTable::new(surface);
        for c in &self.curves {
            t.index.insert(c.name().to_string(), t.curves.len());
            t.curves.push(CurveWord::new(surface, c.name(), c.word().clone())?);
        }
        t.definitions = self.definitions.clone();
        Ok(t)
    }

    /// Every curve letter of `w` names a curve of this table.
    pub fn check_word(&self, w: &TwistWord) -> Result<()> {
        for l in w.letters() {
            if let Some(c) = l.curve() {
                self.get(c)?;
            }
        }
        Ok(())
    }
}

/// Evaluates an explicit twist word on a bordered surface.
pub fn evaluate_twist_word(table: &CurveTable, w: &TwistWord) -> Result<Automorphism> {
    let surface = table.surface();
    if !surface.capped().is_empty() {
        return Err(Error::ClosedSurface);
    }
    let mut cache: BTreeMap<(String, i32), Automorphism> = BTreeMap::new();
    let mut acc = Automorphism::identity(surface);
    for l in w.letters() {
        match l {
            TwistLetter::Formal { name, .. } => return Err(Error::FormalSymbol(name.clone())),
            TwistLetter::Twist { curve, sign } => {
                let key = (curve.clone(), sign.signum());
                if !cache.contains_key(&key) {
                    let c = table.get(curve)?;
                    if !c.is_embedded() {
                        return Err(Error::NotEmbedded { name: curve.clone(), count: 1 });
                    }
                    cache.insert(key.clone(), Automorphism::twist(surface, c.word(), Hand::from_sign(*sign))?);
                }
                acc = acc.compose(&cache[&key])?;
            }
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub agree: bool,
}

/// Outcome of one check. The rendered form leaves out the timing so that
/// reports are reproducible.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub check: String,
    pub passed: bool,
    pub entries: Vec<TranscriptEntry>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Certificate {
    fn from_entries(check: &str, entries: Vec<TranscriptEntry>, start: Instant) -> Certificate {
        Certificate {
            check: check.to_string(),
            passed: entries.iter().all(|e| e.agree),
            entries,
            notes: Vec::new(),
            elapsed: start.elapsed(),
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &TranscriptEntry> {
        self.entries.iter().filter(|e| !e.agree)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.check, self.verdict())?;
        for e in &self.entries {
            let mark = if e.agree { "=" } else { "!=" };
            writeln!(f, "  {}: {} {} {}", e.label, e.lhs, mark, e.rhs)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

fn generator_label(surface: &Surface, g: usize) -> String {
    if g < surface.rank() {
        surface.generator_name(g).to_string()
    } else {
        format!("t{}", g - surface.rank() + 1)
    }
}

/// Compares the images of every groupoid generator under both sides.
pub fn verify_relation(table: &CurveTable, lhs: &TwistWord, rhs: &TwistWord) -> Result<Certificate> {
    let start = Instant::now();
    let surface = table.surface();
    let f = evaluate_twist_word(table, lhs)?;
    let g = evaluate_twist_word(table, rhs)?;
    let entries = f
        .images()
        .iter()
        .zip(g.images())
        .enumerate()
        .map(|(i, (a, b))| TranscriptEntry {
            label: generator_label(surface, i),
            lhs: surface.format_word(a),
            rhs: surface.format_word(b),
            agree: a == b,
        })
        .collect();
    Ok(Certificate::from_entries("pi1 automorphism", entries, start))
}

/// Compares free homotopy classes of the images of a filling system.
pub fn alexander_check(table: &CurveTable, lhs: &TwistWord, rhs: &TwistWord, system: &[CurveWord]) -> Result<Certificate> {
    let start = Instant::now();
    let surface = table.surface();
    if !is_filling(surface, system)? {
        return Err(Error::NotFilling);
    }
    let f = evaluate_twist_word(table, lhs)?;
    let g = evaluate_twist_word(table, rhs)?;
    let entries = system
        .iter()
        .map(|c| {
            let a = f.apply_curve(c.word());
            let b = g.apply_curve(c.word());
            TranscriptEntry {
                label: c.name().to_string(),
                agree: a.is_conjugate(&b),
                lhs: surface.format_word(&a.conjugacy_normal_form()),
                rhs: surface.format_word(&b.conjugacy_normal_form()),
            }
        })
        .collect();
    Ok(Certificate::from_entries("alexander", entries, start))
}

/// Where `w` sends each curve of `system`: the name of the system curve in
/// the same unoriented free homotopy class, if any.
pub fn action_on_system(table: &CurveTable, w: &TwistWord, system: &[CurveWord]) -> Result<Vec<(String, Option<String>)>> {
    let f = evaluate_twist_word(table, w)?;
    Ok(system
        .iter()
        .map(|c| {
            let image = f.apply_curve(c.word());
            let hit = system
                .iter()
                .find(|d| d.word().unoriented_normal_form() == image.unoriented_normal_form())
                .map(|d| d.name().to_string());
            (c.name().to_string(), hit)
        })
        .collect())
}

/// Curve word of `conjugator(base)`, acting on the free homotopy class.
pub fn curve_image(table: &CurveTable, conjugator: &TwistWord, base: &FreeWord) -> Result<FreeWord> {
    Ok(evaluate_twist_word(table, conjugator)?.apply_curve(base))
}
