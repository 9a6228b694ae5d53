//! Plain-text input formats. Every format is line based, `#` starts a
//! comment, and errors carry the 1-based line number.

use std::collections::BTreeSet;

use crate::curves::CurveWord;
use crate::error::{Error, Result};
use crate::surface::{HalfEdge, RibbonGraph, Surface};
use crate::twist::{CurveTable, TwistWord};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Attaches a line number to errors that do not carry one.
pub fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

/// Non-empty lines with comments removed, numbered from 1.
pub fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// Splits `key: value` or `key = value` at the first separator.
pub fn key_value(line: &str) -> Option<(&str, &str)> {
    let i = line.find([':', '='])?;
    Some((line[..i].trim(), line[i + 1..].trim()))
}

/// `edges: a b …`, then one `vertex:` line per vertex with signed half-edges
/// `a+`/`a-` in counterclockwise order, then optional `cap: <index>` lines.
pub fn parse_surface(text: &str) -> Result<Surface> {
    let mut edges: Option<Vec<String>> = None;
    let mut vertices: Vec<Vec<HalfEdge>> = Vec::new();
    let mut caps: Vec<(usize, usize)> = Vec::new();
    for (n, line) in content_lines(text) {
        let Some((key, value)) = key_value(line) else {
            return Err(parse_err(n, format!("expected `key: value`, found `{line}`")));
        };
        match key {
            "edges" => {
                if edges.is_some() {
                    return Err(parse_err(n, "second `edges:` line"));
                }
                edges = Some(value.split_whitespace().map(str::to_string).collect());
            }
            "vertex" => {
                let Some(names) = edges.as_ref() else {
                    return Err(parse_err(n, "`vertex:` before `edges:`"));
                };
                let mut v = Vec::new();
                for tok in value.split_whitespace() {
                    let (label, plus) = match tok.strip_suffix('+') {
                        Some(l) => (l, true),
                        None => match tok.strip_suffix('-') {
                            Some(l) => (l, false),
                            None => return Err(parse_err(n, format!("half-edge `{tok}` needs a `+` or `-` suffix"))),
                        },
                    };
                    let Some(e) = names.iter().position(|x| x == label) else {
                        return Err(parse_err(n, format!("undeclared edge label `{label}`")));
                    };
                    v.push(HalfEdge::new(e, plus));
                }
                vertices.push(v);
            }
            "cap" => {
                let b = value.parse().map_err(|_| parse_err(n, format!("bad boundary index `{value}`")))?;
                caps.push((n, b));
            }
            _ => return Err(parse_err(n, format!("unknown key `{key}`"))),
        }
    }
    let Some(edges) = edges else {
        return Err(parse_err(1, "missing `edges:` line"));
    };
    if vertices.is_empty() {
        vertices.push(Vec::new());
    }
    let ribbon = at_line(1, RibbonGraph::new(edges, vertices))?;
    let open = at_line(1, Surface::analyze(ribbon.clone(), &BTreeSet::new()))?;
    for &(n, b) in &caps {
        if b >= open.bordered_boundary_count() {
            return Err(parse_err(n, format!("no boundary cycle {b}")));
        }
    }
    at_line(1, Surface::analyze(ribbon, &caps.iter().map(|&(_, b)| b).collect()))
}

/// `name = <edge letters>` per line.
pub fn parse_curves(surface: &Surface, text: &str) -> Result<CurveTable> {
    let mut table = CurveTable::new(surface);
    for (n, line) in content_lines(text) {
        let Some((name, word)) = line.split_once('=') else {
            return Err(parse_err(n, format!("expected `name = letters`, found `{line}`")));
        };
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) || name.starts_with('~') {
            return Err(parse_err(n, format!("bad curve name `{name}`")));
        }
        let c = at_line(n, CurveWord::parse(surface, name, word.trim()))?;
        at_line(n, table.insert(c))?;
    }
    Ok(table)
}

/// Fields of a relation file. Paths are as written in the file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationFile {
    pub surface: String,
    pub curves: String,
    pub lhs: String,
    pub rhs: String,
    pub lift: String,
    pub alexander: Vec<String>,
    pub half: Option<String>,
    /// Pairs of filling curves the half word is expected to exchange.
    pub swaps: Vec<(String, String)>,
    /// Line numbers of `lhs`, `rhs`, `lift`, `half`.
    pub lines: [usize; 4],
}

pub fn parse_relation_file(text: &str) -> Result<RelationFile> {
    let mut f = RelationFile::default();
    let mut seen = BTreeSet::new();
    for (n, line) in content_lines(text) {
        let Some((key, value)) = key_value(line) else {
            return Err(parse_err(n, format!("expected `key: value`, found `{line}`")));
        };
        if !seen.insert(key.to_string()) {
            return Err(parse_err(n, format!("duplicate key `{key}`")));
        }
        let value = value.to_string();
        match key {
            "surface" => f.surface = value,
            "curves" => f.curves = value,
            "lhs" => (f.lhs, f.lines[0]) = (value, n),
            "rhs" => (f.rhs, f.lines[1]) = (value, n),
            "lift" => (f.lift, f.lines[2]) = (value, n),
            "alexander" => f.alexander = value.split_whitespace().map(str::to_string).collect(),
            "half" => (f.half, f.lines[3]) = (Some(value), n),
            "swap" => {
                let names: Vec<&str> = value.split_whitespace().collect();
                if !names.len().is_multiple_of(2) {
                    return Err(parse_err(n, "`swap:` takes pairs of curve names"));
                }
                f.swaps = names.chunks(2).map(|p| (p[0].to_string(), p[1].to_string())).collect();
            }
            _ => return Err(parse_err(n, format!("unknown key `{key}`"))),
        }
    }
    for (k, v) in [("surface", &f.surface), ("curves", &f.curves)] {
        if v.is_empty() {
            return Err(parse_err(1, format!("missing `{k}:`")));
        }
    }
    if f.lines[0] == 0 || f.lines[1] == 0 {
        return Err(parse_err(1, "missing `lhs =` or `rhs =`"));
    }
    if !f.swaps.is_empty() && f.half.is_none() {
        return Err(parse_err(1, "`swap:` needs a `half =` word"));
    }
    Ok(f)
}

/// Parses a twist word whose curve names must all appear in `table`.
pub fn parse_twist_word(table: &CurveTable, text: &str, line: usize) -> Result<TwistWord> {
    let w = at_line(line, TwistWord::parse(text, &[]))?;
    at_line(line, table.check_word(&w))?;
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    /// Rewrite on a closed host of each listed genus.
    Genus(Vec<usize>),
    /// 0-based position.
    Slide { side: crate::calculus::Side, index: usize, dir: crate::calculus::Direction },
    Transport(Vec<String>),
    /// 0-based source positions.
    Reorder { side: crate::calculus::Side, perm: Vec<usize> },
    Package(Vec<(String, String)>),
}

/// A derivation script: `relation: <file>` and then ordered directives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub relation: String,
    pub directives: Vec<(usize, Directive)>,
}

/// Directives, positions 1-based in the file:
/// `genus 3 4 5`, `slide [lhs|rhs] <i> left|right` (default rhs),
/// `transport <names…>`, `reorder [lhs|rhs] <perm…>` (default lhs),
/// `package (c,d) (c',d')` with pairs `(c, φ(c))`.
pub fn parse_script(text: &str) -> Result<Script> {
    use crate::calculus::{Direction, Side};
    let mut relation = None;
    let mut directives = Vec::new();
    for (n, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or("");
        let rest: Vec<&str> = toks.collect();
        let side_of = |rest: &[&str], default: Side| -> (Side, usize) {
            match rest.first() {
                Some(&"lhs") => (Side::Lhs, 1),
                Some(&"rhs") => (Side::Rhs, 1),
                _ => (default, 0),
            }
        };
        let position = |t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(p) if p >= 1 => Ok(p - 1),
                _ => Err(parse_err(n, format!("bad position `{t}`"))),
            }
        };
        let d = match head.trim_end_matches(':') {
            "relation" => {
                relation = Some(rest.join(" "));
                continue;
            }
            "genus" => {
                let gs = rest
                    .iter()
                    .map(|t| t.parse().map_err(|_| parse_err(n, format!("bad genus `{t}`"))))
                    .collect::<Result<Vec<usize>>>()?;
                Directive::Genus(gs)
            }
            "slide" => {
                let (side, skip) = side_of(&rest, Side::Rhs);
                let args = &rest[skip..];
                if args.len() != 2 {
                    return Err(parse_err(n, "usage: slide [lhs|rhs] <i> left|right"));
                }
                let dir = match args[1] {
                    "left" => Direction::Left,
                    "right" => Direction::Right,
                    other => return Err(parse_err(n, format!("bad direction `{other}`"))),
                };
                Directive::Slide { side, index: position(args[0])?, dir }
            }
            "transport" => Directive::Transport(rest.iter().map(|s| s.to_string()).collect()),
            "reorder" => {
                let (side, skip) = side_of(&rest, Side::Lhs);
                let perm = rest[skip..].iter().map(|t| position(t)).collect::<Result<Vec<_>>>()?;
                Directive::Reorder { side, perm }
            }
            "package" => {
                let joined: String = rest.concat();
                let mut pairs = Vec::new();
                for chunk in joined.split(')').filter(|c| !c.is_empty()) {
                    let inner = chunk
                        .strip_prefix('(')
                        .ok_or_else(|| parse_err(n, format!("expected `(c,d)`, found `{chunk})`")))?;
                    let Some((a, b)) = inner.split_once(',') else {
                        return Err(parse_err(n, format!("expected `(c,d)`, found `{chunk})`")));
                    };
                    pairs.push((a.trim().to_string(), b.trim().to_string()));
                }
                Directive::Package(pairs)
            }
            other => return Err(parse_err(n, format!("unknown directive `{other}`"))),
        };
        directives.push((n, d));
    }
    let relation = relation.ok_or_else(|| parse_err(1, "missing `relation:` line"))?;
    Ok(Script { relation, directives })
}

/// A factorization file: a relation file's `surface:` and `curves:` plus
/// `base_genus:`, a `pairs:` section of `[X, Y]` lines, `vanishing =` and an
/// optional `lift =`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorizationFile {
    pub surface: String,
    pub curves: String,
    pub base_genus: usize,
    pub pairs: Vec<(usize, String, String)>,
    pub vanishing: (usize, String),
    pub lift: (usize, String),
}

pub fn parse_factorization_file(text: &str) -> Result<FactorizationFile> {
    let mut f = FactorizationFile::default();
    let mut in_pairs = false;
    let mut have_genus = false;
    for (n, line) in content_lines(text) {
        if in_pairs && line.starts_with('[') {
            let inner = line
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| parse_err(n, "expected `[X, Y]`"))?;
            let Some((a, b)) = inner.split_once(',') else {
                return Err(parse_err(n, "expected `[X, Y]`"));
            };
            f.pairs.push((n, a.trim().to_string(), b.trim().to_string()));
            continue;
        }
        in_pairs = false;
        let Some((key, value)) = key_value(line) else {
            return Err(parse_err(n, format!("expected `key: value`, found `{line}`")));
        };
        match key {
            "surface" => f.surface = value.to_string(),
            "curves" => f.curves = value.to_string(),
            "base_genus" => {
                f.base_genus = value.parse().map_err(|_| parse_err(n, format!("bad genus `{value}`")))?;
                have_genus = true;
            }
            "pairs" => in_pairs = true,
            "vanishing" => f.vanishing = (n, value.to_string()),
            "lift" => f.lift = (n, value.to_string()),
            _ => return Err(parse_err(n, format!("unknown key `{key}`"))),
        }
    }
    if f.surface.is_empty() || f.curves.is_empty() || !have_genus || f.vanishing.0 == 0 {
        return Err(parse_err(1, "need `surface:`, `curves:`, `base_genus:` and `vanishing =`"));
    }
    if f.pairs.len() != f.base_genus {
        return Err(parse_err(1, format!("{} pairs for base genus {}", f.pairs.len(), f.base_genus)));
    }
    Ok(f)
}
