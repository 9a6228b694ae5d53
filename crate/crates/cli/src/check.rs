//! The cross-check oracle for curated curve data. A check file lists
//! independently known facts about the curves:
//!
//! ```text
//! class B0 = -1 1 -1 0 0      # homology class in the band basis
//! meet g1 g3 = 1              # geometric intersection number
//! separating C
//! nonseparating B0 B1
//! ```
//!
//! Every curve must in addition be embedded.

use mcg_core::curves::{geometric_intersection, is_separating};
use mcg_core::homology::HomologyLattice;
use mcg_core::parse::{at_line, content_lines, key_value};
use mcg_core::twist::CurveTable;
use mcg_core::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub what: String,
    pub passed: bool,
    pub found: String,
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

pub fn run_checks(table: &CurveTable, text: &str) -> mcg_core::Result<Vec<CheckLine>> {
    let surface = table.surface();
    let lattice = HomologyLattice::new(surface)?;
    let mut out = Vec::new();
    for c in table.curves() {
        out.push(CheckLine {
            what: format!("embedded {}", c.name()),
            passed: c.is_embedded(),
            found: c.is_embedded().to_string(),
        });
    }
    for (n, line) in content_lines(text) {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "class" => {
                let (name, value) = key_value(rest).ok_or_else(|| parse_err(n, "expected `class NAME = ints`".into()))?;
                let want = value
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| parse_err(n, format!("bad integer `{t}`"))))
                    .collect::<mcg_core::Result<Vec<_>>>()?;
                let c = at_line(n, table.get(name))?;
                let got = lattice.class_of(c.word());
                out.push(CheckLine { what: format!("class {name}"), passed: got == want, found: format!("{got:?}") });
            }
            "meet" => {
                let (names, value) = key_value(rest).ok_or_else(|| parse_err(n, "expected `meet A B = n`".into()))?;
                let names: Vec<&str> = names.split_whitespace().collect();
                let [a, b] = names[..] else {
                    return Err(parse_err(n, "expected two curve names".into()));
                };
                let want: usize = value.parse().map_err(|_| parse_err(n, format!("bad count `{value}`")))?;
                let got = at_line(n, geometric_intersection(surface, table.get(a)?, table.get(b)?))?;
                out.push(CheckLine { what: format!("meet {a} {b}"), passed: got == want, found: got.to_string() });
            }
            "separating" | "nonseparating" => {
                let want = head == "separating";
                for name in rest.split_whitespace() {
                    let got = at_line(n, is_separating(surface, at_line(n, table.get(name))?))?;
                    out.push(CheckLine { what: format!("{head} {name}"), passed: got == want, found: got.to_string() });
                }
            }
            _ => return Err(parse_err(n, format!("unknown check `{head}`"))),
        }
    }
    Ok(out)
}
