//! Finding input files, either in the embedded catalog or on disk.

use std::path::{Path, PathBuf};

use mcg_core::calculus::Relation;
use mcg_core::curves::close_up;
use mcg_core::parse::{parse_curves, parse_relation_file, parse_surface, parse_twist_word, RelationFile};
use mcg_core::twist::CurveTable;

use crate::catalog::{self, CatalogEntry};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}: {source}")]
    Input { file: String, source: mcg_core::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] mcg_core::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Where relative file names are looked up.
#[derive(Clone, Debug)]
pub enum Origin {
    Catalog,
    Disk(PathBuf),
}

impl Origin {
    pub fn read(&self, name: &str) -> CliResult<String> {
        match self {
            Origin::Catalog => catalog::file(name)
                .map(str::to_string)
                .ok_or_else(|| CliError::Usage(format!("catalog has no file `{name}`"))),
            Origin::Disk(dir) => {
                let p = dir.join(name);
                std::fs::read_to_string(&p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
            }
        }
    }
}

/// Resolves a command target: a catalog entry name or a path.
pub fn resolve(target: &str) -> CliResult<(Origin, String, Option<&'static CatalogEntry>)> {
    if let Some(e) = catalog::entry(target) {
        return Ok((Origin::Catalog, e.file.to_string(), Some(e)));
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(CliError::Usage(format!("`{target}` is neither a catalog entry nor a file")));
    }
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((Origin::Disk(dir), name, None))
}

fn tag<T>(file: &str, r: mcg_core::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::Input { file: file.to_string(), source })
}

pub fn load_table(origin: &Origin, surface_file: &str, curves_file: &str) -> CliResult<CurveTable> {
    let surface = tag(surface_file, parse_surface(&origin.read(surface_file)?))?;
    tag(curves_file, parse_curves(&surface, &origin.read(curves_file)?))
}

pub fn load_relation(origin: &Origin, file: &str) -> CliResult<(Relation, RelationFile)> {
    let parsed = tag(file, parse_relation_file(&origin.read(file)?))?;
    let table = load_table(origin, &parsed.surface, &parsed.curves)?;
    let lhs = tag(file, parse_twist_word(&table, &parsed.lhs, parsed.lines[0]))?;
    let rhs = tag(file, parse_twist_word(&table, &parsed.rhs, parsed.lines[1]))?;
    let lift = tag(file, parse_twist_word(&table, &parsed.lift, parsed.lines[2]))?;
    let rel = tag(file, Relation::with_lift(table, lhs, rhs, lift))?;
    Ok((rel, parsed))
}

/// Pushes a relation on a bordered surface to the closed surface of genus
/// `g` obtained by joining its holes with bands and adding handles.
pub fn close_relation(rel: &Relation, g: usize) -> CliResult<Relation> {
    let sub = rel.table.surface();
    let base = sub.genus() + sub.bordered_boundary_count() - 1;
    if !sub.capped().is_empty() || g < base {
        return Err(CliError::Usage(format!(
            "cannot close up a genus {} surface with {} holes to genus {g}",
            sub.genus(),
            sub.bordered_boundary_count()
        )));
    }
    let emb = close_up(sub, g - base)?;
    let mut table = CurveTable::new(emb.host());
    for c in rel.table.curves() {
        table.insert(emb.push_curve(c)?)?;
    }
    Ok(Relation::with_lift(table, rel.lhs.clone(), rel.rhs.clone(), rel.lift.clone())?)
}

/// Catalog hosts `sigma<g>`: the closed genus `g` surface carrying the
/// pushed curves of the genus 2 relation (`g < 7`) or of the seven-holed
/// torus relation (`g ≥ 7`).
pub fn host(name: &str) -> CliResult<Option<Relation>> {
    let Some(g) = name.strip_prefix("sigma").and_then(|s| s.parse::<usize>().ok()) else {
        return Ok(None);
    };
    let file = match g {
        0..=2 => return Err(CliError::Usage(format!("no catalog host of genus {g}"))),
        3..=6 => "matsumoto-bordered.rel",
        _ => "torus-7.rel",
    };
    let (rel, _) = load_relation(&Origin::Catalog, file)?;
    Ok(Some(close_relation(&rel, g)?))
}
