//! The curated catalog, compiled into the binary.

macro_rules! files {
    ($($name:literal),* $(,)?) => {
        /// Contents of a catalog data file.
        pub fn file(name: &str) -> Option<&'static str> {
            match name {
                $($name => Some(include_str!(concat!("../catalog/", $name))),)*
                _ => None,
            }
        }

        pub const FILES: &[&str] = &[$($name),*];
    };
}

files!(
    "matsumoto.surface",
    "matsumoto-closed.surface",
    "matsumoto.curves",
    "matsumoto.check",
    "matsumoto-bordered.rel",
    "matsumoto-closed.rel",
    "matsumoto-fib.fact",
    "torus-1.surface",
    "torus-1.curves",
    "torus-1.check",
    "torus-1.rel",
    "torus-2.surface",
    "torus-2.curves",
    "torus-2.check",
    "torus-2.rel",
    "torus-7.surface",
    "torus-7.curves",
    "torus-7.check",
    "torus-7.rel",
    "thm1-1.script",
    "thm1-2.script",
);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Relation,
    Script,
    Factorization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    /// The relation verifies.
    Holds,
    /// The derivation ends in `h` commutators and `n` twists.
    Derives { h: usize, n: usize },
    /// Invariants `(n, euler, reducible)`.
    Fibration { n: usize, euler: i64, reducible: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: Kind,
    pub file: &'static str,
    /// Cross-check data for the entry's curves.
    pub check: Option<&'static str>,
    pub expected: Expected,
    pub about: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "matsumoto-bordered",
        kind: Kind::Relation,
        file: "matsumoto-bordered.rel",
        check: Some("matsumoto.check"),
        expected: Expected::Holds,
        about: "d1 d2 = (B0 B1 B2 C)^2 on the genus 2 surface with two holes",
    },
    CatalogEntry {
        name: "matsumoto-closed",
        kind: Kind::Relation,
        file: "matsumoto-closed.rel",
        check: Some("matsumoto.check"),
        expected: Expected::Holds,
        about: "1 = (B0 B1 B2 C)^2 on the closed genus 2 surface",
    },
    CatalogEntry {
        name: "torus-1",
        kind: Kind::Relation,
        file: "torus-1.rel",
        check: Some("torus-1.check"),
        expected: Expected::Holds,
        about: "d = (a b)^6 on the one-holed torus",
    },
    CatalogEntry {
        name: "torus-2",
        kind: Kind::Relation,
        file: "torus-2.rel",
        check: Some("torus-2.check"),
        expected: Expected::Holds,
        about: "d1 d2 = (a1 a2 b)^4 on the two-holed torus",
    },
    CatalogEntry {
        name: "torus-7",
        kind: Kind::Relation,
        file: "torus-7.rel",
        check: Some("torus-7.check"),
        expected: Expected::Holds,
        about: "d1 ... d7 = a3 a4 a1 b s5 a2 b5 s3 s6 a6 b3 s4 on the seven-holed torus",
    },
    CatalogEntry {
        name: "thm1-1",
        kind: Kind::Script,
        file: "thm1-1.script",
        check: Some("matsumoto.check"),
        expected: Expected::Derives { h: 1, n: 6 },
        about: "one commutator equal to six right-handed twists, closed genus 3 to 6",
    },
    CatalogEntry {
        name: "thm1-2",
        kind: Kind::Script,
        file: "thm1-2.script",
        check: Some("torus-7.check"),
        expected: Expected::Derives { h: 1, n: 5 },
        about: "one commutator equal to five right-handed twists, closed genus 7 to 10",
    },
    CatalogEntry {
        name: "matsumoto-fib",
        kind: Kind::Factorization,
        file: "matsumoto-fib.fact",
        check: Some("matsumoto.check"),
        expected: Expected::Fibration { n: 8, euler: 4, reducible: 2 },
        about: "genus 2 fibration over the sphere with eight singular fibres",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
