//! Lefschetz fibrations through their monodromy: a relation
//! `∏ [φ_j, ψ_j] = ∏ t_{c_i}` on the closed fibre gives a genus `g`
//! fibration over the genus `h` surface with one singular fibre per twist.

use std::fmt;

use crate::calculus::CommutatorRelation;
use crate::curves::{bounds_disk, is_separating, CurveWord};
use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::twist::{TwistLetter, TwistWord};

#[derive(Clone, Debug)]
pub struct MonodromyFactorization {
    pub fiber_genus: usize,
    pub base_genus: usize,
    /// Closed fibre model; absent only for curve-free factorizations.
    pub fiber: Option<Surface>,
    pub pairs: Vec<(TwistWord, TwistWord)>,
    pub vanishing_cycles: Vec<CurveWord>,
    /// Whether the defining relation has been checked or certified.
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibrationInvariants {
    pub n: usize,
    pub euler: i64,
    pub reducible_count: usize,
    pub irreducible_count: usize,
    pub relatively_minimal: bool,
}

impl fmt::Display for FibrationInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "euler: {}", self.euler)?;
        writeln!(f, "reducible: {}", self.reducible_count)?;
        writeln!(f, "irreducible: {}", self.irreducible_count)?;
        write!(f, "relatively minimal: {}", self.relatively_minimal)
    }
}

impl MonodromyFactorization {
    /// `Σ_g × Σ_h`: `h` trivial pairs and no singular fibres.
    pub fn trivial(g: usize, h: usize) -> MonodromyFactorization {
        MonodromyFactorization {
            fiber_genus: g,
            base_genus: h,
            fiber: None,
            pairs: vec![(TwistWord::default(), TwistWord::default()); h],
            vanishing_cycles: Vec::new(),
            certified: true,
        }
    }

    /// Builds a factorization from explicit data on a closed fibre.
    pub fn new(
        fiber: &Surface,
        pairs: Vec<(TwistWord, TwistWord)>,
        vanishing_cycles: Vec<CurveWord>,
        certified: bool,
    ) -> Result<MonodromyFactorization> {
        if !fiber.is_closed() {
            return Err(Error::Invalid("the fibre of a factorization must be closed".into()));
        }
        Ok(MonodromyFactorization {
            fiber_genus: fiber.genus(),
            base_genus: pairs.len(),
            fiber: Some(fiber.clone()),
            pairs,
            vanishing_cycles,
            certified,
        })
    }

    pub fn n(&self) -> usize {
        self.vanishing_cycles.len()
    }
}

/// Reads off the fibration of a verified commutator relation on a closed
/// surface of genus `g`.
pub fn from_commutator_relation(cr: &CommutatorRelation, g: usize) -> Result<MonodromyFactorization> {
    if !cr.verification.passed {
        return Err(Error::Invalid("the commutator relation is not verified".into()));
    }
    let surface = cr.table.surface();
    if !surface.is_closed() || surface.genus() != g {
        return Err(Error::Invalid(format!(
            "relation lives on genus {} with {} holes, not on the closed genus {g} surface",
            surface.genus(),
            surface.boundary_count()
        )));
    }
    let mut cycles = Vec::new();
    for l in cr.positive_part.letters() {
        match l {
            TwistLetter::Twist { curve, sign: 1 } => cycles.push(cr.table.get(curve)?.clone()),
            other => return Err(Error::Invalid(format!("`{other}` is not a right-handed twist"))),
        }
    }
    let pairs = cr
        .pairs
        .iter()
        .map(|p| (p.word.clone(), TwistWord::new(vec![TwistLetter::formal(p.symbol.name.clone())])))
        .collect();
    MonodromyFactorization::new(surface, pairs, cycles, true)
}

pub fn invariants(mf: &MonodromyFactorization) -> Result<FibrationInvariants> {
    let mut reducible = 0;
    let mut minimal = true;
    if let Some(s) = &mf.fiber {
        for c in &mf.vanishing_cycles {
            if is_separating(s, c)? {
                reducible += 1;
            }
            if bounds_disk(s, c)? {
                minimal = false;
            }
        }
    } else if !mf.vanishing_cycles.is_empty() {
        return Err(Error::Invalid("vanishing cycles without a fibre model".into()));
    }
    let n = mf.n();
    let (g, h) = (mf.fiber_genus as i64, mf.base_genus as i64);
    Ok(FibrationInvariants {
        n,
        euler: (2 - 2 * g) * (2 - 2 * h) + n as i64,
        reducible_count: reducible,
        irreducible_count: n - reducible,
        relatively_minimal: minimal,
    })
}

/// Fibre sum: base genera add, pairs and vanishing cycles concatenate.
pub fn fiber_sum(a: &MonodromyFactorization, b: &MonodromyFactorization) -> Result<MonodromyFactorization> {
    if a.fiber_genus != b.fiber_genus {
        return Err(Error::Invalid(format!("fibre genera differ: {} and {}", a.fiber_genus, b.fiber_genus)));
    }
    let fiber = match (&a.fiber, &b.fiber) {
        (Some(x), Some(y)) if x != y => return Err(Error::SurfaceMismatch),
        (Some(x), _) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    };
    let mut pairs = a.pairs.clone();
    pairs.extend(b.pairs.iter().cloned());
    let mut cycles = a.vanishing_cycles.clone();
    cycles.extend(b.vanishing_cycles.iter().cloned());
    Ok(MonodromyFactorization {
        fiber_genus: a.fiber_genus,
        base_genus: a.base_genus + b.base_genus,
        fiber,
        pairs,
        vanishing_cycles: cycles,
        certified: a.certified && b.certified,
    })
}

/// Where a bound on `N(g,h)` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// `N(g,h) = 1` iff `g ≥ 3, h ≥ 2`; `N(1,h) = 12`; `5 ≤ N(2,h) ≤ 8`;
    /// `N(g,1) ≥ 2` (Korkmaz–Ozbagci).
    KorkmazOzbagci,
    /// `N(2,h) = 5` for `h ≥ 3`, `N(2,2) ≤ 6`, `6 ≤ N(2,1) ≤ 7` (Monden).
    Monden,
    /// `N(2,0) = 7` (Ozbagci's exclusion of 5 and 6, Xiao's example).
    OzbagciXiao,
    /// `N(g,0) ≤ 2g+10` for odd `g`, `2g+4` for even `g` (Cadavid, Korkmaz).
    CadavidKorkmaz,
    /// `⌈(4g+2)/5⌉ ≤ N(g,0)` (Stipsicz).
    Stipsicz,
    /// `N(g,1) ≤ N(g,0)`: fibre sum with the trivial torus bundle.
    TrivialSum,
    /// `N(g,1) ≤ 6` for `g ≥ 3`: the derived six-letter commutator relation.
    SixTwists,
    /// `N(g,1) ≤ 5` for `g ≥ 7`: the derived five-letter commutator relation.
    FiveTwists,
}

impl Source {
    pub const PRIOR: [Source; 6] = [
        Source::KorkmazOzbagci,
        Source::Monden,
        Source::OzbagciXiao,
        Source::CadavidKorkmaz,
        Source::Stipsicz,
        Source::TrivialSum,
    ];
    pub const ALL: [Source; 8] = [
        Source::KorkmazOzbagci,
        Source::Monden,
        Source::OzbagciXiao,
        Source::CadavidKorkmaz,
        Source::Stipsicz,
        Source::TrivialSum,
        Source::SixTwists,
        Source::FiveTwists,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Source::KorkmazOzbagci => "korkmaz-ozbagci",
            Source::Monden => "monden",
            Source::OzbagciXiao => "ozbagci-xiao",
            Source::CadavidKorkmaz => "cadavid-korkmaz",
            Source::Stipsicz => "stipsicz",
            Source::TrivialSum => "trivial-fibre-sum",
            Source::SixTwists => "six-twist-commutator (derive thm1-1)",
            Source::FiveTwists => "five-twist-commutator (derive thm1-2)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsEntry {
    pub g: usize,
    pub h: usize,
    pub lower: usize,
    pub upper: usize,
    pub sources: Vec<Source>,
}

impl fmt::Display for BoundsEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N({},{}): {} ≤ N ≤ {}", self.g, self.h, self.lower, self.upper)?;
        let tags: Vec<&str> = self.sources.iter().map(|s| s.tag()).collect();
        write!(f, "sources: {}", tags.join(", "))
    }
}

/// Best bounds from all known sources.
pub fn bounds_lookup(g: usize, h: usize) -> Result<BoundsEntry> {
    bounds_from(g, h, &Source::ALL)
}

/// Bounds using only the listed sources.
pub fn bounds_from(g: usize, h: usize, sources: &[Source]) -> Result<BoundsEntry> {
    if g == 0 {
        return Err(Error::Invalid("fibre genus must be at least 1".into()));
    }
    let mut lower = 1usize;
    let mut upper = usize::MAX;
    let mut used = Vec::new();
    let mut apply = |src: Source, lo: Option<usize>, hi: Option<usize>| {
        if !sources.contains(&src) {
            return;
        }
        let mut helped = false;
        if let Some(l) = lo {
            if l > lower {
                lower = l;
                helped = true;
            }
        }
        if let Some(u) = hi {
            if u < upper {
                upper = u;
                helped = true;
            }
        }
        if helped && !used.contains(&src) {
            used.push(src);
        }
    };
    let sphere_upper = |g: usize| if g % 2 == 1 { 2 * g + 10 } else { 2 * g + 4 };
    match g {
        1 => apply(Source::KorkmazOzbagci, Some(12), Some(12)),
        2 => {
            apply(Source::KorkmazOzbagci, Some(5), Some(8));
            match h {
                0 => apply(Source::OzbagciXiao, Some(7), Some(7)),
                1 => apply(Source::Monden, Some(6), Some(7)),
                2 => apply(Source::Monden, None, Some(6)),
                _ => apply(Source::Monden, Some(5), Some(5)),
            }
        }
        _ => {
            if h >= 2 {
                apply(Source::KorkmazOzbagci, Some(1), Some(1));
            } else {
                if h == 0 {
                    apply(Source::Stipsicz, Some((4 * g + 2).div_ceil(5)), None);
                } else {
                    apply(Source::KorkmazOzbagci, Some(2), None);
                }
                let via_sphere = if h == 0 { Source::CadavidKorkmaz } else { Source::TrivialSum };
                if h == 0 || sources.contains(&Source::CadavidKorkmaz) {
                    apply(via_sphere, None, Some(sphere_upper(g)));
                }
                if h == 1 {
                    apply(Source::SixTwists, None, Some(6));
                    if g >= 7 {
                        apply(Source::FiveTwists, None, Some(5));
                    }
                }
            }
        }
    }
    if upper == usize::MAX {
        return Err(Error::Invalid(format!("no upper bound known for N({g},{h})")));
    }
    Ok(BoundsEntry { g, h, lower, upper, sources: used })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_cells() {
        let e = bounds_lookup(2, 0).unwrap();
        assert_eq!((e.lower, e.upper), (7, 7));
        assert_eq!((bounds_lookup(2, 2).unwrap().lower, bounds_lookup(2, 2).unwrap().upper), (5, 6));
    }

    #[test]
    fn torus_base_improvements() {
        let e = bounds_lookup(5, 1).unwrap();
        assert_eq!((e.lower, e.upper), (2, 6));
        assert!(e.sources.contains(&Source::SixTwists));
        let e = bounds_lookup(8, 1).unwrap();
        assert_eq!((e.lower, e.upper), (2, 5));
        let prior = bounds_from(5, 1, &Source::PRIOR).unwrap();
        assert_eq!((prior.lower, prior.upper), (2, 20));
    }

    #[test]
    fn trivial_bundles() {
        let t = MonodromyFactorization::trivial(3, 1);
        let inv = invariants(&t).unwrap();
        assert_eq!((inv.n, inv.euler), (0, 0));
        let sum = fiber_sum(&t, &MonodromyFactorization::trivial(3, 0)).unwrap();
        assert_eq!((sum.base_genus, sum.n()), (1, 0));
        assert!(fiber_sum(&t, &MonodromyFactorization::trivial(2, 1)).is_err());
    }
}
