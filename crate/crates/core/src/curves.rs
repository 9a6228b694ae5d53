//! Named curves, curve systems, and the operations that look at the surface
//! they cut out: intersection numbers, cutting, filling, and the
//! classification-of-surfaces test for change of coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::realize::Realization;
use crate::surface::{HalfEdge, Surface};
use crate::word::FreeWord;

/// A closed curve given by a cyclically reduced word in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWord {
    name: String,
    word: FreeWord,
    surface: u64,
    embedded: bool,
    /// Self-crossings of the realization; 0 for proper powers, which are
    /// never embedded.
    crossings: usize,
}

impl CurveWord {
    /// Cyclically reduces `word` and certifies embeddedness.
    pub fn new(surface: &Surface, name: impl Into<String>, word: FreeWord) -> Result<CurveWord> {
        let name = name.into();
        let word = word.cyclic_reduce();
        if word.is_empty() {
            return Err(Error::BadCurve(name));
        }
        if word.letters().iter().any(|&l| crate::word::gen_index(l) >= surface.rank()) {
            return Err(Error::BadCurve(name));
        }
        let crossings = if word.is_proper_power() {
            0
        } else {
            Realization::new(&surface.bordered(), std::slice::from_ref(&word))?.self_crossings(0)
        };
        let embedded = !word.is_proper_power() && crossings == 0;
        Ok(CurveWord { name, word, surface: surface.bordered().fingerprint(), embedded, crossings })
    }

    pub fn parse(surface: &Surface, name: impl Into<String>, text: &str) -> Result<CurveWord> {
        let name = name.into();
        let w = surface.parse_word(text).map_err(|e| match e {
            Error::BadCurve(_) => Error::BadCurve(name.clone()),
            other => other,
        })?;
        CurveWord::new(surface, name, w)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn is_embedded(&self) -> bool {
        self.embedded
    }

    pub fn renamed(&self, name: impl Into<String>) -> CurveWord {
        CurveWord { name: name.into(), ..self.clone() }
    }

    fn check_surface(&self, surface: &Surface) -> Result<()> {
        if self.surface != surface.bordered().fingerprint() {
            return Err(Error::SurfaceMismatch);
        }
        Ok(())
    }

    fn require_embedded(&self) -> Result<()> {
        if self.embedded {
            Ok(())
        } else {
            Err(Error::NotEmbedded { name: self.name.clone(), count: self.crossings })
        }
    }
}

/// Minimal self-intersection number of a primitive curve.
pub fn self_intersection(surface: &Surface, c: &CurveWord) -> Result<usize> {
    c.check_surface(surface)?;
    if c.word.is_proper_power() {
        return Err(Error::BadCurve(c.name.clone()));
    }
    Ok(Realization::new(&surface.bordered(), std::slice::from_ref(&c.word))?.self_crossings(0))
}

/// Minimal intersection number of two primitive curves. Equal classes give
/// 0: distinct parallel representatives are disjoint.
pub fn geometric_intersection(surface: &Surface, c1: &CurveWord, c2: &CurveWord) -> Result<usize> {
    c1.check_surface(surface)?;
    c2.check_surface(surface)?;
    if c1.word.is_proper_power() || c2.word.is_proper_power() {
        return Err(Error::BadCurve(format!("{} / {}", c1.name, c2.name)));
    }
    let r = Realization::new(&surface.bordered(), &[c1.word.clone(), c2.word.clone()])?;
    Ok(r.mutual_crossings(0, 1))
}

/// An ordered list of curves on one surface.
#[derive(Clone, Debug)]
pub struct CurveSystem {
    curves: Vec<CurveWord>,
    disjoint: bool,
}

impl CurveSystem {
    pub fn new(surface: &Surface, curves: Vec<CurveWord>) -> Result<CurveSystem> {
        for c in &curves {
            c.check_surface(surface)?;
        }
        let disjoint = first_crossing_pair(surface, &curves)?.is_none();
        Ok(CurveSystem { curves, disjoint })
    }

    pub fn curves(&self) -> &[CurveWord] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    fn require_certified(&self, surface: &Surface) -> Result<()> {
        for c in &self.curves {
            c.require_embedded()?;
        }
        if let Some((i, j)) = first_crossing_pair(surface, &self.curves)? {
            return Err(Error::Intersecting(self.curves[i].name.clone(), self.curves[j].name.clone()));
        }
        Ok(())
    }
}

fn first_crossing_pair(surface: &Surface, curves: &[CurveWord]) -> Result<Option<(usize, usize)>> {
    if let Some(c) = curves.iter().find(|c| c.word.is_proper_power()) {
        return Err(Error::BadCurve(c.name.clone()));
    }
    if curves.len() < 2 {
        return Ok(None);
    }
    let words: Vec<FreeWord> = curves.iter().map(|c| c.word.clone()).collect();
    let r = Realization::new(&surface.bordered(), &words)?;
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if r.mutual_crossings(i, j) > 0 {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub genus: usize,
    pub boundary_count: usize,
    pub euler: i64,
    /// Uncapped boundary cycles of the original surface on this component.
    pub original_boundaries: Vec<usize>,
    /// Capped boundary cycles whose disks lie on this component.
    pub caps: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub components: Vec<Component>,
    /// For each cut curve, the components on its left and right sides.
    pub sides: Vec<(usize, usize)>,
    pub names: Vec<String>,
}

impl CutReport {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn total_euler(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }
}

impl fmt::Display for CutReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components: {}", self.components.len())?;
        for (i, c) in self.components.iter().enumerate() {
            writeln!(f, "  [{i}] genus {} boundary {} euler {}", c.genus, c.boundary_count, c.euler)?;
        }
        for (n, (l, r)) in self.names.iter().zip(&self.sides) {
            writeln!(f, "  {n}: left [{l}] right [{r}]")?;
        }
        write!(f, "connected: {}", self.is_connected())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// Arcs of `∂D` between consecutive chord endpoints.
struct Arcs {
    keys: Vec<i64>,
}

impl Arcs {
    fn new(r: &Realization) -> Arcs {
        let mut keys: Vec<i64> = r.chords.iter().flat_map(|c| [c.from, c.to]).collect();
        keys.sort_unstable();
        keys.dedup();
        Arcs { keys }
    }

    fn len(&self) -> usize {
        self.keys.len().max(1)
    }

    /// Arc containing a non-endpoint point.
    fn of(&self, p: i64) -> usize {
        if self.keys.is_empty() {
            return 0;
        }
        match self.keys.binary_search(&p) {
            Ok(i) => i,
            Err(0) => self.keys.len() - 1,
            Err(i) => i - 1,
        }
    }

    fn after(&self, key: i64) -> usize {
        self.of(key)
    }

    fn before(&self, key: i64) -> usize {
        (self.of(key) + self.len() - 1) % self.len()
    }
}

/// Strip attachment points: for each band strip, the points of `∂D` at its
/// two ends.
fn strips(surface: &Surface, r: &Realization) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for e in 0..surface.rank() {
        let s = r.strands[e] as i64;
        let plus = surface.position(HalfEdge::new(e, true)) as i64 * r.block;
        let minus = surface.position(HalfEdge::new(e, false)) as i64 * r.block;
        for q in 0..=s {
            out.push((plus + 2 * q + 1, minus + 2 * (s - q) + 1));
        }
    }
    out
}

struct Pieces {
    /// Component of each face.
    component_of_face: Vec<usize>,
    euler: Vec<i64>,
    originals: Vec<Vec<usize>>,
    caps: Vec<Vec<usize>>,
}

/// Groups faces of `D` into components through the band strips and
/// accounts Euler characteristic and boundary cycles per component.
fn assemble(surface: &Surface, r: &Realization, face_of_arc: &dyn Fn(i64) -> usize, faces: usize) -> Pieces {
    let strips = strips(surface, r);
    let mut uf = UnionFind::new(faces);
    for &(x, y) in &strips {
        uf.union(face_of_arc(x), face_of_arc(y));
    }
    let mut index = BTreeMap::new();
    for f in 0..faces {
        let root = uf.find(f);
        let next = index.len();
        index.entry(root).or_insert(next);
    }
    let component_of_face: Vec<usize> = (0..faces).map(|f| index[&uf.find(f)]).collect();
    let n = index.len();
    let mut euler = vec![0i64; n];
    for f in 0..faces {
        euler[component_of_face[f]] += 1;
    }
    for &(x, _) in &strips {
        euler[component_of_face[face_of_arc(x)]] -= 1;
    }
    let mut originals = vec![Vec::new(); n];
    let mut caps = vec![Vec::new(); n];
    for b in 0..surface.bordered_boundary_count() {
        let comp = component_of_face[face_of_arc(r.gap_key(surface.base_gap(b)))];
        if surface.capped().contains(&b) {
            caps[comp].push(b);
            euler[comp] += 1;
        } else {
            originals[comp].push(b);
        }
    }
    Pieces { component_of_face, euler, originals, caps }
}

/// Cuts along a certified system of disjoint embedded curves.
pub fn cut_along(surface: &Surface, system: &CurveSystem) -> Result<CutReport> {
    system.require_certified(surface)?;
    let bordered = surface.bordered();
    let words: Vec<FreeWord> = system.curves.iter().map(|c| c.word.clone()).collect();
    if words.is_empty() {
        return Ok(CutReport {
            components: vec![Component {
                genus: surface.genus(),
                boundary_count: surface.boundary_count(),
                euler: surface.euler(),
                original_boundaries: (0..surface.bordered_boundary_count())
                    .filter(|b| !surface.capped().contains(b))
                    .collect(),
                caps: surface.capped().iter().copied().collect(),
            }],
            sides: Vec::new(),
            names: Vec::new(),
        });
    }
    let r = Realization::new(&bordered, &words)?;
    let arcs = Arcs::new(&r);
    let mut uf = UnionFind::new(arcs.len());
    for c in &r.chords {
        uf.union(arcs.after(c.from), arcs.before(c.to));
        uf.union(arcs.before(c.from), arcs.after(c.to));
    }
    let mut face_index = BTreeMap::new();
    for a in 0..arcs.len() {
        let root = uf.find(a);
        let next = face_index.len();
        face_index.entry(root).or_insert(next);
    }
    let face_of_arc_vec: Vec<usize> = (0..arcs.len()).map(|a| face_index[&uf.find(a)]).collect();
    let face_of_point = |p: i64| face_of_arc_vec[arcs.of(p)];
    let pieces = assemble(surface, &r, &face_of_point, face_index.len());

    let mut sides = Vec::new();
    let mut curve_sides = vec![0usize; pieces.euler.len()];
    for curve in 0..words.len() {
        let chord = r.chords.iter().find(|c| c.curve == curve).expect("curves are non-empty");
        let left = pieces.component_of_face[face_of_arc_vec[arcs.before(chord.from)]];
        let right = pieces.component_of_face[face_of_arc_vec[arcs.after(chord.from)]];
        curve_sides[left] += 1;
        curve_sides[right] += 1;
        sides.push((left, right));
    }
    let mut components = Vec::new();
    for i in 0..pieces.euler.len() {
        let b = pieces.originals[i].len() + curve_sides[i];
        let twice_genus = 2 - pieces.euler[i] - b as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Invalid("inconsistent cut component".into()));
        }
        components.push(Component {
            genus: (twice_genus / 2) as usize,
            boundary_count: b,
            euler: pieces.euler[i],
            original_boundaries: pieces.originals[i].clone(),
            caps: pieces.caps[i].clone(),
        });
    }
    Ok(CutReport {
        components,
        sides,
        names: system.curves.iter().map(|c| c.name.clone()).collect(),
    })
}

/// Whether an embedded curve separates the surface into two pieces neither
/// of which is a disk or an annulus onto a boundary component. Inessential
/// and boundary-parallel curves count as non-separating.
pub fn is_separating(surface: &Surface, c: &CurveWord) -> Result<bool> {
    let system = CurveSystem::new(surface, vec![c.clone()])?;
    let report = cut_along(surface, &system)?;
    if report.components.len() != 2 {
        return Ok(false);
    }
    Ok(report.components.iter().all(|p| !is_trivial_piece(p)))
}

/// Whether the curve bounds a disk or is parallel to an uncapped boundary.
pub fn is_peripheral(surface: &Surface, c: &CurveWord) -> Result<bool> {
    let system = CurveSystem::new(surface, vec![c.clone()])?;
    let report = cut_along(surface, &system)?;
    Ok(report.components.len() == 2 && report.components.iter().any(is_trivial_piece))
}

/// Whether the curve bounds a disk, counting capped disks.
pub fn bounds_disk(surface: &Surface, c: &CurveWord) -> Result<bool> {
    let system = CurveSystem::new(surface, vec![c.clone()])?;
    let report = cut_along(surface, &system)?;
    Ok(report.components.iter().any(|p| p.genus == 0 && p.boundary_count == 1))
}

fn is_trivial_piece(p: &Component) -> bool {
    p.genus == 0 && (p.boundary_count == 1 || (p.boundary_count == 2 && p.original_boundaries.len() == 1))
}

/// Faces of `D` cut by possibly crossing chords, as the face of each arc of
/// `∂D` plus the total number of faces. Chord endpoints are placed on the
/// unit circle and chords drawn straight, so the arrangement is a genuine
/// planar one; any placement with the same endpoint order gives the same
/// cut surface up to homeomorphism.
fn chord_faces(r: &Realization) -> (Vec<usize>, usize, Arcs) {
    use std::f64::consts::{FRAC_PI_2, TAU};

    let arcs = Arcs::new(r);
    let m = arcs.keys.len();
    if m == 0 {
        return (vec![0], 1, arcs);
    }
    // irrational jitter keeps diagonals of the regular polygon from meeting
    let theta: Vec<f64> = (0..m)
        .map(|i| TAU * (i as f64 + ((i as f64 + 1.0) * 0.618_033_988_749_895).fract() * 0.3) / m as f64)
        .collect();
    let key_index: BTreeMap<i64, usize> = arcs.keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut points: Vec<(f64, f64)> = theta.iter().map(|t| (t.cos(), t.sin())).collect();
    let chords: Vec<(usize, usize)> = r.chords.iter().map(|c| (key_index[&c.from], key_index[&c.to])).collect();

    let mut along: Vec<Vec<(f64, usize)>> = vec![Vec::new(); chords.len()];
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            if !r.chords_cross(&r.chords[i], &r.chords[j]) {
                continue;
            }
            let (p, q) = (points[chords[i].0], points[chords[i].1]);
            let (u, v) = (points[chords[j].0], points[chords[j].1]);
            let d = (q.0 - p.0) * (v.1 - u.1) - (q.1 - p.1) * (v.0 - u.0);
            let t = ((u.0 - p.0) * (v.1 - u.1) - (u.1 - p.1) * (v.0 - u.0)) / d;
            let s = ((u.0 - p.0) * (q.1 - p.1) - (u.1 - p.1) * (q.0 - p.0)) / d;
            let id = points.len();
            points.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
            along[i].push((t, id));
            along[j].push((s, id));
        }
    }

    // edges: circle arcs i -> i+1 first, then chord segments
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        along[i].sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut prev = a;
        for &(_, v) in &along[i] {
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, b));
    }
    // half-edge 2e runs along edge e, 2e+1 against it
    let tail = |h: usize| if h.is_multiple_of(2) { edges[h / 2].0 } else { edges[h / 2].1 };
    let head = |h: usize| if h.is_multiple_of(2) { edges[h / 2].1 } else { edges[h / 2].0 };
    let direction = |h: usize| -> f64 {
        let (v, w) = (tail(h), head(h));
        if h / 2 < m {
            // circle arcs leave along the tangent
            if h.is_multiple_of(2) {
                theta[v] + FRAC_PI_2
            } else {
                theta[v] - FRAC_PI_2
            }
        } else {
            (points[w].1 - points[v].1).atan2(points[w].0 - points[v].0)
        }
    };
    let mut out: Vec<Vec<(f64, usize)>> = vec![Vec::new(); points.len()];
    for h in 0..2 * edges.len() {
        out[tail(h)].push((direction(h).rem_euclid(TAU), h));
    }
    let mut slot = vec![0usize; 2 * edges.len()];
    for list in out.iter_mut() {
        list.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (k, &(_, h)) in list.iter().enumerate() {
            slot[h] = k;
        }
    }
    // next half-edge around the face on the left: first clockwise from the
    // reverse at the head
    let next = |h: usize| {
        let rev = h ^ 1;
        let list = &out[tail(rev)];
        list[(slot[rev] + list.len() - 1) % list.len()].1
    };
    let mut face = vec![usize::MAX; 2 * edges.len()];
    let mut count = 0;
    for start in 0..2 * edges.len() {
        // the outer face is the clockwise circle
        if face[start] != usize::MAX || (start / 2 < m && start % 2 == 1) {
            continue;
        }
        let mut h = start;
        loop {
            face[h] = count;
            h = next(h);
            if h == start {
                break;
            }
        }
        count += 1;
    }
    let arc_face: Vec<usize> = (0..m).map(|i| face[2 * i]).collect();
    (arc_face, count, arcs)
}

/// Whether every complementary piece of the union of the curves is a disk
/// or an annulus onto an uncapped boundary component.
pub fn is_filling(surface: &Surface, system: &[CurveWord]) -> Result<bool> {
    for c in system {
        c.check_surface(surface)?;
        c.require_embedded()?;
    }
    let bordered = surface.bordered();
    if system.is_empty() {
        let e = surface.euler();
        return Ok(e == 1 || (e == 0 && surface.boundary_count() == 2));
    }
    let words: Vec<FreeWord> = system.iter().map(|c| c.word.clone()).collect();
    let r = Realization::new(&bordered, &words)?;
    let (arc_face, faces, arcs) = chord_faces(&r);
    let face_of_point = |p: i64| arc_face[arcs.of(p)];
    let pieces = assemble(surface, &r, &face_of_point, faces);
    for i in 0..pieces.euler.len() {
        let ok = match pieces.euler[i] {
            1 => true,
            0 => pieces.originals[i].len() == 1,
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the classification-of-surfaces test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceCertificate {
    pub exists: bool,
    pub from: CutReport,
    pub to: CutReport,
    /// Per curve: whether the matching exchanges the two sides.
    pub side_flips: Vec<bool>,
    pub reason: String,
}

/// Decides whether some mapping class carries `a` onto `b` curve by curve,
/// by matching the cut surfaces: component types, how curve sides and
/// original boundary components are distributed, with a free choice of
/// which side of each curve goes to which.
pub fn exists_mapping_class(surface: &Surface, a: &CurveSystem, b: &CurveSystem) -> Result<ExistenceCertificate> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let ra = cut_along(surface, a)?;
    let rb = cut_along(surface, b)?;
    let refuse = |reason: &str| ExistenceCertificate {
        exists: false,
        from: ra.clone(),
        to: rb.clone(),
        side_flips: Vec::new(),
        reason: reason.to_string(),
    };
    if ra.components.len() != rb.components.len() {
        return Ok(refuse("component counts differ"));
    }
    let n = a.len();
    if n > 20 {
        return Err(Error::Invalid("curve system too large for side matching".into()));
    }
    'flips: for mask in 0u32..(1u32 << n) {
        let mut map: Vec<Option<usize>> = vec![None; ra.components.len()];
        let mut used: Vec<Option<usize>> = vec![None; rb.components.len()];
        let bind = |x: usize, y: usize, map: &mut Vec<Option<usize>>, used: &mut Vec<Option<usize>>| -> bool {
            match (map[x], used[y]) {
                (None, None) => {
                    map[x] = Some(y);
                    used[y] = Some(x);
                    true
                }
                (Some(m), Some(u)) => m == y && u == x,
                _ => false,
            }
        };
        for i in 0..n {
            let flip = mask & (1 << i) != 0;
            let (la, ra_) = ra.sides[i];
            let (lb, rb_) = if flip { (rb.sides[i].1, rb.sides[i].0) } else { rb.sides[i] };
            if !bind(la, lb, &mut map, &mut used) || !bind(ra_, rb_, &mut map, &mut used) {
                continue 'flips;
            }
        }
        // components without curves match by boundary incidence (only possible with no curves)
        for x in 0..ra.components.len() {
            if map[x].is_none() {
                match (0..rb.components.len()).find(|&y| used[y].is_none()) {
                    Some(y) => {
                        map[x] = Some(y);
                        used[y] = Some(x);
                    }
                    None => continue 'flips,
                }
            }
        }
        for x in 0..ra.components.len() {
            let y = map[x].unwrap();
            let (ca, cb) = (&ra.components[x], &rb.components[y]);
            if ca.genus != cb.genus || ca.boundary_count != cb.boundary_count {
                continue 'flips;
            }
            let oa: BTreeSet<_> = ca.original_boundaries.iter().collect();
            let ob: BTreeSet<_> = cb.original_boundaries.iter().collect();
            if oa != ob {
                continue 'flips;
            }
        }
        return Ok(ExistenceCertificate {
            exists: true,
            from: ra.clone(),
            to: rb.clone(),
            side_flips: (0..n).map(|i| mask & (1 << i) != 0).collect(),
            reason: "cut surfaces match".into(),
        });
    }
    Ok(refuse("no matching of cut components"))
}

/// A sub-ribbon-graph inclusion of single-vertex models: the host rotation
/// restricted to the image edges is the sub rotation up to cyclic shift.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    sub: Surface,
    host: Surface,
    generator_map: Vec<usize>,
}

impl EmbeddingMap {
    /// `edge_injection` maps each generator of `sub` to a generator of `host`.
    pub fn new(sub: &Surface, host: &Surface, edge_injection: Vec<usize>) -> Result<EmbeddingMap> {
        if edge_injection.len() != sub.rank() {
            return Err(Error::LengthMismatch(edge_injection.len(), sub.rank()));
        }
        let image: BTreeSet<usize> = edge_injection.iter().copied().collect();
        if image.len() != edge_injection.len() || image.iter().any(|&e| e >= host.rank()) {
            return Err(Error::Structure("edge injection is not injective".into()));
        }
        let pushed: Vec<HalfEdge> = sub
            .rotation()
            .iter()
            .map(|h| HalfEdge::new(edge_injection[h.edge], h.plus))
            .collect();
        let restricted: Vec<HalfEdge> = host.rotation().iter().copied().filter(|h| image.contains(&h.edge)).collect();
        let n = pushed.len();
        let matches = n == 0 || (0..n).any(|s| (0..n).all(|i| restricted[(s + i) % n] == pushed[i]));
        if !matches || restricted.len() != n {
            return Err(Error::Structure("edge injection does not preserve the cyclic order".into()));
        }
        Ok(EmbeddingMap { sub: sub.clone(), host: host.clone(), generator_map: edge_injection })
    }

    pub fn identity(surface: &Surface) -> EmbeddingMap {
        EmbeddingMap { sub: surface.clone(), host: surface.clone(), generator_map: (0..surface.rank()).collect() }
    }

    pub fn sub(&self) -> &Surface {
        &self.sub
    }

    pub fn host(&self) -> &Surface {
        &self.host
    }

    pub fn push_word(&self, w: &FreeWord) -> FreeWord {
        FreeWord::from_letters(w.letters().iter().map(|&l| {
            let g = self.generator_map[crate::word::gen_index(l)];
            crate::word::letter(g, l > 0)
        }))
    }

    pub fn push_curve(&self, c: &CurveWord) -> Result<CurveWord> {
        c.check_surface(&self.sub)?;
        CurveWord::new(&self.host, c.name.clone(), self.push_word(&c.word))
    }
}

/// Builds a closed host for `sub`: bands `u1, u2, …` join every boundary
/// cycle to boundary 0, then `extra_genus` handles `(v_i, w_i)` are added and
/// the single remaining boundary is capped. Returns the inclusion.
pub fn close_up(sub: &Surface, extra_genus: usize) -> Result<EmbeddingMap> {
    let names: Vec<String> = (0..sub.rank()).map(|g| sub.generator_name(g).to_string()).collect();
    let fresh = |prefix: &str, i: usize| -> Result<String> {
        let n = format!("{prefix}{i}");
        if names.contains(&n) {
            return Err(Error::Structure(format!("edge label {n} is reserved for host bands")));
        }
        Ok(n)
    };
    // rotation with insertions after each gap
    let mut after_gap: Vec<Vec<(String, bool)>> = vec![Vec::new(); sub.rotation().len().max(1)];
    let k = sub.bordered_boundary_count();
    let base = sub.base_gap(0);
    for j in 1..k {
        let band = fresh("u", j)?;
        after_gap[base].push((band.clone(), true));
        after_gap[sub.base_gap(j)].insert(0, (band, false));
    }
    for i in 1..=extra_genus {
        let (v, w) = (fresh("v", i)?, fresh("w", i)?);
        after_gap[base].extend([(v.clone(), true), (w.clone(), true), (v, false), (w, false)]);
    }
    let mut order: Vec<(String, bool)> = Vec::new();
    let rot = sub.rotation();
    if rot.is_empty() {
        order.extend(after_gap[0].iter().cloned());
    }
    for (p, h) in rot.iter().enumerate() {
        order.push((names[h.edge].clone(), h.plus));
        order.extend(after_gap[p].iter().cloned());
    }
    let mut edges = names.clone();
    for (n, plus) in &order {
        if *plus && !edges.contains(n) {
            edges.push(n.clone());
        }
    }
    let edge_refs: Vec<&str> = edges.iter().map(|s| s.as_str()).collect();
    let order_refs: Vec<(&str, bool)> = order.iter().map(|(n, p)| (n.as_str(), *p)).collect();
    let ribbon = crate::surface::RibbonGraph::one_vertex(&edge_refs, &order_refs)?;
    let open = Surface::analyze(ribbon.clone(), &BTreeSet::new())?;
    if open.bordered_boundary_count() != 1 {
        return Err(Error::Structure("bands failed to join the boundary cycles".into()));
    }
    let host = Surface::analyze(ribbon, &BTreeSet::from([0]))?;
    EmbeddingMap::new(sub, &host, (0..sub.rank()).collect())
}
