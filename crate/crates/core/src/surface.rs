//! Combinatorial surfaces: ribbon graphs, their thickenings, and boundary data.
//!
//! A surface is normalized to a single vertex by contracting a spanning tree.
//! The thickened vertex is a disk `D` whose boundary circle carries the
//! half-edge ends in counterclockwise order; every edge is an untwisted band.
//! Gap `j` is the arc of `∂D` between the ends at positions `j` and `j+1`;
//! gaps are the pieces of `∂D` lying on the surface boundary.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::word::{gen_index, letter, FreeWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    /// `true` for the end a positive traversal leaves through.
    pub plus: bool,
}

impl HalfEdge {
    pub fn new(edge: usize, plus: bool) -> Self {
        HalfEdge { edge, plus }
    }

    pub fn opposite(self) -> Self {
        HalfEdge { edge: self.edge, plus: !self.plus }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    edges: Vec<String>,
    vertices: Vec<Vec<HalfEdge>>,
}

impl RibbonGraph {
    /// Checks that every half-edge occurs in exactly one cyclic order.
    pub fn new(edges: Vec<String>, vertices: Vec<Vec<HalfEdge>>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (v, order) in vertices.iter().enumerate() {
            for h in order {
                if h.edge >= edges.len() {
                    return Err(Error::Structure(format!("half-edge of unknown edge {}", h.edge)));
                }
                if seen.insert(*h, v).is_some() {
                    return Err(Error::Structure(format!(
                        "half-edge {}{} listed twice",
                        edges[h.edge],
                        if h.plus { "+" } else { "-" }
                    )));
                }
            }
        }
        for (e, name) in edges.iter().enumerate() {
            for plus in [true, false] {
                if !seen.contains_key(&HalfEdge::new(e, plus)) {
                    return Err(Error::Structure(format!(
                        "half-edge {}{} missing from every vertex",
                        name,
                        if plus { "+" } else { "-" }
                    )));
                }
            }
        }
        if vertices.is_empty() {
            return Err(Error::Structure("no vertices".into()));
        }
        let names: BTreeSet<_> = edges.iter().collect();
        if names.len() != edges.len() {
            return Err(Error::Structure("duplicate edge label".into()));
        }
        Ok(RibbonGraph { edges, vertices })
    }

    /// Single vertex with the given cyclic order.
    pub fn one_vertex(edges: &[&str], order: &[(&str, bool)]) -> Result<Self> {
        let names: Vec<String> = edges.iter().map(|s| s.to_string()).collect();
        let mut hs = Vec::new();
        for (n, plus) in order {
            let e = names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::Structure(format!("undeclared edge {n}")))?;
            hs.push(HalfEdge::new(e, *plus));
        }
        RibbonGraph::new(names, vec![hs])
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vec<HalfEdge>] {
        &self.vertices
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e == name)
    }

    fn vertex_of(&self) -> HashMap<HalfEdge, usize> {
        let mut m = HashMap::new();
        for (v, order) in self.vertices.iter().enumerate() {
            for h in order {
                m.insert(*h, v);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycle {
    /// Gap indices in the order the boundary runs through them.
    pub gaps: Vec<usize>,
    /// Word of the boundary loop read from its base gap (`gaps[0]`).
    pub word: FreeWord,
}

/// A compact oriented surface given by a ribbon graph, with some boundary
/// cycles optionally filled by disks.
#[derive(Clone, Debug)]
pub struct Surface {
    ribbon: RibbonGraph,
    /// Original edge index of each π₁ generator.
    generator_edges: Vec<usize>,
    /// Generator index of each original edge (`None` for contracted tree edges).
    edge_generator: Vec<Option<usize>>,
    /// Tail/head vertices of original edges, for closed-path checks.
    ends: Vec<(usize, usize)>,
    rotation: Vec<HalfEdge>,
    position: Vec<[usize; 2]>,
    boundaries: Vec<BoundaryCycle>,
    gap_boundary: Vec<usize>,
    capped: BTreeSet<usize>,
    euler: i64,
    genus: usize,
    fingerprint: u64,
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint && self.ribbon == other.ribbon && self.capped == other.capped
    }
}

impl Surface {
    /// Traces boundary cycles and derives genus and Euler characteristic.
    pub fn analyze(ribbon: RibbonGraph, caps: &BTreeSet<usize>) -> Result<Surface> {
        let nv = ribbon.vertices.len();
        let ne = ribbon.edges.len();
        let vof = ribbon.vertex_of();
        let ends: Vec<(usize, usize)> = (0..ne)
            .map(|e| (vof[&HalfEdge::new(e, true)], vof[&HalfEdge::new(e, false)]))
            .collect();

        // spanning tree by BFS from vertex 0
        let mut parent_edge = vec![None; nv];
        let mut visited = vec![false; nv];
        let mut tree = vec![false; ne];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(v) = queue.pop_front() {
            for h in &ribbon.vertices[v] {
                let (a, b) = ends[h.edge];
                let w = if a == v { b } else { a };
                if !visited[w] {
                    visited[w] = true;
                    tree[h.edge] = true;
                    parent_edge[w] = Some(h.edge);
                    queue.push_back(w);
                }
            }
        }
        if visited.iter().any(|x| !x) {
            return Err(Error::Structure("ribbon graph is disconnected".into()));
        }

        // contract tree edges one at a time
        let mut rot: Vec<Vec<HalfEdge>> = ribbon.vertices.clone();
        let mut alive = vec![true; nv];
        let mut where_is: HashMap<HalfEdge, usize> = vof.clone();
        for e in (0..ne).filter(|&e| tree[e]) {
            let u = where_is[&HalfEdge::new(e, true)];
            let v = where_is[&HalfEdge::new(e, false)];
            debug_assert!(u != v);
            let hu = HalfEdge::new(e, true);
            let hv = HalfEdge::new(e, false);
            let vr = rot[v].clone();
            let iv = vr.iter().position(|h| *h == hv).unwrap();
            let inserted: Vec<HalfEdge> =
                (1..vr.len()).map(|k| vr[(iv + k) % vr.len()]).collect();
            let ur = rot[u].clone();
            let iu = ur.iter().position(|h| *h == hu).unwrap();
            let mut merged = Vec::with_capacity(ur.len() + inserted.len());
            merged.extend_from_slice(&ur[..iu]);
            merged.extend_from_slice(&inserted);
            merged.extend_from_slice(&ur[iu + 1..]);
            for h in &merged {
                where_is.insert(*h, u);
            }
            rot[u] = merged;
            rot[v].clear();
            alive[v] = false;
        }
        let root = (0..nv).find(|&v| alive[v]).unwrap();
        let orig_rotation = rot[root].clone();

        let generator_edges: Vec<usize> = (0..ne).filter(|&e| !tree[e]).collect();
        let mut edge_generator = vec![None; ne];
        for (g, &e) in generator_edges.iter().enumerate() {
            edge_generator[e] = Some(g);
        }
        let rotation: Vec<HalfEdge> = orig_rotation
            .iter()
            .map(|h| HalfEdge::new(edge_generator[h.edge].unwrap(), h.plus))
            .collect();
        let n = generator_edges.len();
        let mut position = vec![[0usize; 2]; n];
        for (p, h) in rotation.iter().enumerate() {
            position[h.edge][if h.plus { 0 } else { 1 }] = p;
        }

        // boundary cycles: gap j -> gap at the opposite end of the next half-edge
        let (boundaries, gap_boundary) = if n == 0 {
            (vec![BoundaryCycle { gaps: vec![0], word: FreeWord::identity() }], vec![0])
        } else {
            let m = 2 * n;
            let mut gap_boundary = vec![usize::MAX; m];
            let mut bs = Vec::new();
            for start in 0..m {
                if gap_boundary[start] != usize::MAX {
                    continue;
                }
                let id = bs.len();
                let mut gaps = Vec::new();
                let mut word = FreeWord::identity();
                let mut j = start;
                loop {
                    gap_boundary[j] = id;
                    gaps.push(j);
                    let h = rotation[(j + 1) % m];
                    word.push(letter(h.edge, h.plus));
                    let o = h.opposite();
                    j = position[o.edge][if o.plus { 0 } else { 1 }];
                    if j == start {
                        break;
                    }
                }
                bs.push(BoundaryCycle { gaps, word });
            }
            (bs, gap_boundary)
        };

        let k = boundaries.len();
        for &c in caps {
            if c >= k {
                return Err(Error::Structure(format!(
                    "cap refers to boundary {c}, surface has {k}"
                )));
            }
        }
        let euler = nv as i64 - ne as i64;
        let twice_genus = 2 - euler - k as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Structure("inconsistent Euler characteristic".into()));
        }

        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        ribbon.hash(&mut hasher);
        caps.hash(&mut hasher);
        let fingerprint = hasher.finish();

        Ok(Surface {
            ribbon,
            generator_edges,
            edge_generator,
            ends,
            rotation,
            position,
            boundaries,
            gap_boundary,
            capped: caps.clone(),
            euler,
            genus: (twice_genus / 2) as usize,
            fingerprint,
        })
    }

    pub fn ribbon(&self) -> &RibbonGraph {
        &self.ribbon
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of boundary components left after capping.
    pub fn boundary_count(&self) -> usize {
        self.boundaries.len() - self.capped.len()
    }

    /// Number of boundary cycles of the ribbon graph (bordered model).
    pub fn bordered_boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Euler characteristic of the bordered model, `V - E`.
    pub fn bordered_euler(&self) -> i64 {
        self.euler
    }

    /// Euler characteristic after capping.
    pub fn euler(&self) -> i64 {
        self.euler + self.capped.len() as i64
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_count() == 0
    }

    pub fn capped(&self) -> &BTreeSet<usize> {
        &self.capped
    }

    /// The same ribbon graph with no caps.
    pub fn bordered(&self) -> Surface {
        Surface::analyze(self.ribbon.clone(), &BTreeSet::new())
            .expect("ribbon graph was already validated")
    }

    pub fn with_caps(&self, caps: &BTreeSet<usize>) -> Result<Surface> {
        Surface::analyze(self.ribbon.clone(), caps)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Rank of the free fundamental group of the bordered model.
    pub fn rank(&self) -> usize {
        self.generator_edges.len()
    }

    pub fn generator_name(&self, g: usize) -> &str {
        &self.ribbon.edges[self.generator_edges[g]]
    }

    pub fn rotation(&self) -> &[HalfEdge] {
        &self.rotation
    }

    /// Position of a generator half-edge on the disk boundary.
    pub fn position(&self, h: HalfEdge) -> usize {
        self.position[h.edge][if h.plus { 0 } else { 1 }]
    }

    pub fn boundaries(&self) -> &[BoundaryCycle] {
        &self.boundaries
    }

    pub fn boundary_of_gap(&self, gap: usize) -> usize {
        self.gap_boundary[gap]
    }

    /// Base gap of each boundary cycle (where its basepoint sits).
    pub fn base_gap(&self, boundary: usize) -> usize {
        self.boundaries[boundary].gaps[0]
    }

    /// Translates a letter sequence over original edge labels into a reduced
    /// generator word, checking that it is a closed path.
    pub fn path_word(&self, edges: &[(usize, bool)]) -> Result<FreeWord> {
        if edges.is_empty() {
            return Ok(FreeWord::identity());
        }
        let step = |(e, pos): (usize, bool)| {
            let (t, h) = self.ends[e];
            if pos {
                (t, h)
            } else {
                (h, t)
            }
        };
        for i in 0..edges.len() {
            let (_, head) = step(edges[i]);
            let (tail, _) = step(edges[(i + 1) % edges.len()]);
            if head != tail {
                return Err(Error::BadCurve(String::new()));
            }
        }
        Ok(FreeWord::from_letters(edges.iter().filter_map(|&(e, pos)| {
            self.edge_generator[e].map(|g| letter(g, pos))
        })))
    }

    /// Renders a generator word with edge labels; inverses as upper case
    /// when labels are single lower-case letters, otherwise with a `-` suffix.
    pub fn format_word(&self, w: &FreeWord) -> String {
        let simple = self
            .generator_edges
            .iter()
            .all(|&e| self.ribbon.edges[e].chars().all(|c| c.is_ascii_lowercase()) && self.ribbon.edges[e].len() == 1);
        let mut parts = Vec::new();
        for &l in w.letters() {
            let g = gen_index(l);
            let name = if g < self.rank() {
                self.generator_name(g).to_string()
            } else {
                format!("t{}", g - self.rank() + 1)
            };
            if l > 0 {
                parts.push(name);
            } else if simple {
                parts.push(name.to_uppercase());
            } else {
                parts.push(format!("{name}-"));
            }
        }
        if simple {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Parses a word over edge labels: whitespace separated `x` / `x-`
    /// tokens, or a run of single-letter labels with upper case for inverses.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        let mut out: Vec<(usize, bool)> = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let single = |c: char| -> Result<(usize, bool)> {
            let lower = c.to_ascii_lowercase().to_string();
            let e = self
                .ribbon
                .edge_index(&lower)
                .ok_or_else(|| Error::Invalid(format!("undeclared edge label `{c}`")))?;
            Ok((e, c.is_ascii_lowercase()))
        };
        for t in tokens {
            if let Some(e) = self.ribbon.edge_index(t) {
                out.push((e, true));
            } else if let Some(e) = t.strip_suffix('-').and_then(|s| self.ribbon.edge_index(s)) {
                out.push((e, false));
            } else if let Some(e) = t.strip_suffix('+').and_then(|s| self.ribbon.edge_index(s)) {
                out.push((e, true));
            } else {
                for c in t.chars() {
                    out.push(single(c)?);
                }
            }
        }
        self.path_word(&out)
    }
}

/// Letter traversal helper: the half-edge a traversal leaves `D` through.
#[inline]
pub(crate) fn departure(l: Letter) -> HalfEdge {
    HalfEdge::new(gen_index(l), l > 0)
}

/// The half-edge a traversal re-enters `D` through.
#[inline]
pub(crate) fn arrival(l: Letter) -> HalfEdge {
    HalfEdge::new(gen_index(l), l < 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_caps() -> BTreeSet<usize> {
        BTreeSet::new()
    }

    #[test]
    fn disk() {
        let r = RibbonGraph::new(vec![], vec![vec![]]).unwrap();
        let s = Surface::analyze(r, &no_caps()).unwrap();
        assert_eq!((s.genus(), s.boundary_count(), s.euler()), (0, 1, 1));
    }

    #[test]
    fn one_holed_torus() {
        let r = RibbonGraph::one_vertex(&["a", "b"], &[("a", true), ("b", true), ("a", false), ("b", false)]).unwrap();
        let s = Surface::analyze(r, &no_caps()).unwrap();
        assert_eq!((s.genus(), s.boundary_count(), s.euler()), (1, 1, -1));
        // boundary word is a commutator
        assert_eq!(s.boundaries()[0].word.abelianize(2), vec![0, 0]);
        assert_eq!(s.boundaries()[0].word.len(), 4);
    }

    #[test]
    fn annulus() {
        let r = RibbonGraph::one_vertex(&["a"], &[("a", true), ("a", false)]).unwrap();
        let s = Surface::analyze(r, &no_caps()).unwrap();
        assert_eq!((s.genus(), s.boundary_count(), s.euler()), (0, 2, 0));
    }

    #[test]
    fn capping_closes() {
        let r = RibbonGraph::one_vertex(&["a", "b"], &[("a", true), ("b", true), ("a", false), ("b", false)]).unwrap();
        let s = Surface::analyze(r, &BTreeSet::from([0])).unwrap();
        assert!(s.is_closed());
        assert_eq!(s.euler(), 0);
        assert!(Surface::analyze(s.ribbon().clone(), &BTreeSet::from([1])).is_err());
    }

    #[test]
    fn contraction_matches_one_vertex_model() {
        // theta graph: two vertices, three edges; a planar pair of pants
        let r = RibbonGraph::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![HalfEdge::new(0, true), HalfEdge::new(1, true), HalfEdge::new(2, true)],
                vec![HalfEdge::new(0, false), HalfEdge::new(2, false), HalfEdge::new(1, false)],
            ],
        )
        .unwrap();
        let s = Surface::analyze(r, &no_caps()).unwrap();
        assert_eq!((s.genus(), s.boundary_count(), s.rank()), (0, 3, 2));
        // theta with the twisted order is a one-holed torus
        let r = RibbonGraph::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![HalfEdge::new(0, true), HalfEdge::new(1, true), HalfEdge::new(2, true)],
                vec![HalfEdge::new(0, false), HalfEdge::new(1, false), HalfEdge::new(2, false)],
            ],
        )
        .unwrap();
        let s = Surface::analyze(r, &no_caps()).unwrap();
        assert_eq!((s.genus(), s.boundary_count()), (1, 1));
    }

    #[test]
    fn malformed_pairing_rejected() {
        let e = RibbonGraph::new(vec!["a".into()], vec![vec![HalfEdge::new(0, true), HalfEdge::new(0, true)]]);
        assert!(matches!(e, Err(Error::Structure(_))));
        let e = RibbonGraph::new(vec!["a".into()], vec![vec![HalfEdge::new(0, true)]]);
        assert!(matches!(e, Err(Error::Structure(_))));
    }
}
