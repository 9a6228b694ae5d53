//! Embedded representatives of curve words on the thickened ribbon graph.
//!
//! Every traversal of a band by a curve is a strand. Strands inside a band
//! are ordered by walking forward along both curves until they leave a vertex
//! through different half-edges and comparing those half-edges in the cyclic
//! order (a lexicographic order on the periodic words). Inside the vertex
//! disk each curve becomes a set of chords between slots on `∂D`; with this
//! ordering, chord crossings correspond one-to-one with linked pairs of
//! strands, so they count minimal intersection numbers.
//!
//! Positions on `∂D` are integer keys: half-edge position `h` owns the range
//! `[h*B, (h+1)*B)`; the slot of lateral rank `s` is at `h*B + 2(s+1)`, and
//! gap `h` (after the end at `h`) is at `h*B + B - 1`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::surface::{arrival, departure, HalfEdge, Surface};
use crate::word::{gen_index, FreeWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chord {
    pub curve: usize,
    /// The chord follows traversal `index` and precedes `index + 1`.
    pub index: usize,
    pub from: i64,
    pub to: i64,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub words: Vec<FreeWord>,
    /// Strand count per band.
    pub strands: Vec<usize>,
    /// Lateral rank of each traversal, counted from the right of the band's
    /// positive direction.
    pub lateral: Vec<Vec<usize>>,
    pub chords: Vec<Chord>,
    pub block: i64,
    pub circumference: i64,
}

#[derive(Clone, Copy)]
struct Walker {
    curve: usize,
    pos: usize,
    forward: bool,
}

impl Realization {
    /// Realizes the given cyclically reduced, non-trivial, primitive words
    /// simultaneously. Parallel curves are stacked with lower-indexed curves
    /// to the left of their own direction of travel.
    pub fn new(surface: &Surface, words: &[FreeWord]) -> Result<Realization> {
        for w in words {
            if w.is_empty() || !w.is_cyclically_reduced() || w.is_proper_power() {
                return Err(Error::BadCurve(format!("{:?}", w.letters())));
            }
        }
        let n = surface.rank();
        let mut per_edge: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (c, w) in words.iter().enumerate() {
            for (i, &l) in w.letters().iter().enumerate() {
                per_edge[gen_index(l)].push((c, i));
            }
        }
        let m2 = 2 * n;
        let pos = |h: HalfEdge| surface.position(h) as i64;
        let letter_at = |w: &Walker| -> Letter {
            let l = words[w.curve].letters()[w.pos];
            if w.forward {
                l
            } else {
                -l
            }
        };
        let step = |w: &Walker| -> Walker {
            let len = words[w.curve].len();
            let pos = if w.forward { (w.pos + 1) % len } else { (w.pos + len - 1) % len };
            Walker { pos, ..*w }
        };
        // Less means `a` lies to the right of `b`, both read in the
        // direction their current letters are traversed.
        let compare_walk = |mut a: Walker, mut b: Walker| -> Option<Ordering> {
            let limit = words[a.curve].len() + words[b.curve].len() + 2;
            for _ in 0..limit {
                let h = arrival(letter_at(&a));
                debug_assert_eq!(h, arrival(letter_at(&b)));
                let na = step(&a);
                let nb = step(&b);
                let xa = departure(letter_at(&na));
                let xb = departure(letter_at(&nb));
                if xa != xb {
                    let da = (pos(xa) - pos(h)).rem_euclid(m2 as i64);
                    let db = (pos(xb) - pos(h)).rem_euclid(m2 as i64);
                    return Some(da.cmp(&db));
                }
                a = na;
                b = nb;
            }
            None
        };

        let mut lateral: Vec<Vec<usize>> = words.iter().map(|w| vec![0; w.len()]).collect();
        let mut strands = vec![0usize; n];
        for e in 0..n {
            let mut list = per_edge[e].clone();
            let aligned = |&(c, i): &(usize, usize)| Walker {
                curve: c,
                pos: i,
                forward: words[c].letters()[i] > 0,
            };
            let mut err = None;
            list.sort_by(|x, y| {
                if x == y {
                    return Ordering::Equal;
                }
                match compare_walk(aligned(x), aligned(y)) {
                    Some(o) => o,
                    None => {
                        if x.0 == y.0 {
                            err = Some(x.0);
                            return x.1.cmp(&y.1);
                        }
                        // parallel: lower curve index to the left of its own travel
                        let (low, low_is_x) = if x.0 < y.0 { (x, true) } else { (y, false) };
                        let low_forward = words[low.0].letters()[low.1] > 0;
                        let low_left = if low_forward { Ordering::Greater } else { Ordering::Less };
                        if low_is_x {
                            low_left
                        } else {
                            low_left.reverse()
                        }
                    }
                }
            });
            if let Some(c) = err {
                return Err(Error::BadCurve(format!("{:?}", words[c].letters())));
            }
            strands[e] = list.len();
            for (rank, &(c, i)) in list.iter().enumerate() {
                lateral[c][i] = rank;
            }
        }

        let s_max = strands.iter().copied().max().unwrap_or(0) as i64;
        let block = 2 * s_max + 6;
        let circumference = block * (m2.max(1) as i64);
        let slot_key = |h: HalfEdge, ccw_slot: i64| pos(h) * block + 2 * (ccw_slot + 1);
        let mut chords = Vec::new();
        for (c, w) in words.iter().enumerate() {
            let len = w.len();
            let ends = |i: usize| -> (i64, i64) {
                let l = w.letters()[i];
                let e = gen_index(l);
                let s = strands[e] as i64;
                let p = lateral[c][i] as i64;
                let plus_key = slot_key(HalfEdge::new(e, true), p);
                let minus_key = slot_key(HalfEdge::new(e, false), s - 1 - p);
                if l > 0 {
                    (plus_key, minus_key)
                } else {
                    (minus_key, plus_key)
                }
            };
            for i in 0..len {
                let (_, arr) = ends(i);
                let (dep, _) = ends((i + 1) % len);
                chords.push(Chord { curve: c, index: i, from: arr, to: dep });
            }
        }
        Ok(Realization {
            words: words.to_vec(),
            strands,
            lateral,
            chords,
            block,
            circumference,
        })
    }

    /// Key of the boundary point in gap `g`.
    pub fn gap_key(&self, g: usize) -> i64 {
        g as i64 * self.block + self.block - 1
    }

    /// Key where a loop running along the right edge of band `e` leaves or
    /// enters `D` at half-edge `h` of that band.
    pub fn band_edge_key(&self, surface: &Surface, h: HalfEdge) -> i64 {
        let base = surface.position(h) as i64 * self.block;
        if h.plus {
            base
        } else {
            base + 2 * (self.strands[h.edge] as i64 + 1)
        }
    }

    /// Whether `z` lies strictly inside the counterclockwise arc from `x` to `y`.
    pub fn in_arc(&self, x: i64, y: i64, z: i64) -> bool {
        let l = self.circumference;
        let dz = (z - x).rem_euclid(l);
        let dy = (y - x).rem_euclid(l);
        dz > 0 && dz < dy
    }

    pub fn chords_cross(&self, a: &Chord, b: &Chord) -> bool {
        self.in_arc(a.from, a.to, b.from) != self.in_arc(a.from, a.to, b.to)
    }

    pub fn self_crossings(&self, curve: usize) -> usize {
        let cs: Vec<&Chord> = self.chords.iter().filter(|c| c.curve == curve).collect();
        let mut n = 0;
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if self.chords_cross(cs[i], cs[j]) {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn mutual_crossings(&self, c1: usize, c2: usize) -> usize {
        let a: Vec<&Chord> = self.chords.iter().filter(|c| c.curve == c1).collect();
        let b: Vec<&Chord> = self.chords.iter().filter(|c| c.curve == c2).collect();
        a.iter()
            .map(|x| b.iter().filter(|y| self.chords_cross(x, y)).count())
            .sum()
    }

    /// Crossings of curve chords with the straight segment `x -> y` in `D`,
    /// ordered from `x`. Each entry is `(chord index, left_to_right)` where
    /// `left_to_right` means the curve passes from the left of the segment
    /// to its right.
    pub fn segment_crossings(&self, curve: usize, x: i64, y: i64) -> Vec<(usize, bool)> {
        let mut hits: Vec<(i64, usize, bool)> = Vec::new();
        for (k, c) in self.chords.iter().enumerate() {
            if c.curve != curve {
                continue;
            }
            let from_right = self.in_arc(x, y, c.from);
            let to_right = self.in_arc(x, y, c.to);
            if from_right != to_right {
                let right_end = if from_right { c.from } else { c.to };
                let d = (right_end - x).rem_euclid(self.circumference);
                hits.push((d, k, !from_right));
            }
        }
        hits.sort();
        hits.into_iter().map(|(_, k, lr)| (k, lr)).collect()
    }
}
