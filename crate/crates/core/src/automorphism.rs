//! Mapping classes of bordered surfaces as automorphisms of the fundamental
//! groupoid.
//!
//! The basepoint sits in the base gap of boundary 0. Generators `1..=n` are
//! the band loops (leave `D` along the right edge of a band, come back
//! straight to the basepoint). For every further boundary cycle `j` there is
//! an arc generator `t_j`: the straight segment in `D` from the basepoint to
//! the base gap of boundary `j`. A mapping class that fixes the boundary
//! pointwise sends `t_j` to `w·t_j` for a loop `w`, so it acts on the free
//! group on all of these letters and composition is plain substitution. The
//! arc letters are what make the action faithful when there is more than one
//! boundary component: twists about boundary curves other than the base one
//! act trivially on loops but move the arcs.

use std::fmt;

use crate::error::{Error, Result};
use crate::realize::Realization;
use crate::surface::{HalfEdge, Surface};
use crate::word::{letter, FreeWord};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    surface: u64,
    rank: usize,
    images: Vec<FreeWord>,
    inverse: Vec<FreeWord>,
}

/// Handedness of a Dehn twist. `Right` is the twist of a positive
/// (right-hand) letter; arcs crossing the curve turn right onto it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hand {
    Right,
    Left,
}

impl Hand {
    pub fn from_sign(s: i32) -> Hand {
        if s >= 0 {
            Hand::Right
        } else {
            Hand::Left
        }
    }

    pub fn flip(self) -> Hand {
        match self {
            Hand::Right => Hand::Left,
            Hand::Left => Hand::Right,
        }
    }
}

/// Number of generators (loops plus arcs) of the groupoid model.
pub fn groupoid_rank(surface: &Surface) -> usize {
    surface.rank() + surface.bordered_boundary_count() - 1
}

/// Peripheral words in the groupoid generators: boundary `j` based at its
/// own base gap, written `t_j⁻¹ · ∂_j · t_j` with `∂_j` read through `D`.
pub fn peripheral_words(surface: &Surface) -> Vec<FreeWord> {
    let n = surface.rank();
    surface
        .boundaries()
        .iter()
        .enumerate()
        .map(|(j, b)| {
            if j == 0 {
                b.word.clone()
            } else {
                let t = FreeWord::generator(n + j - 1);
                t.inverse().mul(&b.word).mul(&t)
            }
        })
        .collect()
}

impl Automorphism {
    pub fn identity(surface: &Surface) -> Automorphism {
        let rank = groupoid_rank(surface);
        let images: Vec<FreeWord> = (0..rank).map(FreeWord::generator).collect();
        Automorphism {
            surface: surface.fingerprint(),
            rank,
            inverse: images.clone(),
            images,
        }
    }

    /// Builds an automorphism from explicit images and inverse images,
    /// checking that they are mutually inverse.
    pub fn from_images(surface: &Surface, images: Vec<FreeWord>, inverse: Vec<FreeWord>) -> Result<Automorphism> {
        let rank = groupoid_rank(surface);
        if images.len() != rank || inverse.len() != rank {
            return Err(Error::LengthMismatch(images.len(), rank));
        }
        let a = Automorphism { surface: surface.fingerprint(), rank, images, inverse };
        for g in 0..rank {
            let there = a.images[g].substitute(&a.inverse);
            let back = a.inverse[g].substitute(&a.images);
            if there != FreeWord::generator(g) || back != FreeWord::generator(g) {
                return Err(Error::Invalid("images and inverse witness disagree".into()));
            }
        }
        Ok(a)
    }

    /// Dehn twist about the embedded curve with word `curve`.
    pub fn twist(surface: &Surface, curve: &FreeWord, hand: Hand) -> Result<Automorphism> {
        if !surface.capped().is_empty() {
            return Err(Error::ClosedSurface);
        }
        let r = Realization::new(surface, std::slice::from_ref(curve))?;
        let crossings = r.self_crossings(0);
        if crossings > 0 {
            return Err(Error::NotEmbedded { name: format!("{:?}", curve.letters()), count: crossings });
        }
        let images = twist_images(surface, &r, curve, hand);
        let inverse = twist_images(surface, &r, curve, hand.flip());
        Ok(Automorphism {
            surface: surface.fingerprint(),
            rank: groupoid_rank(surface),
            images,
            inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_witness(&self) -> &[FreeWord] {
        &self.inverse
    }

    pub fn surface_key(&self) -> u64 {
        self.surface
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.surface != other.surface || self.rank != other.rank {
            return Err(Error::SurfaceMismatch);
        }
        Ok(Automorphism {
            surface: self.surface,
            rank: self.rank,
            images: other.images.iter().map(|w| w.substitute(&self.images)).collect(),
            inverse: self.inverse.iter().map(|w| w.substitute(&other.inverse)).collect(),
        })
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            surface: self.surface,
            rank: self.rank,
            images: self.inverse.clone(),
            inverse: self.images.clone(),
        }
    }

    pub fn equals(&self, other: &Automorphism) -> Result<bool> {
        if self.surface != other.surface || self.rank != other.rank {
            return Err(Error::SurfaceMismatch);
        }
        Ok(self.images == other.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, w)| *w == FreeWord::generator(g))
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// Image of a free homotopy class (a curve), cyclically reduced.
    pub fn apply_curve(&self, w: &FreeWord) -> FreeWord {
        self.apply(w).cyclic_reduce()
    }

    pub fn pow(&self, n: i64) -> Automorphism {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Automorphism {
            surface: self.surface,
            rank: self.rank,
            images: (0..self.rank).map(FreeWord::generator).collect(),
            inverse: (0..self.rank).map(FreeWord::generator).collect(),
        };
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base).expect("same surface");
        }
        acc
    }

    /// Boundary loops map to conjugates of themselves.
    pub fn peripheral_check(&self, surface: &Surface) -> bool {
        if surface.fingerprint() != self.surface {
            return false;
        }
        peripheral_words(surface)
            .iter()
            .all(|w| self.apply(w).is_conjugate(w))
    }

    /// Boundary loops (read from the basepoint) are fixed exactly, as they
    /// must be for a map that is the identity on the boundary.
    pub fn fixes_boundary(&self, surface: &Surface) -> bool {
        if surface.fingerprint() != self.surface {
            return false;
        }
        peripheral_words(surface).iter().all(|w| self.apply(w) == *w)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter().map(|w| w.letters())).finish()
    }
}

fn twist_images(surface: &Surface, r: &Realization, curve: &FreeWord, hand: Hand) -> Vec<FreeWord> {
    let n = surface.rank();
    let base = r.gap_key(surface.base_gap(0));
    let detours = |x: i64, y: i64| -> FreeWord {
        let mut w = FreeWord::identity();
        for (k, left_to_right) in r.segment_crossings(0, x, y) {
            let chord = r.chords[k];
            let along = left_to_right == (hand == Hand::Right);
            let rot = curve.rotate(chord.index + 1);
            if along {
                w.append(&rot);
            } else {
                w.append(&rot.inverse());
            }
        }
        w
    };
    let mut images = Vec::with_capacity(groupoid_rank(surface));
    for e in 0..n {
        let out = r.band_edge_key(surface, HalfEdge::new(e, true));
        let back = r.band_edge_key(surface, HalfEdge::new(e, false));
        let mut w = detours(base, out);
        w.push(letter(e, true));
        w.append(&detours(back, base));
        images.push(w);
    }
    for j in 1..surface.bordered_boundary_count() {
        let target = r.gap_key(surface.base_gap(j));
        let mut w = detours(base, target);
        w.push(letter(n + j - 1, true));
        images.push(w);
    }
    images
}
