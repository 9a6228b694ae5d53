//! Reduced words in a free group.
//!
//! Generators are numbered from 1; a letter is a nonzero `i32` whose sign
//! records the exponent. Words are kept freely reduced at all times.

use std::fmt;

/// A signed generator symbol. `Letter(k)` is generator `k-1`, `Letter(-k)` its inverse.
pub type Letter = i32;

#[inline]
pub fn gen_index(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

#[inline]
pub fn letter(index: usize, positive: bool) -> Letter {
    let l = index as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        FreeWord(vec![letter(index, true)])
    }

    /// Builds a word from raw letters, reducing it.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends one letter with free cancellation.
    pub fn push(&mut self, l: Letter) {
        debug_assert!(l != 0);
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn append(&mut self, other: &FreeWord) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            w.append(&base);
        }
        w
    }

    /// Cyclically reduced core of the word; the conjugator is dropped.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let v = &self.0;
        let (mut i, mut j) = (0usize, v.len());
        while j > i + 1 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord(v[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) => self.0.len() == 1 || a != -b,
            _ => true,
        }
    }

    /// Least rotation of the cyclic reduction, a canonical representative of
    /// the conjugacy class.
    pub fn conjugacy_normal_form(&self) -> FreeWord {
        let core = self.cyclic_reduce();
        FreeWord(least_rotation(&core.0))
    }

    pub fn is_conjugate(&self, other: &FreeWord) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        a.len() == b.len() && least_rotation(&a.0) == least_rotation(&b.0)
    }

    /// Canonical form of the unoriented free homotopy class: the smaller of
    /// the normal forms of `w` and `w^-1`.
    pub fn unoriented_normal_form(&self) -> FreeWord {
        let a = self.conjugacy_normal_form();
        let b = self.inverse().conjugacy_normal_form();
        a.min(b)
    }

    /// Rotation starting at position `start` (word must be cyclically reduced).
    pub fn rotate(&self, start: usize) -> FreeWord {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let s = start % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[s..]);
        v.extend_from_slice(&self.0[..s]);
        FreeWord(v)
    }

    /// Applies a substitution `generator index -> word` letter by letter.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut w = FreeWord::identity();
        for &l in &self.0 {
            let img = &images[gen_index(l)];
            if l > 0 {
                w.append(img);
            } else {
                for &m in img.0.iter().rev() {
                    w.push(-m);
                }
            }
        }
        w
    }

    /// Exponent sum of each generator (abelianization).
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            let i = gen_index(l);
            if i < rank {
                v[i] += l.signum() as i64;
            }
        }
        v
    }

    /// Whether the word is a proper power of a shorter cyclic word.
    pub fn is_proper_power(&self) -> bool {
        let c = self.cyclic_reduce();
        let n = c.0.len();
        (1..n).any(|p| n.is_multiple_of(p) && (0..n).all(|i| c.0[i] == c.0[(i + p) % n]))
    }
}

/// Booth's algorithm would do; words here are short so a quadratic scan is fine.
fn least_rotation(v: &[Letter]) -> Vec<Letter> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let key = |l: Letter| (l.unsigned_abs(), l < 0);
    let mut best = 0usize;
    for s in 1..n {
        for k in 0..n {
            let a = key(v[(s + k) % n]);
            let b = key(v[(best + k) % n]);
            if a != b {
                if a < b {
                    best = s;
                }
                break;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&v[best..]);
    out.extend_from_slice(&v[..best]);
    out
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({:?})", self.0)
    }
}
