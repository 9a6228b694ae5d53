//! First homology of the bordered surface and the symplectic action of
//! mapping classes on it.
//!
//! The lattice basis is the band loops. The pairing is read off the same
//! crossing data the twist construction uses, so a right-handed twist about
//! `c` acts as `x ↦ x + ⟨x,c⟩c`. On a bordered surface the pairing is
//! degenerate along boundary classes; capping a boundary quotients its class
//! out.

use std::fmt;
use std::time::Instant;

use crate::automorphism::{Automorphism, Hand};
use crate::curves::CurveWord;
use crate::error::{Error, Result};
use crate::realize::Realization;
use crate::surface::{HalfEdge, Surface};
use crate::twist::{Certificate, CurveTable, TranscriptEntry, TwistLetter, TwistWord};
use crate::word::FreeWord;

pub type Vector = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegralMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntegralMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntegralMatrix { n, data }
    }

    pub fn zero(n: usize) -> Self {
        IntegralMatrix { n, data: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &IntegralMatrix) -> Result<IntegralMatrix> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    let p = self.get(i, k).checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(p).ok_or(Error::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vector> {
        (0..self.n)
            .map(|i| {
                let mut acc: i64 = 0;
                for (k, &x) in v.iter().enumerate() {
                    acc = acc
                        .checked_add(self.get(i, k).checked_mul(x).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn transpose(&self) -> IntegralMatrix {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j) as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(Error::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow)
    }
}

impl fmt::Debug for IntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i64>> = (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// `H₁` of the bordered surface with its intersection pairing.
#[derive(Clone, Debug)]
pub struct HomologyLattice {
    rank: usize,
    form: IntegralMatrix,
    /// Row-echelon basis of the span of capped boundary classes.
    capped_span: Vec<Vector>,
    surface: u64,
}

impl HomologyLattice {
    pub fn new(surface: &Surface) -> Result<HomologyLattice> {
        let n = surface.rank();
        let bordered = surface.bordered();
        let mut form = IntegralMatrix::zero(n);
        for f in 0..n {
            let w = FreeWord::generator(f);
            let r = Realization::new(&bordered, std::slice::from_ref(&w))?;
            let base = r.gap_key(bordered.base_gap(0));
            for e in 0..n {
                let out = r.band_edge_key(&bordered, HalfEdge::new(e, true));
                let back = r.band_edge_key(&bordered, HalfEdge::new(e, false));
                let mut count = 0i64;
                for (x, y) in [(base, out), (back, base)] {
                    for (_, left_to_right) in r.segment_crossings(0, x, y) {
                        count += if left_to_right { 1 } else { -1 };
                    }
                }
                form.set(e, f, count);
            }
        }
        let classes: Vec<Vector> = surface
            .capped()
            .iter()
            .map(|&b| surface.boundaries()[b].word.abelianize(n))
            .collect();
        Ok(HomologyLattice {
            rank: n,
            form,
            capped_span: echelon(classes)?,
            surface: surface.bordered().fingerprint(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Intersection matrix `J` with `⟨x,y⟩ = xᵀJy`.
    pub fn form(&self) -> &IntegralMatrix {
        &self.form
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let jy = self.form.apply(y)?;
        dot(x, &jy)
    }

    pub fn class_of(&self, w: &FreeWord) -> Vector {
        w.abelianize(self.rank)
    }

    /// Class of a curve, reduced modulo capped boundary classes.
    pub fn homology_class(&self, c: &CurveWord) -> Result<Vector> {
        self.reduce(&self.class_of(c.word()))
    }

    /// Matrix of `x ↦ x + ⟨x,v⟩v`.
    pub fn transvection(&self, v: &[i64]) -> Result<IntegralMatrix> {
        let n = self.rank;
        // ⟨e_j, v⟩ = (Jv)_j
        let jv = self.form.apply(v)?;
        let mut m = IntegralMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let add = v[i].checked_mul(jv[j]).ok_or(Error::Overflow)?;
                m.set(i, j, m.get(i, j).checked_add(add).ok_or(Error::Overflow)?);
            }
        }
        Ok(m)
    }

    pub fn twist_matrix(&self, v: &[i64], hand: Hand) -> Result<IntegralMatrix> {
        match hand {
            Hand::Right => self.transvection(v),
            Hand::Left => {
                let jv = self.form.apply(v)?;
                let mut m = IntegralMatrix::identity(self.rank);
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        let sub = v[i].checked_mul(jv[j]).ok_or(Error::Overflow)?;
                        m.set(i, j, m.get(i, j).checked_sub(sub).ok_or(Error::Overflow)?);
                    }
                }
                Ok(m)
            }
        }
    }

    /// Induced map on homology (loop generators only).
    pub fn matrix_of(&self, f: &Automorphism) -> Result<IntegralMatrix> {
        if f.surface_key() != self.surface {
            return Err(Error::SurfaceMismatch);
        }
        let mut m = IntegralMatrix::zero(self.rank);
        for g in 0..self.rank {
            let col = f.images()[g].abelianize(self.rank);
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, g, x);
            }
        }
        Ok(m)
    }

    /// Reduces a vector modulo the capped boundary classes.
    pub fn reduce(&self, v: &[i64]) -> Result<Vector> {
        reduce_mod(v, &self.capped_span)
    }

    /// Whether two matrices induce the same map on the capped quotient.
    pub fn agree_after_capping(&self, a: &IntegralMatrix, b: &IntegralMatrix) -> Result<bool> {
        for j in 0..self.rank {
            let diff: Vector = a.column(j).iter().zip(b.column(j)).map(|(x, y)| x - y).collect();
            if self.reduce(&diff)?.iter().any(|&x| x != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `MᵀJM = J`.
    pub fn is_symplectic(&self, m: &IntegralMatrix) -> Result<bool> {
        let lhs = m.transpose().mul(&self.form)?.mul(m)?;
        Ok(lhs == self.form)
    }

    /// Whether the pairing is unimodular (closed-surface case).
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.form.determinant()?.abs() == 1)
    }
}

/// Product of twist matrices of an explicit word, in display order.
pub fn word_matrix(lattice: &HomologyLattice, table: &CurveTable, w: &TwistWord) -> Result<IntegralMatrix> {
    let mut m = IntegralMatrix::identity(lattice.rank());
    for l in w.letters() {
        match l {
            TwistLetter::Formal { name, .. } => return Err(Error::FormalSymbol(name.clone())),
            TwistLetter::Twist { curve, sign } => {
                let v = lattice.class_of(table.get(curve)?.word());
                m = m.mul(&lattice.twist_matrix(&v, Hand::from_sign(*sign))?)?;
            }
        }
    }
    Ok(m)
}

/// Necessary condition for `lhs = rhs`: the induced maps on first homology
/// agree, modulo the capped boundary classes when the surface has caps.
pub fn screen_relation(table: &CurveTable, lhs: &TwistWord, rhs: &TwistWord) -> Result<Certificate> {
    let start = Instant::now();
    let surface = table.surface();
    let lattice = HomologyLattice::new(surface)?;
    let a = word_matrix(&lattice, table, lhs)?;
    let b = word_matrix(&lattice, table, rhs)?;
    let mut entries = Vec::new();
    for j in 0..lattice.rank() {
        let (x, y) = (a.column(j), b.column(j));
        let diff: Vector = x.iter().zip(&y).map(|(p, q)| p - q).collect();
        entries.push(TranscriptEntry {
            label: surface.generator_name(j).to_string(),
            lhs: format!("{x:?}"),
            rhs: format!("{y:?}"),
            agree: lattice.reduce(&diff)?.iter().all(|&z| z == 0),
        });
    }
    Ok(Certificate {
        check: "homology screen".into(),
        passed: entries.iter().all(|e| e.agree),
        entries,
        notes: Vec::new(),
        elapsed: start.elapsed(),
    })
}

fn dot(x: &[i64], y: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (a, b) in x.iter().zip(y) {
        acc = acc.checked_add(a.checked_mul(*b).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Integer row echelon form (Euclidean row operations).
fn echelon(mut rows: Vec<Vector>) -> Result<Vec<Vector>> {
    let Some(n) = rows.first().map(|r| r.len()) else {
        return Ok(rows);
    };
    let mut out = Vec::new();
    for col in 0..n {
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let with: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if with.len() <= 1 {
                if let Some(&i) = with.first() {
                    let mut r = rows.remove(i);
                    if r[col] < 0 {
                        r.iter_mut().for_each(|x| *x = -*x);
                    }
                    out.push(r);
                }
                break;
            }
            let p = *with.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &with {
                if i == p {
                    continue;
                }
                let q = rows[i][col] / rows[p][col];
                let pr = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x = x.checked_sub(q.checked_mul(*y).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                }
            }
        }
    }
    Ok(out)
}

fn reduce_mod(v: &[i64], basis: &[Vector]) -> Result<Vector> {
    let mut v = v.to_vec();
    for b in basis {
        let col = b.iter().position(|&x| x != 0).unwrap();
        let q = v[col].div_euclid(b[col]);
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.checked_sub(q.checked_mul(*y).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
        }
    }
    Ok(v)
}
