//! Finite carriers: permutations, Cayley tables, gradings, and one-sided
//! quasigroups with their divisions and translations.
//!
//! Elements of a carrier of size `n` are the indices `0..n`.

use std::fmt;

use crate::error::{Error, Result};

/// An element of a finite carrier, always in `0..n`.
pub type Elem = usize;

/// A bijection of `{0, .., n-1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Elem>,
}

impl Perm {
    pub fn new(images: Vec<Elem>) -> Result<Self> {
        if !is_bijection(&images) {
            return Err(Error::InvalidPermutation(images));
        }
        Ok(Perm { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<Elem>) -> Self {
        debug_assert!(is_bijection(&images));
        Perm { images }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different size"
        );
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    /// `self^k` for any integer `k` (negative powers use the inverse).
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.len());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a] == self.images[b])
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

pub(crate) fn is_bijection(images: &[Elem]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &v in images {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// An `n × n` operation table, `entries[x][y] = x ∘ y`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<Elem>,
}

impl CayleyTable {
    /// Builds a table from rows, checking the shape and that every entry
    /// lies in the carrier.
    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("table has no rows".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row {x} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange {
                        row: x,
                        col: y,
                        value: v,
                        n,
                    });
                }
            }
            entries.extend_from_slice(row);
        }
        Ok(CayleyTable { n, entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                debug_assert!(v < n);
                entries.push(v);
            }
        }
        CayleyTable { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.entries[x * self.n + y]
    }

    #[inline]
    pub fn row(&self, x: Elem) -> &[Elem] {
        &self.entries[x * self.n..(x + 1) * self.n]
    }

    pub fn column(&self, y: Elem) -> Vec<Elem> {
        (0..self.n).map(|x| self.get(x, y)).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.entries.chunks(self.n).map(<[Elem]>::to_vec).collect()
    }

    /// The table of the same operation after renaming every element `x` to
    /// `f(x)`: `new[f(x)][f(y)] = f(old[x][y])`.
    pub fn relabel(&self, f: &Perm) -> Self {
        assert_eq!(f.len(), self.n);
        let mut entries = vec![0; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                entries[f.apply(x) * self.n + f.apply(y)] = f.apply(self.get(x, y));
            }
        }
        CayleyTable { n: self.n, entries }
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}

/// A partition of the carrier into blocks `1..=p`.
///
/// Block labels must appear in order of first occurrence: the first element
/// is in block 1 and every new label is one more than the largest seen so
/// far. Element `x` has degree the unit vector at position `block(x)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Grading {
    block: Vec<usize>,
    p: usize,
}

impl Grading {
    pub fn new(block: Vec<usize>) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::InvalidGrading("empty block sequence".into()));
        }
        let mut p = 0;
        for (x, &b) in block.iter().enumerate() {
            if b == 0 || b > p + 1 {
                return Err(Error::InvalidGrading(format!(
                    "element {x} has block label {b}; labels must be numbered 1..p by first occurrence"
                )));
            }
            p = p.max(b);
        }
        Ok(Grading { block, p })
    }

    /// Single block: every element has degree `(1)`.
    pub fn trivial(n: usize) -> Self {
        Grading {
            block: vec![1; n],
            p: 1,
        }
    }

    /// Grading whose blocks are the classes of `key`, numbered by first
    /// occurrence.
    pub fn from_classes<K: PartialEq>(keys: &[K]) -> Self {
        let mut reps: Vec<&K> = Vec::new();
        let block = keys
            .iter()
            .map(|k| match reps.iter().position(|r| *r == k) {
                Some(i) => i + 1,
                None => {
                    reps.push(k);
                    reps.len()
                }
            })
            .collect();
        Grading {
            block,
            p: reps.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.block.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Block of `x`, in `1..=p`.
    #[inline]
    pub fn block(&self, x: Elem) -> usize {
        self.block[x]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.block
    }

    pub fn degree(&self, x: Elem) -> Vec<u32> {
        let mut d = vec![0; self.p];
        d[self.block[x] - 1] = 1;
        d
    }

    pub fn members(&self, s: usize) -> Vec<Elem> {
        (0..self.n()).filter(|&x| self.block[x] == s).collect()
    }

    pub fn preserves(&self, f: &Perm) -> bool {
        (0..self.n()).all(|x| self.block[f.apply(x)] == self.block[x])
    }
}

/// `(X, ∘, \∘)`: every left translation `L_x = x ∘ -` is a bijection and
/// `\∘` is its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LeftQuasigroup {
    circ: CayleyTable,
    ldiv: CayleyTable,
}

impl LeftQuasigroup {
    pub fn validate(circ: CayleyTable) -> Result<Self> {
        let n = circ.n();
        for x in 0..n {
            if !is_bijection(circ.row(x)) {
                return Err(Error::RowNotBijective(x));
            }
        }
        let mut ldiv = vec![0; n * n];
        for x in 0..n {
            for (y, &v) in circ.row(x).iter().enumerate() {
                ldiv[x * n + v] = y;
            }
        }
        Ok(LeftQuasigroup {
            circ,
            ldiv: CayleyTable { n, entries: ldiv },
        })
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        Self::validate(CayleyTable::from_rows(rows)?)
    }

    /// The quasigroup whose left translations are `rows`.
    pub fn from_translations(rows: &[Perm]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            entries.extend_from_slice(r.images());
        }
        Self::validate(CayleyTable { n, entries }).expect("translations are permutations")
    }

    /// `x ∘ y = y` for all `x, y`.
    pub fn trivial(n: usize) -> Self {
        Self::from_translations(&vec![Perm::identity(n); n])
    }

    pub fn n(&self) -> usize {
        self.circ.n()
    }

    pub fn circ(&self) -> &CayleyTable {
        &self.circ
    }

    pub fn ldiv(&self) -> &CayleyTable {
        &self.ldiv
    }

    #[inline]
    pub fn op(&self, x: Elem, y: Elem) -> Elem {
        self.circ.get(x, y)
    }

    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.ldiv.get(x, y)
    }

    /// `L_x`.
    pub fn translation(&self, x: Elem) -> Perm {
        Perm::from_images_unchecked(self.circ.row(x).to_vec())
    }

    pub fn translations(&self) -> Vec<Perm> {
        (0..self.n()).map(|x| self.translation(x)).collect()
    }

    pub fn relabel(&self, f: &Perm) -> Self {
        LeftQuasigroup {
            circ: self.circ.relabel(f),
            ldiv: self.ldiv.relabel(f),
        }
    }

    /// `x ↦ x \ x` is a bijection.
    pub fn is_nondegenerate(&self) -> bool {
        let diag: Vec<Elem> = (0..self.n()).map(|x| self.div(x, x)).collect();
        is_bijection(&diag)
    }

    /// `L_x L_{x\y} = L_y L_{y\x}` for all `x, y`.
    pub fn is_right_cyclic(&self) -> bool {
        self.right_cyclic_counterexample().is_none()
    }

    pub fn right_cyclic_counterexample(&self) -> Option<(Elem, Elem)> {
        let n = self.n();
        for x in 0..n {
            for y in x + 1..n {
                let a = self.div(x, y);
                let b = self.div(y, x);
                if (0..n).any(|z| self.op(x, self.op(a, z)) != self.op(y, self.op(b, z))) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Every left translation preserves the blocks of `g`.
    pub fn is_graded(&self, g: &Grading) -> bool {
        let n = self.n();
        g.n() == n && (0..n).all(|x| (0..n).all(|y| g.block(self.op(x, y)) == g.block(y)))
    }

    /// `f(x ∘ y) = f(x) ∘ f(y)`, and `f` preserves the blocks of `g` when one
    /// is supplied.
    pub fn is_automorphism(&self, f: &Perm, g: Option<&Grading>) -> bool {
        let n = self.n();
        if f.len() != n {
            return false;
        }
        if let Some(g) = g {
            if g.n() != n || !g.preserves(f) {
                return false;
            }
        }
        (0..n).all(|x| (0..n).all(|y| f.apply(self.op(x, y)) == self.op(f.apply(x), f.apply(y))))
    }
}

/// `(X, •, /•)`: every right translation `R_y = - • y` is a bijection and
/// `/•` is its inverse, `(a /• y) • y = a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RightQuasigroup {
    bullet: CayleyTable,
    rdiv: CayleyTable,
}

impl RightQuasigroup {
    pub fn validate(bullet: CayleyTable) -> Result<Self> {
        let n = bullet.n();
        let mut rdiv = vec![0; n * n];
        for y in 0..n {
            let col = bullet.column(y);
            if !is_bijection(&col) {
                return Err(Error::ColumnNotBijective(y));
            }
            for (x, &v) in col.iter().enumerate() {
                rdiv[v * n + y] = x;
            }
        }
        Ok(RightQuasigroup {
            bullet,
            rdiv: CayleyTable { n, entries: rdiv },
        })
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        Self::validate(CayleyTable::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.bullet.n()
    }

    pub fn bullet(&self) -> &CayleyTable {
        &self.bullet
    }

    pub fn rdiv(&self) -> &CayleyTable {
        &self.rdiv
    }

    #[inline]
    pub fn op(&self, x: Elem, y: Elem) -> Elem {
        self.bullet.get(x, y)
    }

    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.rdiv.get(x, y)
    }

    /// `R_y : a ↦ a • y`.
    pub fn translation(&self, y: Elem) -> Perm {
        Perm::from_images_unchecked(self.bullet.column(y))
    }

    pub fn relabel(&self, f: &Perm) -> Self {
        RightQuasigroup {
            bullet: self.bullet.relabel(f),
            rdiv: self.rdiv.relabel(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(rows: &[&[usize]]) -> LeftQuasigroup {
        let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        LeftQuasigroup::from_rows(&rows).unwrap()
    }

    fn d4() -> LeftQuasigroup {
        lq(&[&[1, 0, 3, 2], &[1, 0, 3, 2], &[0, 1, 2, 3], &[0, 1, 2, 3]])
    }

    #[test]
    fn left_quasigroup_divisions() {
        let q = lq(&[&[0, 1], &[0, 1]]);
        assert_eq!(q.ldiv().to_rows(), vec![vec![0, 1], vec![0, 1]]);
        let q = lq(&[&[1, 0], &[1, 0]]);
        assert_eq!(q.ldiv().to_rows(), vec![vec![1, 0], vec![1, 0]]);
        let err = LeftQuasigroup::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::RowNotBijective(0));
    }

    #[test]
    fn right_quasigroup_columns() {
        let r = RightQuasigroup::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(r.rdiv().to_rows(), vec![vec![0, 0], vec![1, 1]]);
        let r = RightQuasigroup::from_rows(&[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(r.rdiv().to_rows(), vec![vec![1, 1], vec![0, 0]]);
        for a in 0..2 {
            for y in 0..2 {
                assert_eq!(r.op(r.div(a, y), y), a);
                assert_eq!(r.div(r.op(a, y), y), a);
            }
        }
        let err = RightQuasigroup::from_rows(&[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::ColumnNotBijective(0));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            CayleyTable::from_rows(&[vec![0, 1], vec![0]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            CayleyTable::from_rows(&[vec![0, 2], vec![0, 1]]),
            Err(Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 2,
                n: 2
            })
        ));
    }

    #[test]
    fn nondegeneracy() {
        assert!(lq(&[&[0, 1], &[0, 1]]).is_nondegenerate());
        assert!(lq(&[&[1, 0], &[1, 0]]).is_nondegenerate());
        // 0\0 = 0 and 1\1 = 0
        assert!(!lq(&[&[0, 1], &[1, 0]]).is_nondegenerate());
    }

    #[test]
    fn right_cyclicity() {
        assert!(lq(&[&[1, 0], &[1, 0]]).is_right_cyclic());
        assert!(lq(&[&[0, 1], &[0, 1]]).is_right_cyclic());
        let q = lq(&[&[0, 1], &[1, 0]]);
        assert!(!q.is_right_cyclic());
        assert_eq!(q.right_cyclic_counterexample(), Some((0, 1)));
        assert!(d4().is_right_cyclic());
    }

    #[test]
    fn gradings() {
        let q = d4();
        assert!(q.is_graded(&Grading::new(vec![1, 1, 2, 2]).unwrap()));
        assert!(q.is_graded(&Grading::trivial(4)));
        assert!(!q.is_graded(&Grading::new(vec![1, 2, 1, 2]).unwrap()));
        assert!(Grading::new(vec![2, 1]).is_err());
        assert!(Grading::new(vec![1, 3, 2]).is_err());
        assert!(Grading::new(vec![0]).is_err());
        let g = Grading::new(vec![1, 2, 1, 3]).unwrap();
        assert_eq!(g.p(), 3);
        assert_eq!(g.degree(3), vec![0, 0, 1]);
        assert_eq!(g.members(1), vec![0, 2]);
    }

    #[test]
    fn automorphisms() {
        let q = lq(&[&[1, 0], &[1, 0]]);
        assert!(q.is_automorphism(&Perm::new(vec![1, 0]).unwrap(), None));
        assert!(d4().is_automorphism(&Perm::identity(4), None));
        let g = Grading::new(vec![1, 1, 2, 2]).unwrap();
        let swap = Perm::new(vec![2, 3, 0, 1]).unwrap();
        assert!(!d4().is_automorphism(&swap, Some(&g)));
        let tau = Perm::new(vec![1, 0, 3, 2]).unwrap();
        assert!(d4().is_automorphism(&tau, Some(&g)));
    }

    #[test]
    fn perm_algebra() {
        let p = Perm::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.pow(3), Perm::identity(3));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(2), p.compose(&p));
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Perm::new(vec![0, 0]).is_err());
        let q = Perm::new(vec![1, 0, 2]).unwrap();
        assert!(!p.commutes_with(&q));
        assert!(p.commutes_with(&p.pow(2)));
    }

    #[test]
    fn relabel_conjugates_translations() {
        let q = d4();
        let f = Perm::new(vec![2, 3, 0, 1]).unwrap();
        let r = q.relabel(&f);
        for x in 0..4 {
            let expected = f.compose(&q.translation(x)).compose(&f.inverse());
            assert_eq!(r.translation(f.apply(x)), expected);
        }
    }
}
