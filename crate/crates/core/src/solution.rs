//! Quadratic sets `(X, r)` with `r(x, y) = (ˣy, xʸ)`, the braid relation,
//! and the YB permutation group.

use std::collections::{BTreeSet, VecDeque};

use crate::birack::Birack;
use crate::error::{Error, Result};
use crate::structures::{is_bijection, CayleyTable, Elem, Perm};

pub type Triple = (Elem, Elem, Elem);

/// A bijection `r` of `X × X`, stored as a table of pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Solution {
    n: usize,
    pairs: Vec<(Elem, Elem)>,
}

/// First counterexample of each of the conditions l1, r1, lr3 (None when
/// the condition holds everywhere).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BraidConditions {
    pub l1: Option<Triple>,
    pub r1: Option<Triple>,
    pub lr3: Option<Triple>,
}

impl BraidConditions {
    pub fn l1_holds(&self) -> bool {
        self.l1.is_none()
    }

    pub fn r1_holds(&self) -> bool {
        self.r1.is_none()
    }

    pub fn lr3_holds(&self) -> bool {
        self.lr3.is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.l1_holds() && self.r1_holds() && self.lr3_holds()
    }
}

impl Solution {
    pub fn new(n: usize, pairs: Vec<(Elem, Elem)>) -> Result<Self> {
        if pairs.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "expected {} pairs, got {}",
                n * n,
                pairs.len()
            )));
        }
        if pairs.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::ShapeMismatch(
                "pair entry outside the carrier".into(),
            ));
        }
        let codes: Vec<usize> = pairs.iter().map(|&(a, b)| a * n + b).collect();
        if !is_bijection(&codes) {
            return Err(Error::NotBijective);
        }
        Ok(Solution { n, pairs })
    }

    pub fn from_fn(n: usize, r: impl Fn(Elem, Elem) -> (Elem, Elem)) -> Result<Self> {
        let pairs = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| r(x, y))
            .collect();
        Self::new(n, pairs)
    }

    /// `r(x, y) = (x ∘ y, x • y)`.
    pub fn from_birack(b: &Birack) -> Result<Self> {
        Self::from_fn(b.n(), |x, y| (b.circ_op(x, y), b.bullet_op(x, y)))
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        Self::from_fn(n, |x, y| (y, x)).expect("flip is a bijection")
    }

    /// Reads off `x ∘ y = ˣy` and `x • y = xʸ`; requires a non-degenerate
    /// involutive braided map.
    pub fn to_birack(&self) -> Result<Birack> {
        if !self.is_nondegenerate() {
            return Err(Error::NotNondegenerate);
        }
        if !self.is_involutive() {
            return Err(Error::NotInvolutive);
        }
        if let Some(t) = self.braid_counterexample() {
            return Err(Error::NotBraided(t));
        }
        let n = self.n;
        Birack::from_tables(
            CayleyTable::from_fn(n, |x, y| self.left_action(x, y)),
            CayleyTable::from_fn(n, |x, y| self.right_action(x, y)),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        self.pairs[x * self.n + y]
    }

    /// `ˣy = L_x(y)`.
    #[inline]
    pub fn left_action(&self, x: Elem, y: Elem) -> Elem {
        self.apply(x, y).0
    }

    /// `xʸ = R_y(x)`.
    #[inline]
    pub fn right_action(&self, x: Elem, y: Elem) -> Elem {
        self.apply(x, y).1
    }

    pub fn left_translation(&self, x: Elem) -> Option<Perm> {
        Perm::new((0..self.n).map(|y| self.left_action(x, y)).collect()).ok()
    }

    pub fn right_translation(&self, y: Elem) -> Option<Perm> {
        Perm::new((0..self.n).map(|x| self.right_action(x, y)).collect()).ok()
    }

    pub fn is_nondegenerate(&self) -> bool {
        (0..self.n)
            .all(|x| self.left_translation(x).is_some() && self.right_translation(x).is_some())
    }

    /// `r² = id`.
    pub fn is_involutive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let (u, v) = self.apply(x, y);
                self.apply(u, v) == (x, y)
            })
        })
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n).all(|x| self.apply(x, x) == (x, x))
    }

    pub fn fixed_pairs(&self) -> usize {
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.apply(x, y) == (x, y))
            .count()
    }

    fn r12(&self, (a, b, c): Triple) -> Triple {
        let (u, v) = self.apply(a, b);
        (u, v, c)
    }

    fn r23(&self, (a, b, c): Triple) -> Triple {
        let (u, v) = self.apply(b, c);
        (a, u, v)
    }

    /// `(id×r)(r×id)(id×r)` and `(r×id)(id×r)(r×id)` as full maps on `X³`,
    /// indexed lexicographically.
    pub fn braid_composites(&self) -> (Vec<Triple>, Vec<Triple>) {
        let n = self.n;
        let triples = (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));
        triples
            .map(|t| {
                (
                    self.r23(self.r12(self.r23(t))),
                    self.r12(self.r23(self.r12(t))),
                )
            })
            .unzip()
    }

    /// First triple (lexicographic) where the braid relation fails.
    pub fn braid_counterexample(&self) -> Option<Triple> {
        let n = self.n;
        let (lhs, rhs) = self.braid_composites();
        lhs.iter()
            .zip(&rhs)
            .position(|(a, b)| a != b)
            .map(|i| (i / (n * n), (i / n) % n, i % n))
    }

    pub fn is_braided(&self) -> bool {
        self.braid_counterexample().is_none()
    }

    /// Evaluates l1, r1 and lr3 on every triple without any precondition.
    /// Only l1 is meaningful on its own when some `R_y` is not bijective.
    pub fn evaluate_braid_conditions(&self) -> BraidConditions {
        let n = self.n;
        let l = |x, y| self.left_action(x, y);
        let r = |x, y| self.right_action(x, y);
        let mut out = BraidConditions::default();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = Some((x, y, z));
                    if out.l1.is_none() && l(x, l(y, z)) != l(l(x, y), l(r(x, y), z)) {
                        out.l1 = t;
                    }
                    if out.r1.is_none() && r(r(x, y), z) != r(r(x, l(y, z)), r(y, z)) {
                        out.r1 = t;
                    }
                    if out.lr3.is_none() && r(l(x, y), l(r(x, y), z)) != l(r(x, l(y, z)), r(y, z)) {
                        out.lr3 = t;
                    }
                }
            }
        }
        out
    }

    /// l1, r1, lr3 for a non-degenerate map; together they are equivalent
    /// to the braid relation.
    pub fn check_l1_r1_lr3(&self) -> Result<BraidConditions> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        Ok(self.evaluate_braid_conditions())
    }

    /// Elements of the group generated by the left translations, sorted.
    pub fn permutation_group(&self) -> Result<Vec<Perm>> {
        let gens = (0..self.n)
            .map(|x| self.left_translation(x))
            .collect::<Option<Vec<_>>>()
            .filter(|_| self.is_nondegenerate())
            .ok_or(Error::Degenerate)?;
        Ok(generated_group(self.n, &gens))
    }

    pub fn permutation_group_order(&self) -> Result<usize> {
        self.permutation_group().map(|g| g.len())
    }

    pub fn relabel(&self, f: &Perm) -> Self {
        let n = self.n;
        let mut pairs = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = self.apply(x, y);
                pairs[f.apply(x) * n + f.apply(y)] = (f.apply(u), f.apply(v));
            }
        }
        Solution { n, pairs }
    }
}

/// Breadth-first closure of `gens` under composition. For a finite group
/// this is the generated subgroup.
pub fn generated_group(n: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::LeftQuasigroup;

    fn lq(rows: &[&[usize]]) -> LeftQuasigroup {
        let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        LeftQuasigroup::from_rows(&rows).unwrap()
    }

    fn p2() -> Solution {
        Solution::from_birack(&Birack::derive(&lq(&[&[1, 0], &[1, 0]])).unwrap()).unwrap()
    }

    fn d4() -> Solution {
        let q = lq(&[&[1, 0, 3, 2], &[1, 0, 3, 2], &[0, 1, 2, 3], &[0, 1, 2, 3]]);
        Solution::from_birack(&Birack::derive(&q).unwrap()).unwrap()
    }

    /// `r` read off `circ = [[0,1],[1,0]]` with `x•y = (x∘y)\x`.
    fn sigma_id_map() -> Solution {
        let q = lq(&[&[0, 1], &[1, 0]]);
        Solution::from_fn(2, |x, y| (q.op(x, y), q.div(q.op(x, y), x))).unwrap()
    }

    #[test]
    fn birack_round_trip() {
        assert_eq!(
            Solution::from_birack(&Birack::projection(2)).unwrap(),
            Solution::flip(2)
        );
        let s = p2();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(s.apply(x, y), (1 - y, 1 - x));
            }
        }
        assert_eq!(
            Solution::flip(3).to_birack().unwrap(),
            Birack::projection(3)
        );
        let b = Birack::derive(&lq(&[&[1, 0], &[1, 0]])).unwrap();
        assert_eq!(Solution::from_birack(&b).unwrap().to_birack().unwrap(), b);
    }

    #[test]
    fn to_birack_rejects() {
        let degenerate = sigma_id_map();
        assert_eq!(degenerate.to_birack(), Err(Error::NotNondegenerate));
        // r(x,y) = (σy, x) is non-degenerate but r² ≠ id
        let s = Solution::from_fn(2, |x, y| (1 - y, x)).unwrap();
        assert_eq!(s.to_birack(), Err(Error::NotInvolutive));
        assert_eq!(Solution::new(2, vec![(0, 0); 4]), Err(Error::NotBijective));
    }

    #[test]
    fn braid_relation() {
        for n in 1..5 {
            assert!(Solution::flip(n).is_braided());
        }
        assert!(p2().is_braided());
        assert!(d4().is_braided());
        let bad = sigma_id_map();
        assert!(!bad.is_braided());
        assert!(bad.evaluate_braid_conditions().l1.is_some());
        assert_eq!(
            bad.evaluate_braid_conditions().l1.map(|t| (t.0, t.1)),
            Some((0, 1))
        );
        assert_eq!(bad.check_l1_r1_lr3(), Err(Error::Degenerate));
    }

    #[test]
    fn braid_conditions() {
        assert!(p2().check_l1_r1_lr3().unwrap().all_hold());
        assert!(Solution::flip(3).check_l1_r1_lr3().unwrap().all_hold());
    }

    #[test]
    fn square_free() {
        assert!(Solution::flip(3).is_square_free());
        assert!(!p2().is_square_free());
        assert!(!d4().is_square_free());
        assert_eq!(d4().apply(0, 0), (1, 1));
        assert_eq!(d4().fixed_pairs(), 4);
    }

    #[test]
    fn group_orders() {
        assert_eq!(Solution::flip(2).permutation_group_order(), Ok(1));
        assert_eq!(p2().permutation_group_order(), Ok(2));
        assert_eq!(d4().permutation_group_order(), Ok(2));
        assert_eq!(
            sigma_id_map().permutation_group_order(),
            Err(Error::Degenerate)
        );
    }

    #[test]
    fn closure_of_symmetric_generators() {
        let gens = [
            Perm::new(vec![1, 0, 2, 3]).unwrap(),
            Perm::new(vec![1, 2, 3, 0]).unwrap(),
        ];
        assert_eq!(generated_group(4, &gens).len(), 24);
    }
}
