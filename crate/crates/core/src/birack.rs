//! Biracks `(X, ∘, \∘, •, /•)` and the structural predicates on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::structures::{CayleyTable, Elem, Grading, LeftQuasigroup, Perm, RightQuasigroup};

/// A left quasigroup and a right quasigroup on the same carrier.
///
/// Construction checks only the two quasigroup axioms; the three mixed
/// birack identities are checked by [`Birack::verify`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Birack {
    left: LeftQuasigroup,
    right: RightQuasigroup,
}

/// Which of the three mixed birack identities failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirackIdentity {
    /// `x∘(y∘z) = (x∘y)∘((x•y)∘z)`
    First,
    /// `(x∘y)•((x•y)∘z) = (x•(y∘z))∘(y•z)`
    Second,
    /// `(x•y)•z = (x•(y∘z))•(y•z)`
    Third,
}

impl BirackIdentity {
    pub fn number(self) -> usize {
        match self {
            BirackIdentity::First => 1,
            BirackIdentity::Second => 2,
            BirackIdentity::Third => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BirackViolation {
    RowNotBijective(Elem),
    ColumnNotBijective(Elem),
    Identity {
        identity: BirackIdentity,
        triple: (Elem, Elem, Elem),
    },
}

impl fmt::Display for BirackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BirackViolation::RowNotBijective(x) => write!(f, "row {x} of circ is not a bijection"),
            BirackViolation::ColumnNotBijective(y) => {
                write!(f, "column {y} of bullet is not a bijection")
            }
            BirackViolation::Identity {
                identity,
                triple: (x, y, z),
            } => write!(
                f,
                "birack identity {} fails at (x, y, z) = ({x}, {y}, {z})",
                identity.number()
            ),
        }
    }
}

/// Checks raw tables against the full birack definition, reporting the
/// first failure: quasigroup axioms first, then identities 1, 2, 3 each
/// scanned in lexicographic `(x, y, z)` order.
pub fn verify_tables(circ: &CayleyTable, bullet: &CayleyTable) -> Result<(), BirackViolation> {
    let left = LeftQuasigroup::validate(circ.clone()).map_err(|e| match e {
        Error::RowNotBijective(x) => BirackViolation::RowNotBijective(x),
        _ => unreachable!(),
    })?;
    let right = RightQuasigroup::validate(bullet.clone()).map_err(|e| match e {
        Error::ColumnNotBijective(y) => BirackViolation::ColumnNotBijective(y),
        _ => unreachable!(),
    })?;
    Birack { left, right }.verify()
}

type TripleCheck<'a> = dyn Fn(Elem, Elem, Elem) -> bool + 'a;

impl Birack {
    pub fn from_tables(circ: CayleyTable, bullet: CayleyTable) -> Result<Self> {
        if circ.n() != bullet.n() {
            return Err(Error::ShapeMismatch(format!(
                "circ is {0}x{0} but bullet is {1}x{1}",
                circ.n(),
                bullet.n()
            )));
        }
        Ok(Birack {
            left: LeftQuasigroup::validate(circ)?,
            right: RightQuasigroup::validate(bullet)?,
        })
    }

    pub fn from_rows(circ: &[Vec<Elem>], bullet: &[Vec<Elem>]) -> Result<Self> {
        Self::from_tables(
            CayleyTable::from_rows(circ)?,
            CayleyTable::from_rows(bullet)?,
        )
    }

    /// The involutive birack of a non-degenerate right cyclic left
    /// quasigroup, with `x • y = (x ∘ y) \ x`.
    pub fn derive(q: &LeftQuasigroup) -> Result<Self> {
        if let Some(pair) = q.right_cyclic_counterexample() {
            return Err(Error::NotRightCyclic(pair));
        }
        if !q.is_nondegenerate() {
            return Err(Error::NotNondegenerate);
        }
        let bullet = CayleyTable::from_fn(q.n(), |x, y| q.div(q.op(x, y), x));
        let right = RightQuasigroup::validate(bullet)?;
        Ok(Birack {
            left: q.clone(),
            right,
        })
    }

    /// `x ∘ y = y`, `x • y = x`.
    pub fn projection(n: usize) -> Self {
        let right = RightQuasigroup::validate(CayleyTable::from_fn(n, |x, _| x))
            .expect("projection columns are identities");
        Birack {
            left: LeftQuasigroup::trivial(n),
            right,
        }
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn left(&self) -> &LeftQuasigroup {
        &self.left
    }

    pub fn right(&self) -> &RightQuasigroup {
        &self.right
    }

    pub fn circ(&self) -> &CayleyTable {
        self.left.circ()
    }

    pub fn ldiv(&self) -> &CayleyTable {
        self.left.ldiv()
    }

    pub fn bullet(&self) -> &CayleyTable {
        self.right.bullet()
    }

    pub fn rdiv(&self) -> &CayleyTable {
        self.right.rdiv()
    }

    #[inline]
    pub fn circ_op(&self, x: Elem, y: Elem) -> Elem {
        self.left.op(x, y)
    }

    #[inline]
    pub fn bullet_op(&self, x: Elem, y: Elem) -> Elem {
        self.right.op(x, y)
    }

    pub fn relabel(&self, f: &Perm) -> Self {
        Birack {
            left: self.left.relabel(f),
            right: self.right.relabel(f),
        }
    }

    pub fn is_projection(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| self.circ_op(x, y) == y && self.bullet_op(x, y) == x))
    }

    /// The three mixed identities over all triples.
    pub fn verify(&self) -> Result<(), BirackViolation> {
        let n = self.n();
        let c = |x, y| self.circ_op(x, y);
        let b = |x, y| self.bullet_op(x, y);
        let identities: [(BirackIdentity, &TripleCheck); 3] = [
            (BirackIdentity::First, &|x, y, z| {
                c(x, c(y, z)) == c(c(x, y), c(b(x, y), z))
            }),
            (BirackIdentity::Second, &|x, y, z| {
                b(c(x, y), c(b(x, y), z)) == c(b(x, c(y, z)), b(y, z))
            }),
            (BirackIdentity::Third, &|x, y, z| {
                b(b(x, y), z) == b(b(x, c(y, z)), b(y, z))
            }),
        ];
        for (identity, holds) in identities {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !holds(x, y, z) {
                            return Err(BirackViolation::Identity {
                                identity,
                                triple: (x, y, z),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_birack(&self) -> bool {
        self.verify().is_ok()
    }

    /// `(x∘y)∘(x•y) = x` and `(x∘y)•(x•y) = y` for all `x, y`.
    pub fn is_involutive(&self) -> bool {
        self.involutive_counterexample().is_none()
    }

    pub fn involutive_counterexample(&self) -> Option<(Elem, Elem)> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let (u, v) = (self.circ_op(x, y), self.bullet_op(x, y));
                if self.circ_op(u, v) != x || self.bullet_op(u, v) != y {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `R_x = L_x^{-1}` for every `x`, i.e. `(x∘y)•x = y`.
    pub fn satisfies_lri(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| self.bullet_op(self.circ_op(x, y), x) == y))
    }

    /// The division form of lri, `(x∘y)\x = y\x`. Equivalent to
    /// [`Birack::satisfies_lri`] on involutive biracks.
    pub fn satisfies_lri_division_form(&self) -> bool {
        let q = &self.left;
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| q.div(q.op(x, y), x) == q.div(y, x)))
    }

    /// `x∘y` and `y•x` stay in the block of `y`.
    pub fn is_graded(&self, g: &Grading) -> bool {
        let n = self.n();
        g.n() == n
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    g.block(self.circ_op(x, y)) == g.block(y)
                        && g.block(self.bullet_op(y, x)) == g.block(y)
                })
            })
    }

    /// Left and right self-distributivity:
    /// `x∘(y∘z) = (x∘y)∘(x∘z)` and `(y•z)•x = (y•x)•(z•x)`.
    pub fn is_distributive(&self) -> bool {
        let n = self.n();
        self.left.is_distributive()
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        self.bullet_op(self.bullet_op(y, z), x)
                            == self.bullet_op(self.bullet_op(y, x), self.bullet_op(z, x))
                    })
                })
            })
    }

    /// The automorphism condition for both operations.
    pub fn is_automorphism(&self, f: &Perm, g: Option<&Grading>) -> bool {
        let n = self.n();
        self.left.is_automorphism(f, g)
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    f.apply(self.bullet_op(x, y)) == self.bullet_op(f.apply(x), f.apply(y))
                })
            })
    }
}

impl LeftQuasigroup {
    /// `L_x L_y = L_{x∘y} L_x` for all `x, y`.
    pub fn is_distributive(&self) -> bool {
        self.distributive_counterexample().is_none()
    }

    pub fn distributive_counterexample(&self) -> Option<(Elem, Elem)> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                if (0..n).any(|z| self.op(x, self.op(y, z)) != self.op(xy, self.op(x, z))) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `L_{x∘y} = L_y` for all `x, y`.
    pub fn is_two_reductive(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| self.circ().row(self.op(x, y)) == self.circ().row(y)))
    }

    /// Classes of `x ~ y ⇔ L_x = L_y`, numbered by first occurrence.
    pub fn l_equivalence_partition(&self) -> Grading {
        let rows: Vec<&[Elem]> = (0..self.n()).map(|x| self.circ().row(x)).collect();
        Grading::from_classes(&rows)
    }
}
