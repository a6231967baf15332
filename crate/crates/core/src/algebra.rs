//! Quadratic Yang–Baxter algebras `k⟨X⟩ / (xy − (x∘y)(x•y))`, their Zhang
//! twists, and graded dimensions.
//!
//! Relations live in `kX ⊗ kX` with basis `x ⊗ y`. A relation is stored as
//! a primitive integer vector whose first coefficient (in lexicographic
//! basis order) is positive; this is a canonical representative of the
//! rational line it spans, so relation sets compare by sorted equality.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::birack::Birack;
use crate::error::{Error, Result};
use crate::isotope::{isotope_birack, TwistSystem};
use crate::linalg::{rank, BlockPlan, RankMode, SparseRow};
use crate::structures::{Elem, Grading};

/// A non-zero element of `kX ⊗ kX` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorVector {
    terms: Vec<((Elem, Elem), i64)>,
}

impl TensorVector {
    /// Sums the terms and normalizes; `None` for the zero vector.
    pub fn new(terms: impl IntoIterator<Item = ((Elem, Elem), i64)>) -> Option<Self> {
        let mut acc: BTreeMap<(Elem, Elem), i64> = BTreeMap::new();
        for (pair, c) in terms {
            *acc.entry(pair).or_insert(0) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        let first = terms.first()?.1;
        let g = terms.iter().fold(0i64, |g, &(_, c)| g.gcd(&c));
        let scale = if first < 0 { -g } else { g };
        for (_, c) in &mut terms {
            *c /= scale;
        }
        Some(TensorVector { terms })
    }

    /// `a − b` for basis tensors `a ≠ b`.
    pub fn binomial(a: (Elem, Elem), b: (Elem, Elem)) -> Option<Self> {
        Self::new([(a, 1), (b, -1)])
    }

    pub fn terms(&self) -> &[((Elem, Elem), i64)] {
        &self.terms
    }

    pub fn map_basis(&self, f: impl Fn(Elem, Elem) -> (Elem, Elem)) -> Option<Self> {
        Self::new(self.terms.iter().map(|&((x, y), c)| (f(x, y), c)))
    }

    /// `N^p`-homogeneous: every basis tensor has the same multidegree.
    pub fn is_homogeneous(&self, g: &Grading) -> bool {
        let degree = |(x, y): (Elem, Elem)| {
            let (a, b) = (g.block(x), g.block(y));
            (a.min(b), a.max(b))
        };
        let d0 = degree(self.terms[0].0);
        self.terms.iter().all(|&(pair, _)| degree(pair) == d0)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &((x, y), c)) in self.terms.iter().enumerate() {
            let sign = match (i, c < 0) {
                (0, false) => "",
                (0, true) => "−",
                (_, false) => " + ",
                (_, true) => " − ",
            };
            f.write_str(sign)?;
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "x{x}⊗x{y}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A canonical, sorted, duplicate-free set of quadratic relations on `n`
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticRelationSet {
    n: usize,
    relations: Vec<TensorVector>,
}

impl QuadraticRelationSet {
    pub fn new(n: usize, relations: impl IntoIterator<Item = TensorVector>) -> Result<Self> {
        let mut relations: Vec<TensorVector> = relations.into_iter().collect();
        if let Some(r) = relations
            .iter()
            .find(|r| r.terms.iter().any(|&((x, y), _)| x >= n || y >= n))
        {
            return Err(Error::ShapeMismatch(format!(
                "relation {r} uses a generator outside 0..{n}"
            )));
        }
        relations.sort();
        relations.dedup();
        Ok(QuadraticRelationSet { n, relations })
    }

    pub fn empty(n: usize) -> Self {
        QuadraticRelationSet {
            n,
            relations: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relations(&self) -> &[TensorVector] {
        &self.relations
    }

    /// Rows of length `n²`, column `x·n + y` for `x ⊗ y`.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.relations
            .iter()
            .map(|r| {
                let mut row = vec![0; self.n * self.n];
                for &((x, y), c) in &r.terms {
                    row[x * self.n + y] = c;
                }
                row
            })
            .collect()
    }
}

impl fmt::Display for QuadraticRelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

/// `xy − (x∘y)(x•y)` for every pair not fixed by `r`.
pub fn quadratic_relations(b: &Birack) -> QuadraticRelationSet {
    let n = b.n();
    let relations = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter_map(|(x, y)| TensorVector::binomial((x, y), (b.circ_op(x, y), b.bullet_op(x, y))));
    QuadraticRelationSet::new(n, relations).expect("generators are in range")
}

/// Presentation of the Zhang twist on the same generators:
/// `x ⊗ y ↦ x ⊗ φ^{-|x|}(y)` applied to every relation.
pub fn twist_relations(r: &QuadraticRelationSet, t: &TwistSystem) -> Result<QuadraticRelationSet> {
    if r.n() != t.n() {
        return Err(Error::ShapeMismatch(format!(
            "relations on {} generators, twist system on {}",
            r.n(),
            t.n()
        )));
    }
    let inverses: Vec<_> = t.phis().iter().map(|p| p.inverse()).collect();
    let g = t.grading();
    let twisted = r
        .relations
        .iter()
        .filter_map(|rel| rel.map_basis(|x, y| (x, inverses[g.block(x) - 1].apply(y))));
    QuadraticRelationSet::new(r.n(), twisted)
}

/// Whether two relation sets span the same subspace of `kX ⊗ kX`.
pub fn span_equal(a: &QuadraticRelationSet, b: &QuadraticRelationSet) -> Result<bool> {
    span_equal_with(a, b, RankMode::Checked)
}

pub fn span_equal_with(
    a: &QuadraticRelationSet,
    b: &QuadraticRelationSet,
    mode: RankMode,
) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::ShapeMismatch(
            "relation sets on different generators".into(),
        ));
    }
    let (ma, mb) = (a.to_dense(), b.to_dense());
    let joint: Vec<Vec<i64>> = ma.iter().chain(&mb).cloned().collect();
    let (ra, rb, rj) = (rank(&ma, mode)?, rank(&mb, mode)?, rank(&joint, mode)?);
    Ok(ra == rj && rb == rj)
}

/// Relation-level evidence that the isotope's algebra is the Zhang twist
/// of the original one.
#[derive(Clone, Debug)]
pub struct TwistCertificate {
    pub isotope: Birack,
    pub original: QuadraticRelationSet,
    /// Relations of the isotope birack.
    pub isotope_relations: QuadraticRelationSet,
    /// Original relations pushed through the twist substitution.
    pub twisted: QuadraticRelationSet,
    pub elementwise_equal: bool,
    pub span_equal: bool,
}

impl TwistCertificate {
    pub fn holds(&self) -> bool {
        self.elementwise_equal && self.span_equal
    }

    /// Relations in exactly one of the two sets: `(twisted only, isotope only)`.
    pub fn difference(&self) -> (Vec<&TensorVector>, Vec<&TensorVector>) {
        let twisted_only = self
            .twisted
            .relations()
            .iter()
            .filter(|r| !self.isotope_relations.relations().contains(r))
            .collect();
        let isotope_only = self
            .isotope_relations
            .relations()
            .iter()
            .filter(|r| !self.twisted.relations().contains(r))
            .collect();
        (twisted_only, isotope_only)
    }
}

/// Builds the isotope of `b` and compares its relations with the twisted
/// relations of `b`, both as sets and as spans.
pub fn verify_twist_isomorphism(
    b: &Birack,
    g: &Grading,
    t: &TwistSystem,
) -> Result<TwistCertificate> {
    let isotope = isotope_birack(b, g, t)?;
    let original = quadratic_relations(b);
    let isotope_relations = quadratic_relations(&isotope);
    let twisted = twist_relations(&original, t)?;
    let elementwise_equal = twisted == isotope_relations;
    let span_equal = span_equal(&twisted, &isotope_relations)?;
    Ok(TwistCertificate {
        isotope,
        original,
        isotope_relations,
        twisted,
        elementwise_equal,
        span_equal,
    })
}

/// A monomial of the free algebra `k⟨X⟩`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    pub letters: Vec<Elem>,
}

impl Word {
    pub fn new(letters: Vec<Elem>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the unit degree vectors of the letters.
    pub fn multidegree(&self, g: &Grading) -> Vec<i64> {
        let mut d = vec![0; g.p()];
        for &x in &self.letters {
            d[g.block(x) - 1] += 1;
        }
        d
    }
}

/// Zhang-twisted product `a ⋆ b = a · φ^{|a|}(b)`, with `φ^{|a|}` applied
/// letterwise.
pub fn star_product(a: &Word, b: &Word, t: &TwistSystem) -> Word {
    let phi = t.power(&a.multidegree(t.grading()));
    let mut letters = a.letters.clone();
    letters.extend(b.letters.iter().map(|&y| phi.apply(y)));
    Word { letters }
}

/// `dims[d] = dim A_d` for `d = 0..=d_max`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertTable {
    pub dims: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct HilbertOptions {
    /// Cap on matrix entries (sparse nonzeros plus dense block areas) per
    /// degree.
    pub max_entries: usize,
    pub mode: RankMode,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions {
            max_entries: 10_000_000,
            mode: RankMode::Checked,
        }
    }
}

pub const DEFAULT_MAX_DEGREE: usize = 6;

pub fn hilbert_function(r: &QuadraticRelationSet, d_max: usize) -> Result<HilbertTable> {
    hilbert_function_with(r, d_max, &HilbertOptions::default())
}

/// `dim A_d = n^d − dim Σ_i V^{⊗i} ⊗ span(R) ⊗ V^{⊗(d−2−i)}`, by exact rank
/// of the matrix of all shifted relations.
pub fn hilbert_function_with(
    r: &QuadraticRelationSet,
    d_max: usize,
    opts: &HilbertOptions,
) -> Result<HilbertTable> {
    let n = r.n();
    let mut dims = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let words = n
            .checked_pow(d as u32)
            .filter(|&w| w <= opts.max_entries)
            .ok_or(Error::BudgetExceeded(d))?;
        if d < 2 || r.is_empty() {
            dims.push(words as u64);
            continue;
        }
        let shifts = (d - 1) * n.pow(d as u32 - 2) * r.len();
        let nonzeros: usize =
            shifts / r.len() * r.relations().iter().map(|v| v.terms().len()).sum::<usize>();
        if nonzeros > opts.max_entries {
            return Err(Error::BudgetExceeded(d));
        }
        let plan = BlockPlan::new(shifted_rows(r, d), words);
        if nonzeros + plan.dense_entries() > opts.max_entries {
            return Err(Error::BudgetExceeded(d));
        }
        dims.push((words - plan.rank(opts.mode)?) as u64);
    }
    Ok(HilbertTable { dims })
}

/// Rows `u ⊗ ρ ⊗ w` for every relation `ρ`, word `u` of length `i` and `w`
/// of length `d − 2 − i`. Column of a word is its base-`n` value.
fn shifted_rows(r: &QuadraticRelationSet, d: usize) -> Vec<SparseRow> {
    let n = r.n();
    let mut rows = Vec::new();
    for i in 0..=d - 2 {
        let suffix_len = d - 2 - i;
        let (prefixes, suffixes) = (n.pow(i as u32), n.pow(suffix_len as u32));
        for u in 0..prefixes {
            for w in 0..suffixes {
                for rel in r.relations() {
                    let mut row: SparseRow = rel
                        .terms()
                        .iter()
                        .map(|&((x, y), c)| (((u * n + x) * n + y) * suffixes + w, c))
                        .collect();
                    row.sort_unstable();
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// `dim k[x_1..x_n]_d = C(n + d − 1, d)`.
pub fn polynomial_hilbert(n: usize, d_max: usize) -> HilbertTable {
    let dims = (0..=d_max)
        .map(|d| num_integer::binomial((n + d - 1) as u64, d as u64))
        .collect();
    HilbertTable { dims }
}
