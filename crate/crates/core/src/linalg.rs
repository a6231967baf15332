//! Exact and modular matrix rank over the integers.
//!
//! The exact path is fraction-free (Bareiss) elimination: every
//! intermediate entry is a minor of the input, so divisions are exact. It
//! runs in `i64` and restarts in `BigInt` if an entry overflows. The modular
//! path is ordinary elimination modulo the Mersenne prime `2^61 - 1`.
//!
//! Sparse matrices are split into independent blocks (connected components
//! of the row/column incidence graph); rank is additive over blocks. Each
//! block is reduced row by row against a table of sparse pivot rows, kept
//! primitive over the integers (or monic modulo the prime).

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MODULUS: u64 = (1 << 61) - 1;

/// Which arithmetic computes a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankMode {
    Exact,
    Modular,
    /// Both paths; a disagreement is an error.
    #[default]
    Checked,
}

static CHECKED_AGREEMENTS: AtomicUsize = AtomicUsize::new(0);

/// Number of checked-mode rank computations in this process where the
/// exact and modular ranks agreed.
pub fn checked_rank_agreements() -> usize {
    CHECKED_AGREEMENTS.load(Ordering::Relaxed)
}

trait FractionFree: Clone + Zero + PartialEq {
    /// `(a*b - c*d) / e`, or `None` if the result does not fit.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn one() -> Self;
}

impl FractionFree for i64 {
    fn cross_div(a: &i64, b: &i64, c: &i64, d: &i64, e: &i64) -> Option<i64> {
        let num = (*a as i128) * (*b as i128) - (*c as i128) * (*d as i128);
        debug_assert_eq!(num % (*e as i128), 0);
        i64::try_from(num / (*e as i128)).ok()
    }

    fn one() -> i64 {
        1
    }
}

impl FractionFree for BigInt {
    fn cross_div(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, e: &BigInt) -> Option<BigInt> {
        Some((a * b - c * d) / e)
    }

    fn one() -> BigInt {
        BigInt::from(1)
    }
}

fn bareiss_rank<T: FractionFree>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                row[j] = T::cross_div(&pivot_row[c], &row[j], &row[c], &pivot_row[j], &prev)?;
            }
            row[c] = T::zero();
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    Some(rank)
}

/// Exact rank of a dense integer matrix.
pub fn rank_exact(m: &[Vec<i64>]) -> usize {
    if let Some(r) = bareiss_rank(m.to_vec()) {
        return r;
    }
    let big = m
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    bareiss_rank::<BigInt>(big).expect("BigInt arithmetic does not overflow")
}

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn to_residue(v: i64) -> u64 {
    v.rem_euclid(MODULUS as i64) as u64
}

/// Rank of a dense integer matrix reduced modulo [`MODULUS`].
pub fn rank_modular(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&v| to_residue(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = pow_mod(a[rank][c], MODULUS - 2);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv);
            for j in c..cols {
                let sub = mul_mod(f, pivot_row[j]);
                row[j] = (row[j] + MODULUS - sub) % MODULUS;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a dense matrix in the given mode.
pub fn rank(m: &[Vec<i64>], mode: RankMode) -> Result<usize> {
    match mode {
        RankMode::Exact => Ok(rank_exact(m)),
        RankMode::Modular => Ok(rank_modular(m)),
        RankMode::Checked => agree(rank_exact(m), rank_modular(m)),
    }
}

fn agree(exact: usize, modular: usize) -> Result<usize> {
    if exact != modular {
        return Err(Error::ArithmeticMismatch { exact, modular });
    }
    CHECKED_AGREEMENTS.fetch_add(1, Ordering::Relaxed);
    Ok(exact)
}

/// A sparse row: `(column, coefficient)` pairs with distinct columns.
pub type SparseRow = Vec<(usize, i64)>;

/// Scalars for sparse row reduction.
trait Sparse: Clone + PartialEq + Zero {
    /// `a*b - c*d`, or `None` if the result does not fit.
    fn combine(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    /// Rescales a non-empty row to a canonical multiple.
    fn normalize(row: &mut [(usize, Self)]) -> Option<()>;
}

impl Sparse for i64 {
    fn combine(a: &i64, b: &i64, c: &i64, d: &i64) -> Option<i64> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }

    fn normalize(row: &mut [(usize, i64)]) -> Option<()> {
        let mut g = row.iter().fold(0i64, |g, (_, v)| g.gcd(v));
        if row[0].1 < 0 {
            g = g.checked_neg()?;
        }
        row.iter_mut().for_each(|(_, v)| *v /= g);
        Some(())
    }
}

impl Sparse for BigInt {
    fn combine(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<BigInt> {
        Some(a * b - c * d)
    }

    fn normalize(row: &mut [(usize, BigInt)]) -> Option<()> {
        let mut g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if row[0].1.is_negative() {
            g = -g;
        }
        row.iter_mut().for_each(|(_, v)| *v /= &g);
        Some(())
    }
}

/// Residue modulo [`MODULUS`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Residue(u64);

impl std::ops::Add for Residue {
    type Output = Residue;
    fn add(self, o: Residue) -> Residue {
        Residue((self.0 + o.0) % MODULUS)
    }
}

impl Zero for Residue {
    fn zero() -> Residue {
        Residue(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl Sparse for Residue {
    fn combine(a: &Residue, b: &Residue, c: &Residue, d: &Residue) -> Option<Residue> {
        Some(Residue(
            (mul_mod(a.0, b.0) + MODULUS - mul_mod(c.0, d.0)) % MODULUS,
        ))
    }

    fn normalize(row: &mut [(usize, Residue)]) -> Option<()> {
        let inv = pow_mod(row[0].1 .0, MODULUS - 2);
        row.iter_mut().for_each(|(_, v)| v.0 = mul_mod(v.0, inv));
        Some(())
    }
}

/// `lead(p)·row − lead(row)·p`, merged over sorted columns.
fn eliminate<T: Sparse>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let (pc, rc) = (&pivot[0].1, &row[0].1);
    let zero = T::zero();
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let (col, a, b) = match (row.get(i), pivot.get(j)) {
            (Some(r), Some(p)) if r.0 == p.0 => {
                i += 1;
                j += 1;
                (r.0, &r.1, &p.1)
            }
            (Some(r), p) if p.is_none_or(|p| r.0 < p.0) => {
                i += 1;
                (r.0, &r.1, &zero)
            }
            (_, Some(p)) => {
                j += 1;
                (p.0, &zero, &p.1)
            }
            _ => unreachable!(),
        };
        let v = T::combine(pc, a, rc, b)?;
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Some(out)
}

/// Rank by row-at-a-time sparse elimination against a pivot table, or
/// `None` on overflow.
fn sparse_echelon_rank<T: Sparse>(rows: impl Iterator<Item = Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|&(c, _)| c);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p)?,
                None => break,
            }
        }
        if !row.is_empty() {
            T::normalize(&mut row)?;
            pivots.insert(row[0].0, row);
        }
    }
    Some(pivots.len())
}

fn sparse_rank_exact(rows: &[SparseRow]) -> usize {
    if let Some(r) = sparse_echelon_rank(rows.iter().cloned()) {
        return r;
    }
    let big = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect());
    sparse_echelon_rank(big).expect("BigInt arithmetic does not overflow")
}

fn sparse_rank_modular(rows: &[SparseRow]) -> usize {
    let residues = rows.iter().map(|r| {
        r.iter()
            .map(|&(c, v)| (c, Residue(to_residue(v))))
            .collect()
    });
    sparse_echelon_rank(residues).expect("modular arithmetic does not overflow")
}

/// A sparse matrix split into blocks that share no column.
#[derive(Debug)]
pub struct BlockPlan {
    blocks: Vec<Block>,
}

#[derive(Debug)]
struct Block {
    columns: Vec<usize>,
    rows: Vec<SparseRow>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl BlockPlan {
    pub fn new(rows: Vec<SparseRow>, ncols: usize) -> Self {
        let mut parent: Vec<usize> = (0..ncols).collect();
        for row in &rows {
            if let Some(&(first, _)) = row.first() {
                for &(c, _) in &row[1..] {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, c));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Block> = Vec::new();
        for row in rows.into_iter().filter(|r| !r.is_empty()) {
            let root = find(&mut parent, row[0].0);
            let b = *index.entry(root).or_insert_with(|| {
                blocks.push(Block {
                    columns: Vec::new(),
                    rows: Vec::new(),
                });
                blocks.len() - 1
            });
            blocks[b].rows.push(row);
        }
        for block in &mut blocks {
            let mut cols: Vec<usize> = block.rows.iter().flatten().map(|&(c, _)| c).collect();
            cols.sort_unstable();
            cols.dedup();
            block.columns = cols;
        }
        BlockPlan { blocks }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Sum of `rows × columns` over blocks, a bound on elimination fill-in.
    pub fn dense_entries(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.rows.len() * b.columns.len())
            .sum()
    }

    pub fn rank(&self, mode: RankMode) -> Result<usize> {
        self.blocks
            .par_iter()
            .map(|b| b.rank(mode))
            .collect::<Result<Vec<_>>>()
            .map(|ranks| ranks.into_iter().sum())
    }
}

impl Block {
    fn rank(&self, mode: RankMode) -> Result<usize> {
        match mode {
            RankMode::Exact => Ok(sparse_rank_exact(&self.rows)),
            RankMode::Modular => Ok(sparse_rank_modular(&self.rows)),
            RankMode::Checked => agree(
                sparse_rank_exact(&self.rows),
                sparse_rank_modular(&self.rows),
            ),
        }
    }
}

/// Rank of a sparse matrix by block decomposition.
pub fn sparse_rank(rows: Vec<SparseRow>, ncols: usize, mode: RankMode) -> Result<usize> {
    BlockPlan::new(rows, ncols).rank(mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Cofactor expansion; exponential time.
    fn determinant_by_expansion(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::from(1);
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            if m[0][j] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = BigInt::from(m[0][j]) * determinant_by_expansion(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Largest `k` with a non-zero `k × k` minor.
    fn rank_by_minors(m: &[Vec<i64>]) -> usize {
        use itertools::Itertools;
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        for k in (1..=rows.min(cols)).rev() {
            for rs in (0..rows).combinations(k) {
                for cs in (0..cols).combinations(k) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    if !determinant_by_expansion(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_exact(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_exact(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(
            rank_exact(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 1]]),
            2
        );
        assert_eq!(rank_exact(&[]), 0);
        assert_eq!(
            rank_modular(&[vec![1, -1, 0], vec![0, 1, -1], vec![-1, 0, 1]]),
            2
        );
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 40;
        let m = vec![vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big]];
        assert_eq!(rank_exact(&m), 3);
        // rows 0 and 2 proportional, large entries
        let m = vec![vec![big, big + 1], vec![3, 7], vec![2 * big, 2 * big + 2]];
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn modular_path_can_disagree_on_multiples_of_the_prime() {
        let p = MODULUS as i64;
        let m = vec![vec![p]];
        assert_eq!(rank_exact(&m), 1);
        assert_eq!(rank_modular(&m), 0);
        assert_eq!(
            rank(&m, RankMode::Checked),
            Err(Error::ArithmeticMismatch {
                exact: 1,
                modular: 0
            })
        );
    }

    #[test]
    fn blocks_split_by_shared_columns() {
        let rows = vec![
            vec![(0, 1), (1, -1)],
            vec![(2, 1), (3, -1)],
            vec![(1, 1), (0, -1)],
            vec![],
        ];
        let plan = BlockPlan::new(rows.clone(), 5);
        assert_eq!(plan.block_count(), 2);
        assert_eq!(plan.rank(RankMode::Checked).unwrap(), 2);
        assert_eq!(sparse_rank(rows, 5, RankMode::Exact).unwrap(), 2);
    }

    #[test]
    fn sparse_overflow_falls_back_to_bigint() {
        let big = 1i64 << 40;
        let rows = vec![
            vec![(0, big), (1, 1)],
            vec![(0, 1), (1, big), (2, 1)],
            vec![(1, 1), (2, big)],
        ];
        assert_eq!(sparse_rank_exact(&rows), 3);
        let rows = vec![
            vec![(0, big), (1, big + 1)],
            vec![(0, 3), (1, 7)],
            vec![(0, 2 * big), (1, 2 * big + 2)],
        ];
        assert_eq!(sparse_rank_exact(&rows), 2);
        assert_eq!(sparse_rank_modular(&rows), 2);
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_minor_enumeration(
            m in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..5)
        ) {
            let sparse: Vec<SparseRow> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect();
            let expected = rank_by_minors(&m);
            prop_assert_eq!(sparse_rank(sparse.clone(), 4, RankMode::Exact).unwrap(), expected);
            prop_assert_eq!(sparse_rank(sparse, 4, RankMode::Modular).unwrap(), expected);
        }

        #[test]
        fn exact_rank_matches_minor_enumeration(
            m in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..5)
        ) {
            let expected = rank_by_minors(&m);
            prop_assert_eq!(rank_exact(&m), expected);
            prop_assert_eq!(rank_modular(&m), expected);
        }

        #[test]
        fn sparse_rank_matches_dense(
            m in proptest::collection::vec(proptest::collection::vec(-1i64..=1, 6), 0..8)
        ) {
            let sparse: Vec<SparseRow> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect();
            prop_assert_eq!(sparse_rank(sparse, 6, RankMode::Checked).unwrap(), rank_exact(&m));
        }
    }
}
