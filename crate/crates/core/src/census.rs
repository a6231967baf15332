//! Exhaustive enumeration of small involutive biracks and of the twist
//! systems they admit.
//!
//! The search runs over non-degenerate right cyclic left quasigroups, one
//! row (left translation) at a time, and derives the birack of each
//! survivor. Isomorphism classes are separated by full `S_n` orbit
//! minimisation.

use itertools::Itertools;
use rayon::prelude::*;

use crate::birack::Birack;
use crate::error::{Error, Hypothesis, Result};
use crate::isotope::{validate_twist_system, TwistLevel, TwistSystem};
use crate::structures::{Grading, LeftQuasigroup, Perm};

/// Largest size enumerated without opting in to long runs.
pub const MAX_QUICK_SIZE: usize = 4;
pub const MAX_SIZE: usize = 5;

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Perm> {
    (0..n)
        .permutations(n)
        .map(|images| Perm::new(images).expect("itertools yields permutations"))
        .collect()
}

struct Search<'a> {
    n: usize,
    perms: &'a [Perm],
    inverses: Vec<Perm>,
}

impl Search<'_> {
    /// Constraints that become decidable once row `k` is placed.
    fn consistent(&self, rows: &[usize]) -> bool {
        let k = rows.len() - 1;
        let row = |x: usize| &self.perms[rows[x]];
        let inv = |x: usize| &self.inverses[rows[x]];
        let diag = inv(k).apply(k);
        if (0..k).any(|x| inv(x).apply(x) == diag) {
            return false;
        }
        for x in 0..=k {
            for y in x + 1..=k {
                let a = inv(x).apply(y);
                let b = inv(y).apply(x);
                if a > k || b > k || x.max(y).max(a).max(b) != k {
                    continue;
                }
                let (lx, la, ly, lb) = (row(x), row(a), row(y), row(b));
                if (0..self.n).any(|z| lx.apply(la.apply(z)) != ly.apply(lb.apply(z))) {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&self, rows: &mut Vec<usize>, out: &mut Vec<LeftQuasigroup>) {
        if rows.len() == self.n {
            let translations: Vec<Perm> = rows.iter().map(|&i| self.perms[i].clone()).collect();
            out.push(LeftQuasigroup::from_translations(&translations));
            return;
        }
        for i in 0..self.perms.len() {
            rows.push(i);
            if self.consistent(rows) {
                self.extend(rows, out);
            }
            rows.pop();
        }
    }
}

/// Every non-degenerate right cyclic left quasigroup on `0..n` (labelled),
/// sorted by table. Unbounded in `n`; callers choose what they can afford.
pub fn enumerate_left_quasigroups(n: usize) -> Vec<LeftQuasigroup> {
    if n == 0 {
        return Vec::new();
    }
    let perms = all_permutations(n);
    let search = Search {
        n,
        perms: &perms,
        inverses: perms.iter().map(Perm::inverse).collect(),
    };
    let mut found: Vec<LeftQuasigroup> = (0..perms.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut rows = vec![first];
            let mut out = Vec::new();
            if search.consistent(&rows) {
                search.extend(&mut rows, &mut out);
            }
            out
        })
        .collect();
    found.sort_by(|a, b| a.circ().cmp(b.circ()));
    found
}

/// Minimal `(circ, bullet)` entries, row-major, over all relabelings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<usize>);

fn flat(b: &Birack) -> Vec<usize> {
    let mut v = b.circ().entries().to_vec();
    v.extend_from_slice(b.bullet().entries());
    v
}

/// The lexicographically least relabeling of `b` and its flattened tables.
pub fn canonical_birack(b: &Birack) -> (CanonicalForm, Birack) {
    all_permutations(b.n())
        .iter()
        .map(|f| {
            let r = b.relabel(f);
            (CanonicalForm(flat(&r)), r)
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("S_n is non-empty")
}

pub fn canonical_label(b: &Birack) -> CanonicalForm {
    canonical_birack(b).0
}

/// Number of relabelings that fix `b`.
pub fn automorphism_count(b: &Birack) -> usize {
    all_permutations(b.n())
        .iter()
        .filter(|f| b.relabel(f) == *b)
        .count()
}

fn check_size(n: usize, allow_long: bool) -> Result<()> {
    match n {
        1..=MAX_QUICK_SIZE => Ok(()),
        MAX_SIZE if allow_long => Ok(()),
        _ => Err(Error::SizeUnsupported(n)),
    }
}

/// All involutive biracks of size `n ≤ 4`, labelled or one canonical
/// representative per isomorphism class, sorted by canonical form.
pub fn enumerate_solutions(n: usize, up_to_iso: bool) -> Result<Vec<Birack>> {
    enumerate_solutions_with(n, up_to_iso, false)
}

/// As [`enumerate_solutions`]; `allow_long` admits `n = 5`.
pub fn enumerate_solutions_with(
    n: usize,
    up_to_iso: bool,
    allow_long: bool,
) -> Result<Vec<Birack>> {
    check_size(n, allow_long)?;
    let biracks: Vec<Birack> = enumerate_left_quasigroups(n)
        .par_iter()
        .map(|q| Birack::derive(q).expect("search yields right cyclic non-degenerate tables"))
        .collect();
    let mut keyed: Vec<(CanonicalForm, Birack)> = if up_to_iso {
        biracks.par_iter().map(canonical_birack).collect()
    } else {
        biracks
            .into_par_iter()
            .map(|b| (canonical_label(&b), b))
            .collect()
    };
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| flat(&a.1).cmp(&flat(&b.1))));
    if up_to_iso {
        keyed.dedup_by(|a, b| a.0 == b.0);
    }
    Ok(keyed.into_iter().map(|(_, b)| b).collect())
}

/// Every twist system over `g` valid for `b` at `level`, in lexicographic
/// order of `(φ_1, …, φ_p)`.
pub fn enumerate_twist_systems(
    b: &Birack,
    g: &Grading,
    level: TwistLevel,
) -> Result<Vec<TwistSystem>> {
    if g.n() != b.n() {
        return Err(Error::ShapeMismatch(
            "grading and birack sizes differ".into(),
        ));
    }
    if !b.is_graded(g) {
        return Err(Error::HypothesisViolated(vec![Hypothesis::Graded]));
    }
    let q = b.left();
    let candidates: Vec<Perm> = all_permutations(b.n())
        .into_iter()
        .filter(|f| g.preserves(f))
        .filter(|f| {
            level == TwistLevel::Weak
                || (q.is_automorphism(f, Some(g))
                    && (0..q.n()).all(|x| q.circ().row(f.apply(x)) == q.circ().row(x)))
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    collect_commuting(&candidates, g.p(), &mut chosen, &mut out);
    out.into_iter()
        .map(|idx| {
            TwistSystem::new(
                g.clone(),
                idx.iter().map(|&i| candidates[i].clone()).collect(),
            )
        })
        .filter_ok(|t| validate_twist_system(q, t, level).is_ok_and(|v| v.is_valid()))
        .collect()
}

fn collect_commuting(
    candidates: &[Perm],
    p: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == p {
        out.push(chosen.clone());
        return;
    }
    for (i, c) in candidates.iter().enumerate() {
        if chosen.iter().all(|&j| candidates[j].commutes_with(c)) {
            chosen.push(i);
            collect_commuting(candidates, p, chosen, out);
            chosen.pop();
        }
    }
}

/// Partition of `X` into orbits of the group generated by the left
/// translations. Every involutive birack is graded by it.
pub fn orbit_grading(b: &Birack) -> Grading {
    let n = b.n();
    let mut orbit: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                let z = b.circ_op(x, y);
                let m = orbit[y].min(orbit[z]);
                if orbit[y] != m || orbit[z] != m {
                    orbit[y] = m;
                    orbit[z] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Grading::from_classes(&orbit)
}

/// The trivial grading, the L-class grading (when it grades `b`) and the
/// orbit grading, without repeats.
pub fn natural_gradings(b: &Birack) -> Vec<Grading> {
    let mut out = vec![Grading::trivial(b.n())];
    for g in [b.left().l_equivalence_partition(), orbit_grading(b)] {
        if b.is_graded(&g) && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}
