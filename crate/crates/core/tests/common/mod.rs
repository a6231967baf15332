//! Naive reference computations on raw tables. None of these call into the
//! library's algorithms; they exist to cross-check it.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Rows = Vec<Vec<usize>>;

/// Unordered pairs `{(x, y), r(x, y)}` of basis tensors.
pub type Binomials = BTreeSet<((usize, usize), (usize, usize))>;

pub fn perms(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn ldiv(rows: &Rows, x: usize, y: usize) -> usize {
    rows[x].iter().position(|&v| v == y).unwrap()
}

/// The three-variable form `(x\y)\(x\z) = (y\x)\(y\z)`.
pub fn right_cyclic(rows: &Rows) -> bool {
    let n = rows.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                ldiv(rows, ldiv(rows, x, y), ldiv(rows, x, z))
                    == ldiv(rows, ldiv(rows, y, x), ldiv(rows, y, z))
            })
        })
    })
}

pub fn nondegenerate(rows: &Rows) -> bool {
    let n = rows.len();
    let diag: HashSet<usize> = (0..n).map(|x| ldiv(rows, x, x)).collect();
    diag.len() == n
}

/// Every tuple of `n` row permutations passing both filters.
pub fn naive_census(n: usize) -> Vec<Rows> {
    let ps = perms(n);
    let total = ps.len().pow(n as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            rows.push(ps[code % ps.len()].clone());
            code /= ps.len();
        }
        if nondegenerate(&rows) && right_cyclic(&rows) {
            out.push(rows);
        }
    }
    out.sort();
    out
}

/// `x • y = (x∘y) \ x`.
pub fn bullet(rows: &Rows) -> Rows {
    let n = rows.len();
    (0..n)
        .map(|x| (0..n).map(|y| ldiv(rows, rows[x][y], x)).collect())
        .collect()
}

fn relabel(rows: &Rows, f: &[usize]) -> Rows {
    let n = rows.len();
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            out[f[x]][f[y]] = f[rows[x][y]];
        }
    }
    out
}

/// Number of relabeling orbits among `tables`.
pub fn orbit_count(tables: &[Rows]) -> usize {
    let n = tables.first().map_or(0, Vec::len);
    let ps = perms(n);
    let mins: BTreeSet<Rows> = tables
        .iter()
        .map(|t| ps.iter().map(|f| relabel(t, f)).min().unwrap())
        .collect();
    mins.len()
}

/// Relations as unordered pairs `{(x,y), r(x,y)}` of basis tensors.
pub fn binomial_relations(circ: &Rows, bullet: &Rows) -> Binomials {
    let n = circ.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            let image = (circ[x][y], bullet[x][y]);
            if image != (x, y) {
                out.insert(((x, y).min(image), (x, y).max(image)));
            }
        }
    }
    out
}

/// `dim A_d` for a binomial presentation: the number of classes of words of
/// length `d` under rewriting any factor `ab ↔ a'b'` of a relation.
pub fn binomial_hilbert(n: usize, rels: &Binomials, d: usize) -> usize {
    let words = n.pow(d as u32);
    let mut parent: Vec<usize> = (0..words).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    if d >= 2 {
        for w in 0..words {
            let letters: Vec<usize> = (0..d).rev().map(|i| (w / n.pow(i as u32)) % n).collect();
            for i in 0..d - 1 {
                for &(a, b) in rels {
                    if (letters[i], letters[i + 1]) == a {
                        let mut other = letters.clone();
                        other[i] = b.0;
                        other[i + 1] = b.1;
                        let v = other.iter().fold(0, |acc, &l| acc * n + l);
                        let (ra, rb) = (find(&mut parent, w), find(&mut parent, v));
                        parent[ra] = rb;
                    }
                }
            }
        }
    }
    (0..words).filter(|&w| find(&mut parent, w) == w).count()
}

/// Order of the group generated by the rows.
pub fn group_order(rows: &Rows) -> usize {
    let n = rows.len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in rows {
            let h: Vec<usize> = g.iter().map(|&v| s[v]).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
