//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub const P: u64 = 1_000_003;

/// Rank of an integer matrix modulo `p`, by plain row reduction.
pub fn rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Cohomology `{k: dim}` of a simplicial complex given by all its simplices
/// (sorted vertex lists, closed under faces).
pub fn simplicial_cohomology(simplices: &[Vec<usize>], p: u64) -> BTreeMap<i32, usize> {
    let mut by_dim: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
    for s in simplices {
        by_dim.entry(s.len() - 1).or_default().push(s);
    }
    let top = by_dim.keys().copied().max().unwrap_or(0);
    let count = |k: usize| by_dim.get(&k).map_or(0, |v| v.len());
    // rank of δ: C^k → C^{k+1}
    let delta_rank = |k: usize| -> usize {
        let (Some(lo), Some(hi)) = (by_dim.get(&k), by_dim.get(&(k + 1))) else { return 0 };
        let rows: Vec<Vec<i64>> = hi
            .iter()
            .map(|t| {
                lo.iter()
                    .map(|s| {
                        (0..t.len())
                            .find(|&i| {
                                let mut f = (*t).clone();
                                f.remove(i);
                                &f == *s
                            })
                            .map_or(0, |i| if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        rank_mod(&rows, p)
    };
    let mut out = BTreeMap::new();
    for k in 0..=top {
        let b = count(k) - delta_rank(k) - if k > 0 { delta_rank(k - 1) } else { 0 };
        if b > 0 {
            out.insert(k as i32, b);
        }
    }
    out
}

/// All nonempty faces of the given facets, as sorted vertex lists.
pub fn closure(facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = std::collections::BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort();
        for mask in 1u32..(1 << f.len()) {
            out.insert((0..f.len()).filter(|b| mask & (1 << b) != 0).map(|b| f[b]).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

/// Strictly increasing chains of a relation given by `leq`, found by search.
pub fn chains(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for j in 0..n {
            if j != last && leq(last, j) {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
        out.push(c);
    }
    out
}

pub fn betti_map(b: &sheaf_core::BettiVector) -> BTreeMap<i32, usize> {
    b.iter().collect()
}
