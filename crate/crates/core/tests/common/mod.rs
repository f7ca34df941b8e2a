//! Independent reference implementations used to check the library.
//!
//! Nothing here calls into the crate except to translate between its ids and
//! plain edge masks.

#![allow(dead_code)]

use std::collections::HashSet;

/// Pairs `(u, v)`, `u < v`, of `[n]` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for u in 1..=n as u8 {
        for v in u + 1..=n as u8 {
            out.push((u, v));
        }
    }
    out
}

pub fn pair_index(n: usize, a: u8, b: u8) -> usize {
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    pairs(n).iter().position(|&p| p == (u, v)).unwrap()
}

pub fn seq_mask(n: usize, seq: &[u8]) -> u64 {
    let k = seq.len();
    (0..k).fold(0, |m, i| m | 1 << pair_index(n, seq[i], seq[(i + 1) % k]))
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every cycle of `K_n` as a vertex sequence starting at its least vertex,
/// with the second vertex below the last.
pub fn brute_cycles(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for subset in 0u32..1 << n {
        if subset.count_ones() < 3 {
            continue;
        }
        let verts: Vec<u8> = (0..n).filter(|i| subset >> i & 1 == 1).map(|i| i as u8 + 1).collect();
        for p in permutations(&verts[1..]) {
            if p[0] < *p.last().unwrap() {
                let mut seq = vec![verts[0]];
                seq.extend(p);
                out.push(seq);
            }
        }
    }
    out
}

fn degrees(n: usize, mask: u64) -> Vec<u32> {
    let mut d = vec![0; n + 1];
    for (i, &(u, v)) in pairs(n).iter().enumerate() {
        if mask >> i & 1 == 1 {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
    }
    d
}

/// Whether an edge set is a single cycle.
pub fn is_cycle(n: usize, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let d = degrees(n, mask);
    if d.iter().any(|&x| x != 0 && x != 2) {
        return false;
    }
    // connected: flood from one endpoint
    let ps = pairs(n);
    let start = ps[mask.trailing_zeros() as usize].0;
    let mut seen = 1u32 << start;
    loop {
        let mut grew = false;
        for (i, &(u, v)) in ps.iter().enumerate() {
            if mask >> i & 1 == 1 && (seen >> u & 1) != (seen >> v & 1) {
                seen |= 1 << u | 1 << v;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    (1..=n).filter(|&v| d[v] > 0).all(|v| seen >> v & 1 == 1)
}

/// For two distinct cycles whose union is a theta graph, the third cycle.
/// A theta is two vertices of degree 3 joined by three internally disjoint
/// paths: the union has exactly two degree-3 vertices, every other vertex
/// has degree 2, the cycles share an edge, and the symmetric difference is
/// itself a cycle.
pub fn theta_third(n: usize, a: u64, b: u64) -> Option<u64> {
    if a == b || a & b == 0 {
        return None;
    }
    let d = degrees(n, a | b);
    let threes = d.iter().filter(|&&x| x == 3).count();
    let ok = threes == 2 && d.iter().all(|&x| x == 0 || x == 2 || x == 3);
    (ok && is_cycle(n, a ^ b)).then_some(a ^ b)
}

/// Theta-property over a family of cycle masks.
pub fn theta_property(n: usize, members: &[u64]) -> bool {
    let set: HashSet<u64> = members.iter().copied().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if let Some(c) = theta_third(n, a, b) {
                if !set.contains(&c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Adjacency rows (bit masks over indices of `masks`, at most 64) of the
/// "lie in a common theta" relation.
pub fn theta_adjacency(n: usize, masks: &[u64]) -> Vec<u64> {
    assert!(masks.len() <= 64);
    let mut rows = vec![0u64; masks.len()];
    for i in 0..masks.len() {
        for j in 0..masks.len() {
            if theta_third(n, masks[i], masks[j]).is_some() {
                rows[i] |= 1 << j;
            }
        }
    }
    rows
}

/// Maximum stable set size and number of maximum stable sets, by plain
/// branching on the lowest candidate.
pub fn brute_max_stable(adj: &[u64]) -> (u32, u64) {
    fn go(adj: &[u64], cand: u64, size: u32, best: &mut (u32, u64)) {
        if cand == 0 {
            if size > best.0 {
                *best = (size, 1);
            } else if size == best.0 {
                best.1 += 1;
            }
            return;
        }
        if size + cand.count_ones() < best.0 {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, cand & !(1 << v) & !adj[v], size + 1, best);
        go(adj, cand & !(1 << v), size, best);
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = (0, 0);
    go(adj, all, 0, &mut best);
    best
}

/// `σ` of an abelian labelling along a vertex sequence: per coordinate, the
/// signed sum of edge labels, reduced by its modulus (`0` meaning none).
pub fn abelian_sigma(n: usize, seq: &[u8], labels: &[Vec<i128>], moduli: &[i128]) -> Vec<i128> {
    let k = seq.len();
    let mut acc = vec![0i128; moduli.len()];
    for i in 0..k {
        let (a, b) = (seq[i], seq[(i + 1) % k]);
        let e = pair_index(n, a, b);
        let s = if b > a { 1 } else { -1 };
        for (j, x) in acc.iter_mut().enumerate() {
            *x += s * labels[e][j];
        }
    }
    acc.iter().zip(moduli).map(|(&x, &q)| if q == 0 { x } else { x.rem_euclid(q) }).collect()
}

/// Binomial coefficient in `u128`.
pub fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}
