//! Exact enumeration of biased cliques and simple biased graphs at small `n`.
//!
//! Cycles are decided in id order, which refines length order. When a cycle
//! `c` is decided, every theta triple whose largest member is `c` has its two
//! smaller members fixed already: both balanced forces `c` in, exactly one
//! balanced forces `c` out.

use num_bigint::BigUint;

use crate::cycles::{edge_count, CycleId};
use crate::error::{Error, Result};
use crate::overlap::{BuildMethod, OverlapGraph};

/// Largest `n` accepted by the exact counters by default.
pub const DEFAULT_COUNT_CAP: usize = 5;

struct Enumerator<'a, F: FnMut(u64)> {
    by_largest: &'a [Vec<(CycleId, CycleId)>],
    allowed: u64,
    visit: F,
    count: u64,
}

impl<F: FnMut(u64)> Enumerator<'_, F> {
    fn run(&mut self, next: usize, members: u64) {
        if next == self.by_largest.len() {
            self.count += 1;
            (self.visit)(members);
            return;
        }
        let mut must_in = false;
        let mut must_out = self.allowed >> next & 1 == 0;
        for &(a, b) in &self.by_largest[next] {
            match (members >> a & 1) + (members >> b & 1) {
                2 => must_in = true,
                1 => must_out = true,
                _ => {}
            }
        }
        if must_in && must_out {
            return;
        }
        if !must_in {
            self.run(next + 1, members);
        }
        if !must_out {
            self.run(next + 1, members | 1 << next);
        }
    }
}

fn enumerate_within(
    omega: &OverlapGraph,
    by_largest: &[Vec<(CycleId, CycleId)>],
    allowed: u64,
    visit: impl FnMut(u64),
) -> u64 {
    debug_assert!(omega.vertex_count() <= 64);
    let mut e = Enumerator { by_largest, allowed, visit, count: 0 };
    e.run(0, 0);
    e.count
}

/// Calls `visit` with the member mask (bit `i` = id `i`) of every biased
/// clique of `K_n`; returns how many there were.
pub fn for_each_biased_clique(omega: &OverlapGraph, visit: impl FnMut(u64)) -> Result<u64> {
    if omega.vertex_count() > 64 {
        return Err(Error::SizeGuard { what: "biased clique enumeration", n: omega.n(), max: DEFAULT_COUNT_CAP });
    }
    let by_largest = omega.triples_by_largest();
    Ok(enumerate_within(omega, &by_largest, u64::MAX, visit))
}

/// Number of biased cliques on `[n]`.
pub fn count_biased_cliques(n: usize, cap: usize) -> Result<BigUint> {
    let max = cap.min(DEFAULT_COUNT_CAP);
    if n > max {
        return Err(Error::SizeGuard { what: "biased clique counting", n, max });
    }
    if n < 3 {
        return Ok(BigUint::from(1u32));
    }
    let omega = OverlapGraph::build(n, BuildMethod::Pairwise)?;
    Ok(BigUint::from(for_each_biased_clique(&omega, |_| {})?))
}

/// Number of simple biased graphs on `[n]`: over every graph `G`, the bias
/// sets drawn from `G`'s cycles that satisfy the theta-property in `G`.
pub fn count_biased_graphs(n: usize) -> Result<BigUint> {
    const MAX: usize = 4;
    if n > MAX {
        return Err(Error::SizeGuard { what: "biased graph counting", n, max: MAX });
    }
    let m = edge_count(n);
    if n < 3 {
        return Ok(BigUint::from(1u64 << m));
    }
    let omega = OverlapGraph::build(n, BuildMethod::Pairwise)?;
    let by_largest = omega.triples_by_largest();
    let cat = omega.catalog();
    let mut total = BigUint::from(0u32);
    for g in 0u64..(1 << m) {
        let allowed = cat.ids_within(g).fold(0u64, |acc, id| acc | 1 << id);
        total += enumerate_within(&omega, &by_largest, allowed, |_| {});
    }
    Ok(total)
}
