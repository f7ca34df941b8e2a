//! Cycles of the complete graph `K_n` and their canonical catalog.
//!
//! Vertices are labelled `1..=n`. Edges of `K_n` are indexed densely by the
//! lexicographic rank of the pair `(u, v)`, `u < v`, so an edge set fits in a
//! `u64` mask for every supported `n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::factorial;

/// Largest `n` for which an edge set of `K_n` fits in a `u64`.
pub const MAX_N: usize = 11;

pub type EdgeMask = u64;
pub type VertexMask = u32;
pub type CycleId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeId {
    pub u: u8,
    pub v: u8,
    pub index: u16,
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic rank of `{u, v}` among the pairs of `[n]`.
pub fn edge_index(n: usize, u: u8, v: u8) -> usize {
    let (u, v) = if u < v { (u as usize, v as usize) } else { (v as usize, u as usize) };
    debug_assert!(1 <= u && u < v && v <= n);
    // pairs (a, *) for a < u contribute n - a each
    (u - 1) * n - (u - 1) * u / 2 + (v - u - 1)
}

/// All edges of `K_n` in index order.
pub fn edges(n: usize) -> Vec<EdgeId> {
    let mut out = Vec::with_capacity(edge_count(n));
    for u in 1..=n as u8 {
        for v in u + 1..=n as u8 {
            out.push(EdgeId { u, v, index: out.len() as u16 });
        }
    }
    out
}

pub fn edge_endpoints(n: usize, index: usize) -> (u8, u8) {
    let e = edges(n)[index];
    (e.u, e.v)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<u8>,
    edges: EdgeMask,
    vmask: VertexMask,
}

impl Cycle {
    /// Canonical sequence: starts at the minimum vertex and visits the smaller
    /// of its two neighbours first.
    pub fn vertices(&self) -> &[u8] {
        &self.vertices
    }

    pub fn edge_mask(&self) -> EdgeMask {
        self.edges
    }

    pub fn vertex_mask(&self) -> VertexMask {
        self.vmask
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive pairs of the canonical traversal, closing back to the start.
    pub fn steps(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn edge_ids(&self, n: usize) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .steps()
            .map(|(a, b)| {
                let (u, v) = if a < b { (a, b) } else { (b, a) };
                EdgeId { u, v, index: edge_index(n, u, v) as u16 }
            })
            .collect();
        out.sort();
        out
    }

    /// Rebuilds a cycle from an edge mask; `None` unless the edges form one cycle.
    pub fn from_edge_mask(n: usize, mask: EdgeMask) -> Option<Cycle> {
        if mask == 0 {
            return None;
        }
        let table = edges(n);
        let mut adj: Vec<Vec<u8>> = vec![Vec::new(); n + 1];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let e = table.get(i)?;
            adj[e.u as usize].push(e.v);
            adj[e.v as usize].push(e.u);
        }
        let start = (1..=n).find(|&v| !adj[v].is_empty())? as u8;
        if adj.iter().any(|a| !a.is_empty() && a.len() != 2) {
            return None;
        }
        let mut seq = vec![start];
        let mut prev = start;
        let mut cur = adj[start as usize][0];
        while cur != start {
            seq.push(cur);
            let next = if adj[cur as usize][0] == prev { adj[cur as usize][1] } else { adj[cur as usize][0] };
            prev = cur;
            cur = next;
        }
        if seq.len() != mask.count_ones() as usize {
            return None;
        }
        canonical_cycle(n, &seq).ok()
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{:?}", self.vertices)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Cycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

/// Canonical form of the cycle traversed by `seq`.
pub fn canonical_cycle(n: usize, seq: &[u8]) -> Result<Cycle> {
    if seq.len() < 3 {
        return Err(Error::CycleTooShort(seq.len()));
    }
    if n > MAX_N {
        return Err(Error::SizeGuard { what: "cycle representation", n, max: MAX_N });
    }
    let mut vmask: VertexMask = 0;
    for &v in seq {
        if v == 0 || v as usize > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if vmask & (1 << v) != 0 {
            return Err(Error::RepeatedVertex(v));
        }
        vmask |= 1 << v;
    }
    let k = seq.len();
    let start = (0..k).min_by_key(|&i| seq[i]).unwrap();
    let forward = seq[(start + 1) % k] < seq[(start + k - 1) % k];
    let vertices: Vec<u8> =
        (0..k).map(|i| if forward { seq[(start + i) % k] } else { seq[(start + k - i) % k] }).collect();
    let edges = (0..k).fold(0u64, |m, i| m | 1 << edge_index(n, vertices[i], vertices[(i + 1) % k]));
    Ok(Cycle { vertices, edges, vmask })
}

/// `n! / (2k (n-k)!)`, the number of `k`-cycles of `K_n`.
pub fn cycle_count_by_length(n: usize, k: usize) -> Result<BigUint> {
    if k < 3 || k > n {
        return Err(Error::LengthOutOfRange { n, k });
    }
    Ok(factorial(n as u64) / (factorial((n - k) as u64) * BigUint::from(2 * k)))
}

/// Every cycle of `K_n`, ordered by length and then by canonical sequence.
/// The position in this list is the cycle's id.
#[derive(Clone, Debug)]
pub struct CycleCatalog {
    n: usize,
    cycles: Vec<Cycle>,
    by_edges: HashMap<EdgeMask, CycleId>,
    length_start: Vec<usize>,
}

/// Enumerates the cycles of `K_n`. For `n < 3` the catalog is empty.
pub fn enumerate_cycles(n: usize) -> Result<CycleCatalog> {
    if n > MAX_N {
        return Err(Error::SizeGuard { what: "cycle enumeration", n, max: MAX_N });
    }
    let subsets: Vec<u32> = (0u32..(1u32 << n)).filter(|s| s.count_ones() >= 3).collect();
    let mut cycles: Vec<Cycle> = subsets.par_iter().flat_map_iter(|&s| cycles_on_subset(n, s)).collect();
    cycles.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(CycleCatalog::from_sorted(n, cycles))
}

/// Cyclic orders of the vertex subset `subset` (bit `i` = vertex `i + 1`),
/// with the minimum fixed first and the second vertex below the last.
fn cycles_on_subset(n: usize, subset: u32) -> Vec<Cycle> {
    let verts: Vec<u8> = (0..n as u8).filter(|i| subset >> i & 1 == 1).map(|i| i + 1).collect();
    let first = verts[0];
    let mut rest = verts[1..].to_vec();
    let mut out = Vec::new();
    permute(&mut rest, 0, &mut |perm| {
        if perm[0] < perm[perm.len() - 1] {
            let mut seq = Vec::with_capacity(perm.len() + 1);
            seq.push(first);
            seq.extend_from_slice(perm);
            out.push(canonical_cycle(n, &seq).expect("valid sequence"));
        }
    });
    out
}

fn permute(items: &mut [u8], k: usize, visit: &mut impl FnMut(&[u8])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

impl CycleCatalog {
    fn from_sorted(n: usize, cycles: Vec<Cycle>) -> Self {
        let by_edges = cycles.iter().enumerate().map(|(i, c)| (c.edges, i as CycleId)).collect();
        let mut length_start = vec![0usize; n.max(2) + 2];
        for (k, start) in length_start.iter_mut().enumerate() {
            *start = cycles.partition_point(|c| c.len() < k);
        }
        CycleCatalog { n, cycles, by_edges, length_start }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn get(&self, id: CycleId) -> &Cycle {
        &self.cycles[id as usize]
    }

    pub fn id_of_edges(&self, mask: EdgeMask) -> Option<CycleId> {
        self.by_edges.get(&mask).copied()
    }

    pub fn id_of(&self, cycle: &Cycle) -> Option<CycleId> {
        self.id_of_edges(cycle.edges)
    }

    /// Looks up the id of the cycle traversed by `seq`.
    pub fn id_of_sequence(&self, seq: &[u8]) -> Result<CycleId> {
        let c = canonical_cycle(self.n, seq)?;
        Ok(self.id_of(&c).expect("every cycle of K_n is catalogued"))
    }

    pub fn ids_of_length(&self, k: usize) -> Range<CycleId> {
        if k >= self.length_start.len() - 1 {
            let end = self.cycles.len() as CycleId;
            return end..end;
        }
        self.length_start[k] as CycleId..self.length_start[k + 1] as CycleId
    }

    pub fn ids(&self) -> Range<CycleId> {
        0..self.cycles.len() as CycleId
    }

    /// Ids of cycles whose edges all lie in `graph`.
    pub fn ids_within(&self, graph: EdgeMask) -> impl Iterator<Item = CycleId> + '_ {
        self.cycles.iter().enumerate().filter(move |(_, c)| c.edges & !graph == 0).map(|(i, _)| i as CycleId)
    }
}

/// Ids of the Hamilton cycles, i.e. the length-`n` cycles.
pub fn hamilton_ids(catalog: &CycleCatalog) -> Vec<CycleId> {
    catalog.ids_of_length(catalog.n()).collect()
}
