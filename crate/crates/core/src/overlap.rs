//! The overlap graph: one vertex per cycle of `K_n`, two cycles adjacent when
//! some theta-subgraph contains both.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::{edge_index, enumerate_cycles, Cycle, CycleCatalog, CycleId, EdgeMask};
use crate::error::{Error, Result};
use crate::interval::{factorial, Interval};

pub const DEFAULT_OVERLAP_CAP: usize = 9;

/// Adjacency on raw masks: the shared edges form one path with at least one
/// edge and the shared vertices are exactly that path's vertices.
///
/// The shared edges of two distinct cycles are a disjoint union of paths of
/// one cycle, which span `edges + components` vertices. So the shared vertex
/// count equals `edges + 1` exactly when there is one path and no stray
/// shared vertex.
#[inline]
pub fn masks_adjacent(e1: EdgeMask, v1: u32, e2: EdgeMask, v2: u32) -> bool {
    let shared_edges = (e1 & e2).count_ones();
    shared_edges >= 1 && (v1 & v2).count_ones() == shared_edges + 1
}

pub fn cycles_adjacent(c1: &Cycle, c2: &Cycle) -> Result<bool> {
    if c1 == c2 {
        return Err(Error::SameCycle);
    }
    Ok(masks_adjacent(c1.edge_mask(), c1.vertex_mask(), c2.edge_mask(), c2.vertex_mask()))
}

/// The third cycle of the theta formed by two adjacent cycles.
pub fn third_cycle(n: usize, c1: &Cycle, c2: &Cycle) -> Result<Cycle> {
    if !cycles_adjacent(c1, c2)? {
        return Err(Error::NotAdjacent);
    }
    Ok(Cycle::from_edge_mask(n, c1.edge_mask() ^ c2.edge_mask()).expect("theta has a third cycle"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildMethod {
    /// Test every pair of catalog ids.
    Pairwise,
    /// Grow each neighbour from a subpath of the cycle.
    Extension,
}

/// Overlap graph in compressed-row form.
#[derive(Clone, Debug)]
pub struct OverlapGraph {
    catalog: CycleCatalog,
    offsets: Vec<u64>,
    neighbors: Vec<CycleId>,
    edge_count: u64,
}

impl OverlapGraph {
    pub fn build(n: usize, method: BuildMethod) -> Result<Self> {
        build_overlap(enumerate_cycles(n)?, method, DEFAULT_OVERLAP_CAP)
    }

    /// Assembles a graph from raw rows; validates symmetry and sortedness.
    pub fn from_parts(catalog: CycleCatalog, offsets: Vec<u64>, neighbors: Vec<CycleId>) -> Result<Self> {
        let v = catalog.len();
        if offsets.len() != v + 1 || offsets[0] != 0 || *offsets.last().unwrap() as usize != neighbors.len() {
            return Err(Error::CacheFormat("row offsets do not match the neighbour array".into()));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::CacheFormat("row offsets decrease".into()));
        }
        let g = OverlapGraph { catalog, offsets, neighbors, edge_count: 0 };
        for i in 0..v as CycleId {
            let row = g.neighbors(i);
            if row.windows(2).any(|w| w[0] >= w[1]) || row.iter().any(|&j| j as usize >= v || j == i) {
                return Err(Error::CacheFormat(format!("row {i} is not a sorted list of valid ids")));
            }
            if row.iter().any(|&j| !g.is_adjacent(j, i)) {
                return Err(Error::CacheFormat(format!("row {i} is not symmetric")));
            }
        }
        let edge_count = g.neighbors.len() as u64 / 2;
        Ok(OverlapGraph { edge_count, ..g })
    }

    pub fn n(&self) -> usize {
        self.catalog.n()
    }

    pub fn catalog(&self) -> &CycleCatalog {
        &self.catalog
    }

    pub fn vertex_count(&self) -> usize {
        self.catalog.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[CycleId] {
        &self.neighbors
    }

    pub fn neighbors(&self, id: CycleId) -> &[CycleId] {
        let i = id as usize;
        &self.neighbors[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn degree(&self, id: CycleId) -> usize {
        self.neighbors(id).len()
    }

    pub fn is_adjacent(&self, a: CycleId, b: CycleId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Id of the third cycle of the theta through `a` and `b` (assumed adjacent).
    pub fn third_id(&self, a: CycleId, b: CycleId) -> CycleId {
        let mask = self.catalog.get(a).edge_mask() ^ self.catalog.get(b).edge_mask();
        self.catalog.id_of_edges(mask).expect("third cycle is catalogued")
    }

    /// Theta triples `(a, b, c)` with `a < b < c`, each exactly once, in
    /// lexicographic order.
    pub fn theta_triples(&self) -> impl Iterator<Item = (CycleId, CycleId, CycleId)> + '_ {
        self.catalog.ids().flat_map(move |a| {
            self.neighbors(a).iter().filter(move |&&b| b > a).filter_map(move |&b| {
                let c = self.third_id(a, b);
                (c > b).then_some((a, b, c))
            })
        })
    }

    /// For each id `c`, the pairs `(a, b)` with `(a, b, c)` a theta triple.
    pub fn triples_by_largest(&self) -> Vec<Vec<(CycleId, CycleId)>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (a, b, c) in self.theta_triples() {
            out[c as usize].push((a, b));
        }
        out
    }

    pub fn stats(&self) -> OverlapStats {
        let mut s = compute_sn_and_bounds(self.n());
        s.edge_count = Some(self.edge_count);
        s
    }
}

pub fn build_overlap(catalog: CycleCatalog, method: BuildMethod, cap: usize) -> Result<OverlapGraph> {
    let n = catalog.n();
    if n > cap {
        return Err(Error::SizeGuard { what: "overlap graph construction", n, max: cap });
    }
    let rows: Vec<Vec<CycleId>> = match method {
        BuildMethod::Pairwise => pairwise_rows(&catalog),
        BuildMethod::Extension => extension_rows(&catalog),
    };
    let mut offsets = Vec::with_capacity(rows.len() + 1);
    offsets.push(0u64);
    let mut total = 0u64;
    for r in &rows {
        total += r.len() as u64;
        offsets.push(total);
    }
    let neighbors: Vec<CycleId> = rows.into_iter().flatten().collect();
    let edge_count = total / 2;
    Ok(OverlapGraph { catalog, offsets, neighbors, edge_count })
}

fn pairwise_rows(catalog: &CycleCatalog) -> Vec<Vec<CycleId>> {
    let keys: Vec<(EdgeMask, u32)> = catalog.cycles().iter().map(|c| (c.edge_mask(), c.vertex_mask())).collect();
    (0..keys.len())
        .into_par_iter()
        .map(|i| {
            let (e1, v1) = keys[i];
            keys.iter()
                .enumerate()
                .filter(|&(j, &(e2, v2))| j != i && masks_adjacent(e1, v1, e2, v2))
                .map(|(j, _)| j as CycleId)
                .collect()
        })
        .collect()
}

fn extension_rows(catalog: &CycleCatalog) -> Vec<Vec<CycleId>> {
    let n = catalog.n();
    let mut idx = vec![vec![0u32; n + 1]; n + 1];
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            if a != b {
                idx[a as usize][b as usize] = edge_index(n, a, b) as u32;
            }
        }
    }
    catalog
        .cycles()
        .par_iter()
        .map(|c| {
            let mut row = Vec::new();
            let verts = c.vertices();
            let k = verts.len();
            let outside: Vec<u8> = (1..=n as u8).filter(|&v| c.vertex_mask() >> v & 1 == 0).collect();
            for start in 0..k {
                // subpath verts[start], ..., verts[start + len] with `len` edges
                for len in 1..k {
                    let mut path_mask = 0u64;
                    for s in 0..len {
                        let a = verts[(start + s) % k];
                        let b = verts[(start + s + 1) % k];
                        path_mask |= 1 << idx[a as usize][b as usize];
                    }
                    let u = verts[start];
                    let v = verts[(start + len) % k];
                    // the direct edge u-v is a chord only when u, v are
                    // at distance >= 2 along `c` in both directions
                    let min_inner = if len == 1 || len == k - 1 { 1 } else { 0 };
                    let mut chosen = Vec::with_capacity(outside.len());
                    let mut used = 0u32;
                    extend_paths(&outside, min_inner, &mut chosen, &mut used, &mut |inner: &[u8]| {
                        let mut mask = path_mask;
                        let mut prev = v;
                        for &w in inner {
                            mask |= 1 << idx[prev as usize][w as usize];
                            prev = w;
                        }
                        mask |= 1 << idx[prev as usize][u as usize];
                        row.push(catalog.id_of_edges(mask).expect("extension yields a catalogued cycle"));
                    });
                }
            }
            row.sort_unstable();
            row.dedup();
            row
        })
        .collect()
}

/// Visits every sequence of distinct `outside` vertices (length >= `min_len`),
/// to be walked from `v` back to `u`.
fn extend_paths(outside: &[u8], min_len: usize, chosen: &mut Vec<u8>, used: &mut u32, visit: &mut impl FnMut(&[u8])) {
    if chosen.len() >= min_len {
        visit(chosen);
    }
    for &w in outside {
        if *used >> w & 1 == 1 {
            continue;
        }
        *used |= 1 << w;
        chosen.push(w);
        extend_paths(outside, min_len, chosen, used, visit);
        chosen.pop();
        *used &= !(1 << w);
    }
}

/// Exact cycle-count quantities and the bounds they are compared against.
#[derive(Clone, Debug, Serialize)]
pub struct OverlapStats {
    pub n: usize,
    /// `(n!/2) * S_n`, as a decimal string.
    pub vertex_count: String,
    pub edge_count: Option<u64>,
    /// `S_n` as an exact fraction `"p/q"`.
    pub s_n: String,
    pub s_n_interval: Interval,
    /// `e/n < S_n < e/n + 5/n^2`; `None` below `n = 5`.
    pub sn_bounds_hold: Option<bool>,
    /// `(e/2)(n-1)! < |V| < 2(n-1)!`; `None` below `n = 5`.
    pub vertex_bounds_hold: Option<bool>,
}

/// `S_n = sum_{k=0}^{n-3} 1 / (k! (n-k))`.
///
/// Summed over the common denominator `(n-3)! lcm(3..=n)` so only the final
/// fraction is reduced.
pub fn s_n(n: usize) -> BigRational {
    if n < 3 {
        return BigRational::zero();
    }
    let lcm = (3..=n).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(j)));
    // (n-3)!/k! for k = n-3 down to 0
    let mut ratio = BigInt::one();
    let mut numer = BigInt::zero();
    for k in (0..=n - 3).rev() {
        numer += &ratio * (&lcm / BigInt::from(n - k));
        ratio *= BigInt::from(k.max(1));
    }
    BigRational::new(numer, BigInt::from(factorial(n as u64 - 3)) * lcm)
}

pub fn compute_sn_and_bounds(n: usize) -> OverlapStats {
    let sn = if n >= 3 { s_n(n) } else { BigRational::zero() };
    let half_fact = BigRational::new(BigInt::from(factorial(n as u64)), BigInt::from(2));
    let vertices = &half_fact * &sn;
    assert!(vertices.is_integer(), "vertex count is an integer");
    let (sn_ok, v_ok) = if n >= 5 {
        let e = Interval::e();
        let nn = BigRational::from_integer(n.into());
        let e_over_n = e.div(&Interval::exact(nn.clone()));
        let upper = e_over_n.add(&Interval::exact(BigRational::from_integer(5.into()) / (&nn * &nn)));
        let sn_iv = Interval::exact(sn.clone());
        let sn_ok = e_over_n.certainly_lt(&sn_iv) && sn_iv.certainly_lt(&upper);
        let fm1 = BigRational::from_integer(BigInt::from(factorial(n as u64 - 1)));
        let lower_v = e.scale(&(&fm1 / BigRational::from_integer(2.into())));
        let v_iv = Interval::exact(vertices.clone());
        let upper_v = Interval::exact(fm1 * BigRational::from_integer(2.into()));
        (Some(sn_ok), Some(lower_v.certainly_lt(&v_iv) && v_iv.certainly_lt(&upper_v)))
    } else {
        (None, None)
    };
    OverlapStats {
        n,
        vertex_count: vertices.to_integer().to_string(),
        edge_count: None,
        s_n: format!("{}/{}", sn.numer(), sn.denom()),
        s_n_interval: Interval::exact(sn),
        sn_bounds_hold: sn_ok,
        vertex_bounds_hold: v_ok,
    }
}
