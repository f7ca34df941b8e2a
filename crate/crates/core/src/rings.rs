//! Diamond rings of `K_n`, their Hamilton cycles, and the bad-ring Monte
//! Carlo experiment.
//!
//! A diamond is `K_4` minus an edge; its tips are the two degree-2 vertices.
//! Every Hamilton cycle of a ring crosses each diamond tip, middle, middle,
//! tip. So every ring is found by taking a Hamilton cycle of `K_n`, choosing
//! two windows of four consecutive vertices that meet at most in a tip, and
//! adding each window's two chords. Each ring arises many times this way and
//! is kept once by edge set.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bias::{rng_for, sample_hamilton_coin, BiasSet};
use crate::cycles::{edge_count, edge_index, hamilton_ids, CycleCatalog, CycleId, EdgeMask};
use crate::error::{Error, Result};
use crate::interval::factorial;
use crate::labelling::{balanced_set, signed_vector, AbelianGroup, EdgeLabelling, DEFAULT_CYCLE_CAP};

pub const MIN_RING_N: usize = 6;
pub const MAX_RING_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Diamond {
    /// The degree-2 vertices, increasing.
    pub tips: [u8; 2],
    /// The degree-3 vertices, increasing.
    pub middles: [u8; 2],
}

impl Diamond {
    fn from_window(w: [u8; 4]) -> Self {
        let sort = |a: u8, b: u8| if a < b { [a, b] } else { [b, a] };
        Diamond { tips: sort(w[0], w[3]), middles: sort(w[1], w[2]) }
    }

    pub fn edge_mask(&self, n: usize) -> EdgeMask {
        let [t, u] = self.tips;
        let [x, y] = self.middles;
        [(t, x), (t, y), (x, y), (x, u), (y, u)].iter().fold(0, |m, &(a, b)| m | 1 << edge_index(n, a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondRing {
    pub n: usize,
    pub edges: EdgeMask,
    pub diamonds: [Diamond; 2],
    /// Tip-to-tip connecting paths, endpoints included; a single vertex is a
    /// path of length 0.
    pub paths: [Vec<u8>; 2],
    /// Hamilton cycle ids, increasing.
    pub hamiltons: [CycleId; 4],
}

/// `n!(n-5)/16`.
pub fn ring_count_formula(n: usize) -> BigRational {
    let n64 = n as u64;
    BigRational::new(BigInt::from(factorial(n64)) * (BigInt::from(n64) - 5), BigInt::from(16))
}

/// `E[X] = n!(n-5)/64` when each Hamilton cycle is balanced with probability ½.
pub fn expected_bad_rings(n: usize) -> BigRational {
    ring_count_formula(n) / BigRational::from_integer(BigInt::from(4))
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_RING_N {
        return Err(Error::SizeGuard { what: "diamond rings", n, max: MAX_RING_N });
    }
    Ok(())
}

fn path_mask(n: usize, p: &[u8]) -> EdgeMask {
    p.windows(2).fold(0, |m, w| m | 1 << edge_index(n, w[0], w[1]))
}

/// Every `n`-vertex diamond ring of `K_n`, ordered by Hamilton ids.
pub fn enumerate_diamond_rings(catalog: &CycleCatalog) -> Result<Vec<DiamondRing>> {
    let n = catalog.n();
    guard(n)?;
    if n < MIN_RING_N {
        return Ok(Vec::new());
    }
    let found: BTreeMap<EdgeMask, ([Diamond; 2], [Vec<u8>; 2])> = hamilton_ids(catalog)
        .into_par_iter()
        .flat_map_iter(|h| {
            let seq = catalog.get(h).vertices().to_vec();
            let at = |i: usize| seq[i % n];
            let mut out = Vec::new();
            for i in 0..n {
                // second window starts 3..=n-3 steps later, so the windows
                // share at most their tips
                for d in 3..=n - 3 {
                    let j = i + d;
                    let w1 = [at(i), at(i + 1), at(i + 2), at(i + 3)];
                    let w2 = [at(j), at(j + 1), at(j + 2), at(j + 3)];
                    let (d1, d2) = (Diamond::from_window(w1), Diamond::from_window(w2));
                    let p1: Vec<u8> = (i + 3..=j).map(at).collect();
                    let p2: Vec<u8> = (j + 3..=i + n).map(at).collect();
                    let edges = d1.edge_mask(n) | d2.edge_mask(n) | path_mask(n, &p1) | path_mask(n, &p2);
                    out.push((edges, ([d1, d2], [p1, p2])));
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, (k, v)| {
            acc.entry(k).or_insert(v);
            acc
        });
    let mut rings = found
        .into_par_iter()
        .map(|(edges, (mut diamonds, mut paths))| {
            // the diamond holding the smaller vertex goes first
            if diamonds[1].tips[0].min(diamonds[1].middles[0]) < diamonds[0].tips[0].min(diamonds[0].middles[0]) {
                diamonds.swap(0, 1);
                paths.swap(0, 1);
            }
            for p in paths.iter_mut() {
                if p.first() > p.last() {
                    p.reverse();
                }
            }
            let hamiltons = hamiltons_within(catalog, edges)?;
            Ok(DiamondRing { n, edges, diamonds, paths, hamiltons })
        })
        .collect::<Result<Vec<_>>>()?;
    rings.sort_by_key(|r| r.hamiltons);
    Ok(rings)
}

/// Hamilton cycles inside an edge set, by exhaustive search from vertex 1.
fn hamiltons_within(catalog: &CycleCatalog, edges: EdgeMask) -> Result<[CycleId; 4]> {
    let n = catalog.n();
    let mut adj = vec![Vec::new(); n + 1];
    for u in 1..=n as u8 {
        for v in 1..=n as u8 {
            if u != v && edges >> edge_index(n, u, v) & 1 == 1 {
                adj[u as usize].push(v);
            }
        }
    }
    fn dfs(adj: &[Vec<u8>], path: &mut Vec<u8>, used: u32, n: usize, out: &mut Vec<Vec<u8>>) {
        let last = *path.last().unwrap();
        if path.len() == n {
            if adj[last as usize].contains(&1) && path[1] < path[n - 1] {
                out.push(path.clone());
            }
            return;
        }
        for &v in &adj[last as usize] {
            if used >> v & 1 == 0 {
                path.push(v);
                dfs(adj, path, used | 1 << v, n, out);
                path.pop();
            }
        }
    }
    let mut found = Vec::new();
    dfs(&adj, &mut vec![1], 1 << 1, n, &mut found);
    let mut ids: Vec<CycleId> = found.iter().map(|s| catalog.id_of_sequence(s)).collect::<Result<_>>()?;
    ids.sort_unstable();
    ids.try_into()
        .map_err(|v: Vec<CycleId>| Error::InvalidParameter(format!("ring has {} Hamilton cycles, expected 4", v.len())))
}

/// The four Hamilton cycles of `r`, recomputed from its edges.
pub fn ring_hamiltons(r: &DiamondRing, catalog: &CycleCatalog) -> Result<[CycleId; 4]> {
    if r.n != catalog.n() || r.edges.count_ones() as usize != r.n + 4 {
        return Err(Error::InvalidParameter("not a diamond ring of this catalog".into()));
    }
    hamiltons_within(catalog, r.edges)
}

pub fn is_bad_ring(b: &BiasSet, r: &DiamondRing) -> bool {
    r.hamiltons.iter().filter(|&&h| b.contains(h)).count() == 3
}

pub fn count_bad_rings(b: &BiasSet, rings: &[DiamondRing]) -> u64 {
    rings.iter().filter(|r| is_bad_ring(b, r)).count() as u64
}

/// Signs `c` with `Σ c_i v_i = 0` over the rings' Hamilton signed vectors,
/// first coefficient `+1`.
pub fn ring_dependency(r: &DiamondRing, catalog: &CycleCatalog) -> Option<[i8; 4]> {
    let n = r.n;
    let vs: Vec<Vec<i8>> = r.hamiltons.iter().map(|&h| signed_vector(n, catalog.get(h)).0).collect();
    (0..8u8)
        .map(|s| [1, sign(s, 0), sign(s, 1), sign(s, 2)])
        .find(|c| (0..edge_count(n)).all(|e| (0..4).map(|i| (c[i] * vs[i][e]) as i32).sum::<i32>() == 0))
}

fn sign(bits: u8, i: u8) -> i8 {
    if bits >> i & 1 == 1 {
        -1
    } else {
        1
    }
}

/// No ring has exactly three balanced Hamilton cycles under `l`.
pub fn labelled_ring_check(
    catalog: &CycleCatalog,
    l: &EdgeLabelling<AbelianGroup>,
    rings: &[DiamondRing],
) -> Result<bool> {
    let b = balanced_set(catalog, l, DEFAULT_CYCLE_CAP)?;
    Ok(!rings.iter().any(|r| is_bad_ring(&b, r)))
}

/// Unordered pairs of distinct rings sharing a Hamilton cycle.
pub fn dependent_pairs(rings: &[DiamondRing]) -> u64 {
    let mut by_h: BTreeMap<CycleId, Vec<usize>> = BTreeMap::new();
    for (i, r) in rings.iter().enumerate() {
        for &h in &r.hamiltons {
            by_h.entry(h).or_default().push(i);
        }
    }
    let mut stamp = vec![usize::MAX; rings.len()];
    let mut pairs = 0u64;
    for (i, r) in rings.iter().enumerate() {
        for h in &r.hamiltons {
            for &j in &by_h[h] {
                if j > i && stamp[j] != i {
                    stamp[j] = i;
                    pairs += 1;
                }
            }
        }
    }
    pairs
}

/// `½ (n-1)! n^4`.
pub fn dependent_pairs_bound(n: usize) -> BigRational {
    let n64 = n as u64;
    BigRational::new(BigInt::from(factorial(n64 - 1)) * BigInt::from(n64.pow(4)), BigInt::from(2))
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub rings: usize,
    pub mean_bad: f64,
    /// `n!(n-5)/64` as `p/q`.
    pub expected: String,
    pub expected_f64: f64,
    pub stderr: f64,
    /// `(mean - expected) / stderr`, when the spread is nonzero.
    pub z_score: Option<f64>,
    pub fraction_positive: f64,
    pub max_bad: u64,
    pub per_trial: Option<Vec<u64>>,
}

impl McReport {
    /// Per-trial counts as CSV with a header line.
    pub fn per_trial_csv(&self) -> Option<String> {
        self.per_trial.as_ref().map(|xs| {
            let mut s = String::from("trial,bad_rings\n");
            for (i, x) in xs.iter().enumerate() {
                s.push_str(&format!("{i},{x}\n"));
            }
            s
        })
    }
}

/// Trial `t` draws each Hamilton cycle with probability ½ from stream `t`
/// of the generator for `seed`, and counts bad rings.
pub fn monte_carlo(catalog: &CycleCatalog, trials: u64, seed: u64, keep_per_trial: bool) -> Result<McReport> {
    let n = catalog.n();
    guard(n)?;
    if n < MIN_RING_N {
        return Err(Error::InvalidParameter(format!("no diamond rings on {n} vertices")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let rings = enumerate_diamond_rings(catalog)?;
    let xs: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let b = sample_hamilton_coin(catalog, 0.5, &mut rng_for(seed, t));
            count_bad_rings(&b, &rings)
        })
        .collect();
    let k = trials as f64;
    let mean = xs.iter().sum::<u64>() as f64 / k;
    let var = if trials > 1 { xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { 0.0 };
    let stderr = (var / k).sqrt();
    let expected = expected_bad_rings(n);
    let expected_f64 = expected.to_f64().unwrap_or(f64::NAN);
    Ok(McReport {
        n,
        trials,
        seed,
        rings: rings.len(),
        mean_bad: mean,
        expected: format!("{}/{}", expected.numer(), expected.denom()),
        expected_f64,
        stderr,
        z_score: (stderr > 0.0).then(|| (mean - expected_f64) / stderr),
        fraction_positive: xs.iter().filter(|&&x| x > 0).count() as f64 / k,
        max_bad: xs.iter().copied().max().unwrap_or(0),
        per_trial: keep_per_trial.then_some(xs),
    })
}
