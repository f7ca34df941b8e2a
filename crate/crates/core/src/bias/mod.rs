//! Bias sets: sets of cycles declared balanced, with the theta-property checks.

mod count;
mod stable;

pub use count::{count_biased_cliques, count_biased_graphs, for_each_biased_clique, DEFAULT_COUNT_CAP};
pub use stable::{max_stable_set, StableMode, StableSetResult, DEFAULT_OPTIMA_CAP};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{hamilton_ids, CycleCatalog, CycleId, EdgeMask};
use crate::error::{Error, Result};
use crate::overlap::{masks_adjacent, OverlapGraph};

/// A set of catalog ids of `K_n`'s cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiasSet {
    n: usize,
    members: FixedBitSet,
}

/// Serialized as its increasing id list.
impl Serialize for BiasSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.ids())
    }
}

impl BiasSet {
    pub fn empty(catalog: &CycleCatalog) -> Self {
        BiasSet { n: catalog.n(), members: FixedBitSet::with_capacity(catalog.len()) }
    }

    pub fn full(catalog: &CycleCatalog) -> Self {
        let mut b = Self::empty(catalog);
        b.members.insert_range(..);
        b
    }

    pub fn from_ids(catalog: &CycleCatalog, ids: impl IntoIterator<Item = CycleId>) -> Self {
        let mut b = Self::empty(catalog);
        for id in ids {
            b.insert(id);
        }
        b
    }

    pub fn hamilton(catalog: &CycleCatalog) -> Self {
        Self::from_ids(catalog, hamilton_ids(catalog))
    }

    /// Set over a catalog with `capacity` ids, from a bit mask of the first 64.
    pub fn from_mask(n: usize, capacity: usize, mask: u64) -> Self {
        let mut members = FixedBitSet::with_capacity(capacity);
        for i in 0..capacity.min(64) {
            if mask >> i & 1 == 1 {
                members.insert(i);
            }
        }
        BiasSet { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn capacity(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, id: CycleId) -> bool {
        self.members.contains(id as usize)
    }

    pub fn insert(&mut self, id: CycleId) {
        self.members.insert(id as usize);
    }

    pub fn remove(&mut self, id: CycleId) {
        self.members.set(id as usize, false);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn ids(&self) -> impl Iterator<Item = CycleId> + '_ {
        self.members.ones().map(|i| i as CycleId)
    }

    pub fn is_subset(&self, other: &BiasSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn from_bits(n: usize, members: FixedBitSet) -> Self {
        BiasSet { n, members }
    }

    pub fn intersection(&self, other: &BiasSet) -> BiasSet {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        BiasSet { n: self.n, members: m }
    }

    pub fn difference(&self, other: &BiasSet) -> BiasSet {
        let mut m = self.members.clone();
        m.difference_with(&other.members);
        BiasSet { n: self.n, members: m }
    }

    pub fn to_record(&self, catalog: &CycleCatalog) -> BiasRecord {
        BiasRecord {
            n: self.n,
            ids: self.ids().collect(),
            cycles: self.ids().map(|i| catalog.get(i).vertices().to_vec()).collect(),
        }
    }
}

/// JSON form of a bias set: ids with their canonical vertex sequences.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BiasRecord {
    pub n: usize,
    pub ids: Vec<CycleId>,
    pub cycles: Vec<Vec<u8>>,
}

/// A simple graph on `[n]`, stored as an edge mask over `K_n`'s edge indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: EdgeMask,
}

impl SimpleGraph {
    pub fn complete(n: usize) -> Self {
        let m = crate::cycles::edge_count(n);
        SimpleGraph { n, edges: if m == 64 { u64::MAX } else { (1u64 << m) - 1 } }
    }

    pub fn edge_indices(&self) -> Vec<usize> {
        (0..64).filter(|i| self.edges >> i & 1 == 1).collect()
    }

    pub fn edge_total(&self) -> usize {
        self.edges.count_ones() as usize
    }
}

/// No theta triple meets `b` in exactly two cycles: whenever two members are
/// adjacent, their theta partner is a member too.
pub fn is_biased_clique(b: &BiasSet, omega: &OverlapGraph) -> bool {
    b.ids().all(|c| {
        omega.neighbors(c).iter().filter(|&&d| d > c && b.contains(d)).all(|&d| b.contains(omega.third_id(c, d)))
    })
}

/// Theta-property of `(G, B)`, checked directly on the cycles of `B` without
/// the overlap graph.
pub fn is_biased_graph(g: &SimpleGraph, b: &BiasSet, catalog: &CycleCatalog) -> Result<bool> {
    let members: Vec<CycleId> = b.ids().collect();
    for &id in &members {
        if catalog.get(id).edge_mask() & !g.edges != 0 {
            return Err(Error::CycleOutsideGraph(id));
        }
    }
    for (i, &a) in members.iter().enumerate() {
        let ca = catalog.get(a);
        for &c in &members[i + 1..] {
            let cc = catalog.get(c);
            if masks_adjacent(ca.edge_mask(), ca.vertex_mask(), cc.edge_mask(), cc.vertex_mask()) {
                let third = catalog.id_of_edges(ca.edge_mask() ^ cc.edge_mask()).expect("catalogued");
                if !b.contains(third) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Number of overlap-graph edges with both ends in `b`.
pub fn spanned_edges(b: &BiasSet, omega: &OverlapGraph) -> u64 {
    b.ids().map(|c| omega.neighbors(c).iter().filter(|&&d| d > c && b.contains(d)).count() as u64).sum()
}

pub fn is_scarce(b: &BiasSet, omega: &OverlapGraph) -> bool {
    spanned_edges(b, omega) == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SampleModel {
    /// Each Hamilton cycle independently with probability `p`.
    HamiltonCoin { p: f64 },
    /// A maximal stable set of the overlap graph, grown along a random order.
    GreedyStable,
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws one bit per Hamilton cycle, in id order.
pub fn sample_hamilton_coin(catalog: &CycleCatalog, p: f64, rng: &mut impl Rng) -> BiasSet {
    let mut b = BiasSet::empty(catalog);
    for id in hamilton_ids(catalog) {
        if rng.random_bool(p.clamp(0.0, 1.0)) {
            b.insert(id);
        }
    }
    b
}

pub fn sample_greedy_stable(omega: &OverlapGraph, rng: &mut impl Rng) -> BiasSet {
    let mut order: Vec<CycleId> = omega.catalog().ids().collect();
    order.shuffle(rng);
    let mut b = BiasSet::empty(omega.catalog());
    let mut blocked = FixedBitSet::with_capacity(omega.vertex_count());
    for id in order {
        if !blocked.contains(id as usize) {
            b.insert(id);
            blocked.insert(id as usize);
            for &d in omega.neighbors(id) {
                blocked.insert(d as usize);
            }
        }
    }
    b
}

/// Seeded sampler; stream 0 of the ChaCha8 generator for `seed`.
pub fn sample_bias(omega: &OverlapGraph, model: SampleModel, seed: u64) -> BiasSet {
    let mut rng = rng_for(seed, 0);
    match model {
        SampleModel::HamiltonCoin { p } => sample_hamilton_coin(omega.catalog(), p, &mut rng),
        SampleModel::GreedyStable => sample_greedy_stable(omega, &mut rng),
    }
}
