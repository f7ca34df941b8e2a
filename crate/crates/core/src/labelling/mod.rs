//! Group-labellings of simple graphs: balanced cycles, an exact decision
//! procedure for abelian labellability, pattern decompositions, and the
//! cycle polynomials used for zero-pattern counting.

mod group;
pub mod lattice;
pub mod poly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::{BiasSet, SimpleGraph};
use crate::cycles::{edge_count, edge_index, edges, Cycle, CycleCatalog, CycleId};
use crate::error::{Error, Result};

pub use group::{AbelianGroup, FiniteGroup, Group};
pub use lattice::{left_kernel, Hnf, Row, Snf};
pub use poly::{
    cycle_polynomial, zero_patterns, Field, Polynomial, PrimeField, RationalField, Term, ZeroPatternReport,
    ZeroPatternSystem, DEFAULT_WITNESS_CAP,
};

/// Default cap on the number of cycles of `G` handled by one call.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;
/// Default cap on `|Γ|^|E|` for exhaustive labelling search.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 10_000_000;

/// `γ: E(G) → Γ`; `labels` is indexed by `K_n` edge index and is `Some`
/// exactly on the edges of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabelling<G: Group> {
    pub graph: SimpleGraph,
    pub group: G,
    labels: Vec<Option<G::Elem>>,
}

impl<G: Group> EdgeLabelling<G> {
    pub fn from_fn(graph: SimpleGraph, group: G, mut gamma: impl FnMut(usize) -> G::Elem) -> Self {
        let labels = (0..edge_count(graph.n)).map(|i| (graph.edges >> i & 1 == 1).then(|| gamma(i))).collect();
        EdgeLabelling { graph, group, labels }
    }

    pub fn identity(graph: SimpleGraph, group: G) -> Self {
        let e = group.identity();
        Self::from_fn(graph, group, |_| e.clone())
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn label(&self, edge: usize) -> Option<&G::Elem> {
        self.labels.get(edge).and_then(Option::as_ref)
    }

    /// `σ` along an arbitrary closed walk given as a vertex sequence.
    pub fn sigma_along(&self, seq: &[u8]) -> Result<G::Elem> {
        let n = self.n();
        let k = seq.len();
        let mut acc = self.group.identity();
        for i in 0..k {
            let (a, b) = (seq[i], seq[(i + 1) % k]);
            let e = edge_index(n, a, b);
            let g = self.label(e).ok_or(Error::UnlabelledEdge(e))?;
            acc = if b > a { self.group.op(&acc, g) } else { self.group.op(&acc, &self.group.inverse(g)) };
        }
        Ok(acc)
    }

    /// `σ(C)` over the canonical traversal.
    pub fn sigma(&self, c: &Cycle) -> Result<G::Elem> {
        self.sigma_along(c.vertices())
    }

    pub fn is_balanced(&self, c: &Cycle) -> Result<bool> {
        Ok(self.group.is_identity(&self.sigma(c)?))
    }
}

impl EdgeLabelling<AbelianGroup> {
    pub fn random(graph: SimpleGraph, group: AbelianGroup, rng: &mut impl Rng) -> Self {
        let g = group.clone();
        Self::from_fn(graph, group, |_| g.random_element(rng))
    }

    pub fn to_record(&self) -> LabellingRecord {
        let gamma = edges(self.n())
            .into_iter()
            .filter_map(|e| {
                self.label(e.index as usize)
                    .map(|l| (format!("{}-{}", e.u, e.v), l.iter().map(ToString::to_string).collect()))
            })
            .collect();
        LabellingRecord { n: self.n(), moduli: self.group.moduli.iter().map(ToString::to_string).collect(), gamma }
    }

    pub fn from_record(rec: &LabellingRecord) -> Result<Self> {
        let parse =
            |s: &String| s.parse::<BigInt>().map_err(|_| Error::InvalidParameter(format!("not an integer: {s}")));
        let group = AbelianGroup::new(rec.moduli.iter().map(parse).collect::<Result<_>>()?)?;
        let n = rec.n;
        let mut labels = vec![None; edge_count(n)];
        let mut mask = 0u64;
        for (key, value) in &rec.gamma {
            let (u, v) = key
                .split_once('-')
                .and_then(|(u, v)| Some((u.parse::<u8>().ok()?, v.parse::<u8>().ok()?)))
                .filter(|&(u, v)| u != v && (1..=n as u8).contains(&u) && (1..=n as u8).contains(&v))
                .ok_or_else(|| Error::InvalidParameter(format!("bad edge key {key:?}")))?;
            if value.len() != group.rank() {
                return Err(Error::InvalidParameter(format!("label of {key} has wrong length")));
            }
            let e = edge_index(n, u, v);
            labels[e] = Some(group.reduce(value.iter().map(parse).collect::<Result<_>>()?));
            mask |= 1 << e;
        }
        Ok(EdgeLabelling { graph: SimpleGraph { n, edges: mask }, group, labels })
    }
}

impl EdgeLabelling<FiniteGroup> {
    pub fn random(graph: SimpleGraph, group: FiniteGroup, rng: &mut impl Rng) -> Self {
        let order = group.order();
        Self::from_fn(graph, group, |_| rng.random_range(0..order))
    }
}

impl Serialize for EdgeLabelling<AbelianGroup> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

/// JSON form of an abelian labelling: moduli and an `"u-v"` → vector map,
/// all integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabellingRecord {
    pub n: usize,
    pub moduli: Vec<String>,
    pub gamma: BTreeMap<String, Vec<String>>,
}

/// Entries in `{-1, 0, 1}` indexed by `K_n` edge index; `+1` where the
/// canonical traversal goes from the smaller to the larger endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedCycleVector(pub Vec<i8>);

impl SignedCycleVector {
    /// The entries at `positions`, as a lattice row.
    pub fn restrict(&self, positions: &[usize]) -> Row {
        positions.iter().map(|&p| BigInt::from(self.0[p])).collect()
    }
}

pub fn signed_vector(n: usize, c: &Cycle) -> SignedCycleVector {
    let mut v = vec![0i8; edge_count(n)];
    for (a, b) in c.steps() {
        v[edge_index(n, a, b)] = if b > a { 1 } else { -1 };
    }
    SignedCycleVector(v)
}

fn graph_cycles(catalog: &CycleCatalog, g: &SimpleGraph, cap: usize) -> Result<Vec<CycleId>> {
    if catalog.n() != g.n {
        return Err(Error::InvalidParameter(format!("catalog is for n = {}, graph has n = {}", catalog.n(), g.n)));
    }
    let ids: Vec<CycleId> = catalog.ids_within(g.edges).collect();
    if ids.len() > cap {
        return Err(Error::CapExceeded { what: "cycles of G", needed: ids.len() as u128, cap: cap as u128 });
    }
    Ok(ids)
}

fn check_inside(b: &BiasSet, catalog: &CycleCatalog, g: &SimpleGraph) -> Result<()> {
    match b.ids().find(|&c| catalog.get(c).edge_mask() & !g.edges != 0) {
        Some(c) => Err(Error::CycleOutsideGraph(c)),
        None => Ok(()),
    }
}

/// Cycles of `G` whose `σ` is the identity.
pub fn balanced_set<G: Group>(catalog: &CycleCatalog, l: &EdgeLabelling<G>, cap: usize) -> Result<BiasSet> {
    let ids = graph_cycles(catalog, &l.graph, cap)?;
    let mut out = BiasSet::empty(catalog);
    for id in ids {
        if l.is_balanced(catalog.get(id))? {
            out.insert(id);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LabellabilityDecision {
    pub labellable: bool,
    /// On success, a labelling into a quotient of `Z^E / L` whose balanced
    /// set is `B`.
    pub witness: Option<EdgeLabelling<AbelianGroup>>,
    /// On failure, a cycle outside `B` whose signed vector lies in `L`.
    pub violating_cycle: Option<CycleId>,
    pub violating_sequence: Option<Vec<u8>>,
}

/// Decides whether `B` is the balanced set of some abelian labelling of `G`.
///
/// Every abelian labelling factors through `Z^E / L`, with `L` spanned by the
/// signed vectors of `B`, so `B` is realisable iff no other cycle of `G` has
/// its vector in `L`. The quotient itself is then a witness.
pub fn abelian_labellable(
    catalog: &CycleCatalog,
    g: &SimpleGraph,
    b: &BiasSet,
    cap: usize,
) -> Result<LabellabilityDecision> {
    let ids = graph_cycles(catalog, g, cap)?;
    check_inside(b, catalog, g)?;
    let n = g.n;
    let positions = g.edge_indices();
    let m = positions.len();
    let vector = |id: CycleId| signed_vector(n, catalog.get(id)).restrict(&positions);
    let rows: Vec<Row> = b.ids().map(vector).collect();
    let hnf = Hnf::new(&rows, m);
    if let Some(c) = ids.iter().copied().filter(|&c| !b.contains(c)).find(|&c| hnf.contains(&vector(c))) {
        return Ok(LabellabilityDecision {
            labellable: false,
            witness: None,
            violating_cycle: Some(c),
            violating_sequence: Some(catalog.get(c).vertices().to_vec()),
        });
    }

    // Forest edges may be labelled by the identity without changing which
    // cycles balance, since no cycle vector meets the span of a forest.
    // Quotienting them out keeps the witness group small.
    let mut gens = rows;
    for k in spanning_forest(g, &positions) {
        let mut unit = vec![BigInt::zero(); m];
        unit[k] = BigInt::one();
        gens.push(unit);
    }
    let snf = Snf::new(&gens, m);
    let order = presentation_order(&snf.diagonal);
    let kept: Vec<usize> = order.into_iter().filter(|&j| !snf.diagonal[j].is_one()).collect();
    let group = AbelianGroup::new(kept.iter().map(|&j| snf.diagonal[j].clone()).collect())?;
    let mut labels = vec![None; edge_count(n)];
    for (k, &e) in positions.iter().enumerate() {
        // image of the k-th unit vector is row k of V
        labels[e] = Some(group.reduce(kept.iter().map(|&j| snf.v[k][j].clone()).collect()));
    }
    let witness = EdgeLabelling { graph: *g, group, labels };
    Ok(LabellabilityDecision {
        labellable: true,
        witness: Some(witness),
        violating_cycle: None,
        violating_sequence: None,
    })
}

/// Positions (into `positions`) of the edges of a spanning forest of `g`.
fn spanning_forest(g: &SimpleGraph, positions: &[usize]) -> Vec<usize> {
    let mut comp: Vec<usize> = (0..=g.n).collect();
    fn root(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    let table = edges(g.n);
    let mut out = Vec::new();
    for (k, &e) in positions.iter().enumerate() {
        let (a, b) = (root(&mut comp, table[e].u as usize), root(&mut comp, table[e].v as usize));
        if a != b {
            comp[a] = b;
            out.push(k);
        }
    }
    out
}

/// Coordinate order of an SNF quotient: free factors, then nontrivial
/// torsion, then trivial factors.
fn presentation_order(diagonal: &[BigInt]) -> Vec<usize> {
    let rank = |d: &BigInt| {
        if d.is_zero() {
            0
        } else if d.is_one() {
            2
        } else {
            1
        }
    };
    let mut order: Vec<usize> = (0..diagonal.len()).collect();
    order.sort_by_key(|&j| (rank(&diagonal[j]), j));
    order
}

/// Whether some `γ: E(G) → Γ` has balanced set exactly `B`, by trying all
/// `|Γ|^|E|` labellings.
pub fn brute_force_labellable(
    catalog: &CycleCatalog,
    g: &SimpleGraph,
    b: &BiasSet,
    group: &FiniteGroup,
    cap: u64,
) -> Result<bool> {
    let ids = graph_cycles(catalog, g, DEFAULT_CYCLE_CAP)?;
    check_inside(b, catalog, g)?;
    let positions = g.edge_indices();
    let m = positions.len();
    let q = group.order() as u64;
    let total = (0..m).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&t| t <= cap));
    let Some(total) = total else {
        let needed = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        return Err(Error::CapExceeded { what: "labellings", needed, cap: cap as u128 });
    };
    let local = |e: usize| positions.iter().position(|&p| p == e).expect("edge of G");
    // each cycle as (local edge, forward) steps, with its required status
    let walks: Vec<(Vec<(usize, bool)>, bool)> = ids
        .iter()
        .map(|&id| {
            let c = catalog.get(id);
            let steps = c.steps().map(|(a, x)| (local(edge_index(g.n, a, x)), x > a)).collect();
            (steps, b.contains(id))
        })
        .collect();
    let found = (0..total).into_par_iter().any(|mut code| {
        let mut labels = vec![0usize; m];
        for l in labels.iter_mut() {
            *l = (code % q) as usize;
            code /= q;
        }
        walks.iter().all(|(steps, member)| {
            let s = steps.iter().fold(group.identity(), |acc, &(e, fwd)| {
                let x = if fwd { labels[e] } else { group.inverse(&labels[e]) };
                group.op(&acc, &x)
            });
            group.is_identity(&s) == *member
        })
    });
    Ok(found)
}

/// Patterns `P_1..P_m` (`m = |E(G)|`) from the image of `γ` presented as
/// `Z^s ⊕ Z_{q_1} ⊕ ...` and padded with trivial factors.
#[derive(Clone, Debug, Serialize)]
pub struct PatternDecomposition {
    /// Modulus of each coordinate, `0` for `Z`.
    pub moduli: Vec<BigInt>,
    pub patterns: Vec<BiasSet>,
}

impl PatternDecomposition {
    pub fn union(&self, catalog: &CycleCatalog) -> BiasSet {
        let mut out = BiasSet::empty(catalog);
        for p in &self.patterns {
            for c in p.ids() {
                out.insert(c);
            }
        }
        out
    }
}

/// `P_i` holds the cycles whose image has a nonzero `i`-th coordinate, so
/// the union of the patterns is the set of unbalanced cycles.
pub fn abelian_pattern_decomposition(
    catalog: &CycleCatalog,
    l: &EdgeLabelling<AbelianGroup>,
    cap: usize,
) -> Result<PatternDecomposition> {
    let ids = graph_cycles(catalog, &l.graph, cap)?;
    let n = l.n();
    let positions = l.graph.edge_indices();
    let m = positions.len();
    let t = l.group.rank();
    // kernel of Z^m → Γ: rows z of [labels; diag(q)] with z M = 0, cut to Z^m
    let mut mat: Vec<Row> = positions.iter().map(|&e| l.label(e).expect("labelled").clone()).collect();
    for (j, q) in l.group.moduli.iter().enumerate() {
        if !q.is_zero() {
            let mut r = vec![BigInt::zero(); t];
            r[j] = q.clone();
            mat.push(r);
        }
    }
    let kernel: Vec<Row> = left_kernel(&mat, t)
        .into_iter()
        .map(|mut z| {
            z.truncate(m);
            z
        })
        .collect();
    let snf = Snf::new(&kernel, m);
    let order = presentation_order(&snf.diagonal);
    let mut patterns = vec![BiasSet::empty(catalog); m];
    for &id in &ids {
        let coords = snf.coordinates(&signed_vector(n, catalog.get(id)).restrict(&positions));
        for (i, &j) in order.iter().enumerate() {
            if !coords[j].is_zero() {
                patterns[i].insert(id);
            }
        }
    }
    let decomposition =
        PatternDecomposition { moduli: order.iter().map(|&j| snf.diagonal[j].clone()).collect(), patterns };
    let balanced = balanced_set(catalog, l, cap)?;
    let all = BiasSet::from_ids(catalog, ids);
    assert_eq!(
        decomposition.union(catalog),
        all.difference(&balanced),
        "patterns must cover exactly the unbalanced cycles"
    );
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::{is_biased_graph, rng_for};
    use crate::cycles::enumerate_cycles;

    fn graph_k(n: usize) -> SimpleGraph {
        SimpleGraph::complete(n)
    }

    #[test]
    fn identity_labelling_balances_everything() {
        let cat = enumerate_cycles(5).unwrap();
        let l = EdgeLabelling::identity(graph_k(5), AbelianGroup::from_moduli(&[0, 6]));
        assert_eq!(balanced_set(&cat, &l, DEFAULT_CYCLE_CAP).unwrap().len(), 37);
        let l = EdgeLabelling::identity(graph_k(5), FiniteGroup::symmetric(3));
        assert_eq!(balanced_set(&cat, &l, DEFAULT_CYCLE_CAP).unwrap().len(), 37);
    }

    #[test]
    fn triangle_sigma_sign_rule() {
        let (x, y, z) = (5i64, 11, 17);
        let g = AbelianGroup::from_moduli(&[0]);
        let l = EdgeLabelling::from_fn(graph_k(3), g.clone(), |e| match edges(3)[e] {
            e if (e.u, e.v) == (1, 2) => g.element(&[x]),
            e if (e.u, e.v) == (2, 3) => g.element(&[y]),
            _ => g.element(&[z]),
        });
        let cat = enumerate_cycles(3).unwrap();
        assert_eq!(l.sigma(cat.get(0)).unwrap(), g.element(&[x + y - z]));
    }

    #[test]
    fn unlabelled_edge_is_an_error() {
        let cat = enumerate_cycles(4).unwrap();
        let path = SimpleGraph { n: 4, edges: 0b000111 };
        let l = EdgeLabelling::identity(path, FiniteGroup::cyclic(2));
        let c = cat.get(cat.id_of_sequence(&[2, 3, 4]).unwrap());
        assert!(matches!(l.sigma(c), Err(Error::UnlabelledEdge(_))));
    }

    #[test]
    fn all_ones_over_z_balances_zero_sum_vectors() {
        let cat = enumerate_cycles(4).unwrap();
        let g = AbelianGroup::from_moduli(&[0]);
        let one = g.element(&[1]);
        let l = EdgeLabelling::from_fn(graph_k(4), g, |_| one.clone());
        let bal = balanced_set(&cat, &l, DEFAULT_CYCLE_CAP).unwrap();
        for id in cat.ids() {
            let sum: i64 = signed_vector(4, cat.get(id)).0.iter().map(|&x| x as i64).sum();
            assert_eq!(bal.contains(id), sum == 0, "{}", cat.get(id));
        }
    }

    fn rotations_and_reversals(seq: &[u8]) -> Vec<Vec<u8>> {
        let k = seq.len();
        let mut out = Vec::new();
        for r in 0..k {
            let rot: Vec<u8> = (0..k).map(|i| seq[(i + r) % k]).collect();
            let mut rev = rot.clone();
            rev.reverse();
            out.push(rot);
            out.push(rev);
        }
        out
    }

    #[test]
    fn balance_ignores_traversal_choice() {
        let cat = enumerate_cycles(5).unwrap();
        let s3 = FiniteGroup::symmetric(3);
        for trial in 0..50 {
            let l = EdgeLabelling::<FiniteGroup>::random(graph_k(5), s3.clone(), &mut rng_for(7, trial));
            for c in cat.cycles() {
                let base = l.is_balanced(c).unwrap();
                for seq in rotations_and_reversals(c.vertices()) {
                    assert_eq!(s3.is_identity(&l.sigma_along(&seq).unwrap()), base);
                }
            }
        }
    }

    #[test]
    fn labellings_obey_theta_property() {
        let groups =
            [AbelianGroup::from_moduli(&[2]), AbelianGroup::from_moduli(&[6]), AbelianGroup::from_moduli(&[0, 0])];
        let s3 = FiniteGroup::symmetric(3);
        for n in 3..=5 {
            let cat = enumerate_cycles(n).unwrap();
            for trial in 0..40u64 {
                let mut rng = rng_for(trial, n as u64);
                // odd trials use a random subgraph instead of K_n
                let full = SimpleGraph::complete(n).edges;
                let mask = if trial % 2 == 0 { full } else { rng.random::<u64>() & full };
                let g = SimpleGraph { n, edges: mask };
                for grp in &groups {
                    let l = EdgeLabelling::<AbelianGroup>::random(g, grp.clone(), &mut rng);
                    let b = balanced_set(&cat, &l, DEFAULT_CYCLE_CAP).unwrap();
                    assert!(is_biased_graph(&g, &b, &cat).unwrap());
                }
                let l = EdgeLabelling::<FiniteGroup>::random(g, s3.clone(), &mut rng);
                let b = balanced_set(&cat, &l, DEFAULT_CYCLE_CAP).unwrap();
                assert!(is_biased_graph(&g, &b, &cat).unwrap());
            }
        }
    }

    #[test]
    fn full_bias_gets_trivial_witness() {
        let cat = enumerate_cycles(5).unwrap();
        let d = abelian_labellable(&cat, &graph_k(5), &BiasSet::full(&cat), DEFAULT_CYCLE_CAP).unwrap();
        assert!(d.labellable);
        assert_eq!(d.witness.unwrap().group.rank(), 0);
    }

    #[test]
    fn round_trip_small() {
        let cat = enumerate_cycles(5).unwrap();
        let g = graph_k(5);
        for trial in 0..30 {
            let grp = AbelianGroup::from_moduli(&[[2, 6, 0, 4][trial % 4]]);
            let l0 = EdgeLabelling::<AbelianGroup>::random(g, grp, &mut rng_for(3, trial as u64));
            let b = balanced_set(&cat, &l0, DEFAULT_CYCLE_CAP).unwrap();
            let d = abelian_labellable(&cat, &g, &b, DEFAULT_CYCLE_CAP).unwrap();
            assert!(d.labellable);
            let w = d.witness.unwrap();
            assert_eq!(balanced_set(&cat, &w, DEFAULT_CYCLE_CAP).unwrap(), b);
        }
    }

    #[test]
    fn two_triangles_of_a_theta_are_not_labellable() {
        // in K_4, triangles 123 and 134 share edge 13; their theta partner is
        // the 4-cycle 1234, left out of B
        let cat = enumerate_cycles(4).unwrap();
        let g = graph_k(4);
        let b =
            BiasSet::from_ids(&cat, [cat.id_of_sequence(&[1, 2, 3]).unwrap(), cat.id_of_sequence(&[1, 3, 4]).unwrap()]);
        let d = abelian_labellable(&cat, &g, &b, DEFAULT_CYCLE_CAP).unwrap();
        assert!(!d.labellable);
        assert_eq!(d.violating_cycle, Some(cat.id_of_sequence(&[1, 2, 3, 4]).unwrap()));
        assert!(!brute_force_labellable(&cat, &g, &b, &FiniteGroup::cyclic(2), DEFAULT_BRUTE_FORCE_CAP).unwrap());
    }

    #[test]
    fn brute_force_agrees_with_decision_on_k4_over_z2() {
        // every bias of K_4 realised over Z_2 is found by the decision too
        let cat = enumerate_cycles(4).unwrap();
        let g = graph_k(4);
        let z2 = FiniteGroup::cyclic(2);
        for mask in 0u64..1 << cat.len() {
            let b = BiasSet::from_mask(4, cat.len(), mask);
            if brute_force_labellable(&cat, &g, &b, &z2, DEFAULT_BRUTE_FORCE_CAP).unwrap() {
                assert!(abelian_labellable(&cat, &g, &b, DEFAULT_CYCLE_CAP).unwrap().labellable);
            }
        }
        assert!(brute_force_labellable(&cat, &g, &BiasSet::full(&cat), &FiniteGroup::trivial(), 1).unwrap());
        assert!(matches!(
            brute_force_labellable(&cat, &g, &BiasSet::full(&cat), &z2, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn pattern_examples() {
        let cat = enumerate_cycles(5).unwrap();
        let g = graph_k(5);
        let id = EdgeLabelling::identity(g, AbelianGroup::from_moduli(&[0, 3]));
        let d = abelian_pattern_decomposition(&cat, &id, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(d.patterns.len(), 10);
        assert!(d.patterns.iter().all(BiasSet::is_empty));

        let z = AbelianGroup::from_moduli(&[0]);
        let l = EdgeLabelling::<AbelianGroup>::random(g, z, &mut rng_for(11, 0));
        let d = abelian_pattern_decomposition(&cat, &l, DEFAULT_CYCLE_CAP).unwrap();
        let unbalanced = BiasSet::full(&cat).difference(&balanced_set(&cat, &l, DEFAULT_CYCLE_CAP).unwrap());
        assert_eq!(d.patterns[0], unbalanced);
        assert!(d.patterns[1..].iter().all(BiasSet::is_empty));
    }

    #[test]
    fn labelling_record_round_trip() {
        let g = graph_k(4);
        let l = EdgeLabelling::<AbelianGroup>::random(g, AbelianGroup::from_moduli(&[0, 5]), &mut rng_for(1, 1));
        let back = EdgeLabelling::from_record(&l.to_record()).unwrap();
        assert_eq!(back, l);
    }
}
