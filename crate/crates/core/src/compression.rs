//! Compression of biased cliques to scarce ones, and its inverse.
//!
//! For every theta triple `(c1, c2, c3)` (ids increasing) fully inside a
//! biased clique `B`, compression removes `c1` and `c3`. The shortest cycle of
//! a theta in `K_n` has length at most `2(n+1)/3`, so `c1` is always a short
//! cycle. Given the compressed set and `B`'s short cycles, `B` is recovered by
//! a single pass in id order.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bias::{is_biased_clique, is_scarce, BiasSet};
use crate::cycles::CycleId;
use crate::error::{Error, Result};
use crate::interval::factorial;
use crate::overlap::OverlapGraph;

#[derive(Clone, Debug)]
pub struct CompressionScheme {
    n: usize,
    threshold: usize,
    short_set: BiasSet,
    triples: Vec<(CycleId, CycleId, CycleId)>,
    by_largest: Vec<Vec<(CycleId, CycleId)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeSummary {
    pub n: usize,
    /// Short cycles are those of length at most this.
    pub threshold: usize,
    pub r: usize,
    /// `(n-1)! n^2 / (6 floor(n/3)!)` as an exact fraction.
    pub r_bound: String,
    pub r_within_bound: bool,
    pub triple_count: usize,
    pub every_triple_starts_short: bool,
}

impl CompressionScheme {
    pub fn build(omega: &OverlapGraph) -> Self {
        let n = omega.n();
        let threshold = 2 * (n + 1) / 3;
        let cat = omega.catalog();
        let short_set = BiasSet::from_ids(cat, cat.ids().filter(|&c| cat.get(c).len() <= threshold));
        let triples: Vec<_> = omega.theta_triples().collect();
        let mut by_largest = vec![Vec::new(); cat.len()];
        for &(a, b, c) in &triples {
            by_largest[c as usize].push((a, b));
        }
        CompressionScheme { n, threshold, short_set, triples, by_largest }
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn short_set(&self) -> &BiasSet {
        &self.short_set
    }

    pub fn r(&self) -> usize {
        self.short_set.len()
    }

    pub fn triples(&self) -> &[(CycleId, CycleId, CycleId)] {
        &self.triples
    }

    /// `(n-1)! n^2 / (6 floor(n/3)!)`.
    pub fn r_bound(&self) -> BigRational {
        let n = self.n as u64;
        BigRational::new(
            BigInt::from(factorial(n.saturating_sub(1))) * BigInt::from(n * n),
            BigInt::from(factorial(n / 3)) * BigInt::from(6),
        )
    }

    pub fn summary(&self) -> SchemeSummary {
        let bound = self.r_bound();
        SchemeSummary {
            n: self.n,
            threshold: self.threshold,
            r: self.r(),
            r_bound: format!("{}/{}", bound.numer(), bound.denom()),
            r_within_bound: BigRational::from_integer(self.r().into()) <= bound,
            triple_count: self.triples.len(),
            every_triple_starts_short: self.triples.iter().all(|&(a, _, _)| self.short_set.contains(a)),
        }
    }
}

/// Removes the first and last cycle of every theta triple inside `b`.
pub fn compress(b: &BiasSet, scheme: &CompressionScheme, omega: &OverlapGraph) -> Result<BiasSet> {
    if !is_biased_clique(b, omega) {
        return Err(Error::NotBiasedClique);
    }
    let mut out = b.clone();
    for &(c1, c2, c3) in &scheme.triples {
        if b.contains(c1) && b.contains(c2) && b.contains(c3) {
            out.remove(c1);
            out.remove(c3);
        }
    }
    assert!(is_scarce(&out, omega), "compressed set must be scarce");
    Ok(out)
}

/// The unique biased clique `B` with `compress(B) = compressed` and
/// `B ∩ C' = short`, if there is one.
pub fn reconstruct(
    compressed: &BiasSet,
    short: &BiasSet,
    scheme: &CompressionScheme,
    omega: &OverlapGraph,
) -> Option<BiasSet> {
    let cat = omega.catalog();
    if !short.is_subset(&scheme.short_set) {
        return None;
    }
    let mut b = BiasSet::empty(cat);
    for c in cat.ids() {
        let member = if scheme.short_set.contains(c) {
            short.contains(c)
        } else {
            compressed.contains(c)
                || scheme.by_largest[c as usize].iter().any(|&(c1, c2)| b.contains(c1) && b.contains(c2))
        };
        if member {
            b.insert(c);
        }
    }
    if !is_biased_clique(&b, omega) {
        return None;
    }
    let recompressed = compress(&b, scheme, omega).ok()?;
    (recompressed == *compressed).then_some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::BuildMethod;

    fn setup(n: usize) -> (OverlapGraph, CompressionScheme) {
        let g = OverlapGraph::build(n, BuildMethod::Pairwise).unwrap();
        let s = CompressionScheme::build(&g);
        (g, s)
    }

    #[test]
    fn scheme_sizes() {
        let (g, s) = setup(4);
        assert_eq!(s.threshold(), 3);
        assert_eq!(s.r(), 4);
        assert_eq!(s.short_set(), &BiasSet::from_ids(g.catalog(), g.catalog().ids_of_length(3)));
        let (_, s6) = setup(6);
        assert_eq!(s6.threshold(), 4);
        assert_eq!(s6.r(), 65);
        for n in 3..=7 {
            let summary = setup(n).1.summary();
            assert!(summary.every_triple_starts_short, "n = {n}");
            assert!(summary.r_within_bound, "n = {n}");
        }
    }

    #[test]
    fn compress_examples() {
        let (g, s) = setup(5);
        let cat = g.catalog();
        assert!(compress(&BiasSet::empty(cat), &s, &g).unwrap().is_empty());
        let h = BiasSet::hamilton(cat);
        assert_eq!(compress(&h, &s, &g).unwrap(), h);
        let bad =
            BiasSet::from_ids(cat, [cat.id_of_sequence(&[1, 2, 3]).unwrap(), cat.id_of_sequence(&[1, 2, 4]).unwrap()]);
        assert!(matches!(compress(&bad, &s, &g), Err(Error::NotBiasedClique)));
    }

    #[test]
    fn compress_full_k4_by_hand() {
        let (g, s) = setup(4);
        let cat = g.catalog();
        let full = BiasSet::full(cat);
        // every triple of K4 lies inside the full set; remove its first and
        // last members by a direct scan
        let mut expected = full.clone();
        for a in cat.ids() {
            for b in cat.ids().filter(|&b| b > a) {
                for c in cat.ids().filter(|&c| c > b) {
                    let (ea, eb, ec) = (cat.get(a).edge_mask(), cat.get(b).edge_mask(), cat.get(c).edge_mask());
                    if ea ^ eb == ec && g.is_adjacent(a, b) {
                        expected.remove(a);
                        expected.remove(c);
                    }
                }
            }
        }
        let out = compress(&full, &s, &g).unwrap();
        assert_eq!(out, expected);
        assert!(is_scarce(&out, &g));
    }

    #[test]
    fn reconstruct_examples() {
        let (g, s) = setup(5);
        let cat = g.catalog();
        let h = BiasSet::hamilton(cat);
        assert_eq!(reconstruct(&h, &BiasSet::empty(cat), &s, &g), Some(h));
        let tri = BiasSet::from_ids(cat, [cat.id_of_sequence(&[1, 2, 3]).unwrap()]);
        // a lone triangle is its own compression
        assert_eq!(reconstruct(&tri, &tri, &s, &g), Some(tri.clone()));
        assert_eq!(reconstruct(&BiasSet::empty(cat), &tri, &s, &g), None);
        // short cycles outside C' are rejected
        let long = BiasSet::from_ids(cat, [cat.ids_of_length(5).start]);
        assert_eq!(reconstruct(&BiasSet::empty(cat), &long, &s, &g), None);
    }
}
