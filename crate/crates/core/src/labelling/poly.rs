//! Cycle polynomials and exhaustive zero-pattern enumeration over prime
//! fields.

use std::collections::HashSet;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bias::SimpleGraph;
use crate::cycles::{edge_count, edge_index, Cycle, CycleCatalog, CycleId};
use crate::error::{Error, Result};
use crate::interval::binomial;

/// Default cap on `q^N`.
pub const DEFAULT_WITNESS_CAP: u64 = 100_000_000;

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn constant(&self, x: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// `F_p` with `p < 2^32`, elements in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn constant(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn constant(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// `coeff * ∏ X_v` over the multiset `vars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polynomial {
    pub num_vars: usize,
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(num_vars: usize, terms: Vec<Term>) -> Result<Self> {
        if let Some(&v) = terms.iter().flat_map(|t| &t.vars).find(|&&v| v >= num_vars) {
            return Err(Error::MissingVariable(v));
        }
        let terms = terms
            .into_iter()
            .map(|mut t| {
                t.vars.sort_unstable();
                t
            })
            .collect();
        Ok(Polynomial { num_vars, terms })
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().filter(|t| t.coeff != 0).map(|t| t.vars.len()).max().unwrap_or(0)
    }

    /// Evaluates at `point`; every variable used needs a value.
    pub fn evaluate<F: Field>(&self, field: &F, point: &[Option<F::Elem>]) -> Result<F::Elem> {
        let mut acc = field.constant(0);
        for t in &self.terms {
            let mut m = field.constant(t.coeff);
            for &v in &t.vars {
                let x = point.get(v).and_then(Option::as_ref).ok_or(Error::MissingVariable(v))?;
                m = field.mul(&m, x);
            }
            acc = field.add(&acc, &m);
        }
        Ok(acc)
    }

    /// Same as `evaluate` with every variable given.
    pub fn evaluate_at<F: Field>(&self, field: &F, point: &[F::Elem]) -> Result<F::Elem> {
        let full: Vec<Option<F::Elem>> = point.iter().cloned().map(Some).collect();
        self.evaluate(field, &full)
    }

    fn rename(&self, num_vars: usize, map: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut vars: Vec<usize> = t.vars.iter().map(|&v| map[v]).collect();
                vars.sort_unstable();
                Term { coeff: t.coeff, vars }
            })
            .collect();
        Polynomial { num_vars, terms }
    }
}

/// `f_C = ∏_{descents} X_e − ∏_{ascents} X_e` over the canonical traversal,
/// in the `K_n` edge variables.
pub fn cycle_polynomial(n: usize, c: &Cycle) -> Polynomial {
    let mut down = Vec::new();
    let mut up = Vec::new();
    for (a, b) in c.steps() {
        let e = edge_index(n, a, b);
        if b > a {
            up.push(e);
        } else {
            down.push(e);
        }
    }
    Polynomial::new(edge_count(n), vec![Term { coeff: 1, vars: down }, Term { coeff: -1, vars: up }])
        .expect("edge variables in range")
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroPatternSystem {
    pub num_vars: usize,
    pub polys: Vec<Polynomial>,
    /// Largest degree among the polynomials.
    pub max_degree: usize,
    /// Source cycle of each polynomial, when built from a graph.
    pub cycles: Option<Vec<CycleId>>,
}

impl ZeroPatternSystem {
    pub fn new(num_vars: usize, polys: Vec<Polynomial>) -> Result<Self> {
        if polys.iter().any(|p| p.num_vars != num_vars) {
            return Err(Error::InvalidParameter("polynomials disagree on the variable count".into()));
        }
        let max_degree = polys.iter().map(Polynomial::degree).max().unwrap_or(0);
        Ok(ZeroPatternSystem { num_vars, polys, max_degree, cycles: None })
    }

    /// All `f_C` for the cycles of `g`, with one variable per edge of `g`.
    pub fn for_graph(catalog: &CycleCatalog, g: &SimpleGraph) -> Self {
        let positions = g.edge_indices();
        let mut map = vec![usize::MAX; edge_count(g.n)];
        for (k, &e) in positions.iter().enumerate() {
            map[e] = k;
        }
        let ids: Vec<CycleId> = catalog.ids_within(g.edges).collect();
        let polys =
            ids.iter().map(|&id| cycle_polynomial(g.n, catalog.get(id)).rename(positions.len(), &map)).collect();
        let mut s = Self::new(positions.len(), polys).expect("same variable count");
        s.cycles = Some(ids);
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroPatternReport {
    pub field: String,
    pub num_vars: usize,
    pub num_polys: usize,
    pub max_degree: usize,
    pub witnesses: u64,
    pub pattern_count: usize,
    /// Each pattern lists the (0-based) polynomials that do not vanish.
    pub patterns: Vec<Vec<usize>>,
    /// `binom(MD, N)`.
    pub stated_bound: String,
    /// `binom(MD + N, N)`.
    pub comparison_bound: String,
    pub within_stated_bound: bool,
    pub within_comparison_bound: bool,
}

/// Every zero-pattern of `system` over `F_q`, by trying all `q^N` witnesses.
pub fn zero_patterns(system: &ZeroPatternSystem, q: u64, cap: u64) -> Result<ZeroPatternReport> {
    let field = PrimeField::new(q)?;
    let nv = system.num_vars;
    let m = system.polys.len();
    if m > 128 {
        return Err(Error::InvalidParameter(format!("{m} polynomials; at most 128 supported")));
    }
    let total = (0..nv).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&t| t <= cap));
    let Some(total) = total else {
        let needed = (q as u128).checked_pow(nv as u32).unwrap_or(u128::MAX);
        return Err(Error::CapExceeded { what: "zero-pattern witnesses", needed, cap: cap as u128 });
    };
    let terms: Vec<Vec<(u64, &[usize])>> = system
        .polys
        .iter()
        .map(|p| p.terms.iter().map(|t| (field.constant(t.coeff), t.vars.as_slice())).collect())
        .collect();
    let pattern_of = |w: &[u64]| -> u128 {
        let mut mask = 0u128;
        for (i, poly) in terms.iter().enumerate() {
            let v = poly.iter().fold(0u64, |acc, &(c, vars)| (acc + vars.iter().fold(c, |m, &x| m * w[x] % q)) % q);
            if v != 0 {
                mask |= 1 << i;
            }
        }
        mask
    };
    const BLOCK: u64 = 1 << 14;
    let blocks = total.div_ceil(BLOCK);
    let found: HashSet<u128> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            let mut w = vec![0u64; nv];
            let mut code = start;
            for x in w.iter_mut() {
                *x = code % q;
                code /= q;
            }
            let mut local = HashSet::new();
            for _ in start..end {
                local.insert(pattern_of(&w));
                for x in w.iter_mut() {
                    *x += 1;
                    if *x < q {
                        break;
                    }
                    *x = 0;
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut masks: Vec<u128> = found.into_iter().collect();
    masks.sort_unstable_by_key(|&mk| (mk.count_ones(), mk.reverse_bits()));
    let patterns: Vec<Vec<usize>> = masks.iter().map(|&mk| (0..m).filter(|&i| mk >> i & 1 == 1).collect()).collect();
    let md = BigUint::from((m * system.max_degree) as u64);
    let stated = binomial(&md, nv as u64);
    let comparison = binomial(&(md + BigUint::from(nv)), nv as u64);
    let count = BigUint::from(patterns.len());
    Ok(ZeroPatternReport {
        field: format!("F_{q}"),
        num_vars: nv,
        num_polys: m,
        max_degree: system.max_degree,
        witnesses: total,
        pattern_count: patterns.len(),
        patterns,
        within_stated_bound: count <= stated,
        within_comparison_bound: count <= comparison,
        stated_bound: stated.to_string(),
        comparison_bound: comparison.to_string(),
    })
}
