use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Group {
    type Elem: Clone + Eq + Debug;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

/// `Z^s ⊕ Z_{q_1} ⊕ ...` given by one modulus per coordinate; `0` is `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub moduli: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<BigInt>) -> Result<Self> {
        if moduli.iter().any(|q| q.is_negative()) {
            return Err(Error::InvalidGroup("moduli must be non-negative".into()));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn from_moduli(moduli: &[u64]) -> Self {
        AbelianGroup { moduli: moduli.iter().map(|&q| BigInt::from(q)).collect() }
    }

    pub fn trivial() -> Self {
        AbelianGroup { moduli: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn reduce(&self, mut x: Vec<BigInt>) -> Vec<BigInt> {
        for (v, q) in x.iter_mut().zip(&self.moduli) {
            if !q.is_zero() {
                *v = v.mod_floor(q);
            }
        }
        x
    }

    pub fn element(&self, coords: &[i64]) -> Vec<BigInt> {
        self.reduce(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Uniform on finite factors; `Z` factors draw from `[-3, 3]`.
    pub fn random_element(&self, rng: &mut impl Rng) -> Vec<BigInt> {
        self.moduli
            .iter()
            .map(|q| match u64::try_from(q) {
                Ok(0) => BigInt::from(rng.random_range(-3i64..=3)),
                Ok(q) => BigInt::from(rng.random_range(0..q)),
                Err(_) => BigInt::zero(),
            })
            .collect()
    }

    /// `sum_e coeff_e * labels_e`, reduced.
    pub fn combine(&self, coeffs: &[i64], labels: &[&Vec<BigInt>]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.rank()];
        for (&c, l) in coeffs.iter().zip(labels) {
            if c != 0 {
                for (a, x) in acc.iter_mut().zip(l.iter()) {
                    *a += x * c;
                }
            }
        }
        self.reduce(acc)
    }
}

impl Group for AbelianGroup {
    type Elem = Vec<BigInt>;

    fn identity(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    fn op(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn inverse(&self, a: &Vec<BigInt>) -> Vec<BigInt> {
        self.reduce(a.iter().map(|x| -x).collect())
    }
}

/// A finite group from its Cayley table; elements are indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "CayleyTable")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Deserialize)]
struct CayleyTable {
    table: Vec<Vec<usize>>,
}

impl TryFrom<CayleyTable> for FiniteGroup {
    type Error = Error;
    fn try_from(t: CayleyTable) -> Result<Self> {
        FiniteGroup::from_table(t.table)
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity, and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 || table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(Error::InvalidGroup("Cayley table must be square with entries below the order".into()));
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { table, identity, inverses })
    }

    pub fn cyclic(q: usize) -> Self {
        let table = (0..q).map(|a| (0..q).map(|b| (a + b) % q).collect()).collect();
        Self::from_table(table).expect("cyclic group table")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Permutations of `{0, .., k-1}` under composition, in lexicographic order.
    pub fn symmetric(k: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            perms.push(cur.clone());
            // next permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        // (p ∘ q)(x) = p(q(x))
                        let r: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                        index(&r)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("symmetric group table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiniteGroup", 1)?;
        st.serialize_field("table", &self.table)?;
        st.end()
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inverses[*a]
    }
}
