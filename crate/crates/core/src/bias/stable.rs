//! Exact maximum stable sets of the overlap graph.
//!
//! Branch and bound in the style of MCQ run on the complement: a stable set
//! of the overlap graph is a clique of its complement, and a greedy
//! partition of the candidates into overlap-graph cliques bounds how many of
//! them a stable set can still take.

use serde::Serialize;

use crate::cycles::CycleId;
use crate::overlap::OverlapGraph;

pub const DEFAULT_OPTIMA_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StableMode {
    SizeOnly,
    OneWitness,
    AllOptima { cap: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct StableSetResult {
    pub size: usize,
    /// Optimal sets as sorted id lists; empty in `SizeOnly` mode.
    pub witnesses: Vec<Vec<CycleId>>,
    /// Number of optima, when all were enumerated within the cap.
    pub optimum_count: Option<usize>,
    pub cap_exceeded: bool,
}

type Bits = Vec<u64>;

fn bits_new(len: usize) -> Bits {
    vec![0; len.div_ceil(64)]
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn is_clear(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn first(b: &Bits) -> Option<usize> {
    b.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn and_not_assign(a: &mut Bits, b: &Bits) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= !y;
    }
}

struct Search {
    /// `comp[i]`: positions not adjacent to `i` in the overlap graph.
    comp: Vec<Bits>,
    /// position -> catalog id
    ids: Vec<CycleId>,
    best: Vec<usize>,
    target: Option<usize>,
    found: Vec<Vec<usize>>,
    cap: usize,
    cap_exceeded: bool,
}

impl Search {
    /// Candidates in colour order with their colour numbers. Each colour
    /// class is a clique of the overlap graph.
    fn colour(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut order = Vec::new();
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !is_clear(&uncoloured) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first(&q) {
                clear(&mut q, v);
                clear(&mut uncoloured, v);
                and_not_assign(&mut q, &self.comp[v]);
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut p: Bits) {
        let order = self.colour(&p);
        for &(v, colour) in order.iter().rev() {
            if self.cap_exceeded {
                return;
            }
            match self.target {
                None if current.len() + colour <= self.best.len() => return,
                Some(t) if current.len() + colour < t => return,
                _ => {}
            }
            current.push(v);
            let np = and(&p, &self.comp[v]);
            match self.target {
                Some(t) if current.len() == t => {
                    if self.found.len() >= self.cap {
                        self.cap_exceeded = true;
                    } else {
                        self.found.push(current.clone());
                    }
                }
                _ if is_clear(&np) => {
                    if self.target.is_none() && current.len() > self.best.len() {
                        self.best = current.clone();
                    }
                }
                _ => self.expand(current, np),
            }
            current.pop();
            clear(&mut p, v);
        }
    }

    fn to_ids(&self, set: &[usize]) -> Vec<CycleId> {
        let mut out: Vec<CycleId> = set.iter().map(|&i| self.ids[i]).collect();
        out.sort_unstable();
        out
    }
}

pub fn max_stable_set(omega: &OverlapGraph, mode: StableMode) -> StableSetResult {
    let v = omega.vertex_count();
    if v == 0 {
        return StableSetResult { size: 0, witnesses: vec![vec![]], optimum_count: Some(1), cap_exceeded: false };
    }
    // complement-degree descending, ties by id
    let mut ids: Vec<CycleId> = omega.catalog().ids().collect();
    ids.sort_by_key(|&i| (omega.degree(i), i));
    let mut pos = vec![0usize; v];
    for (p, &id) in ids.iter().enumerate() {
        pos[id as usize] = p;
    }
    let comp: Vec<Bits> = ids
        .iter()
        .enumerate()
        .map(|(p, &id)| {
            let mut b = bits_new(v);
            for q in 0..v {
                if q != p {
                    set(&mut b, q);
                }
            }
            for &d in omega.neighbors(id) {
                clear(&mut b, pos[d as usize]);
            }
            b
        })
        .collect();
    let mut all = bits_new(v);
    for i in 0..v {
        set(&mut all, i);
    }
    let mut search =
        Search { comp, ids, best: Vec::new(), target: None, found: Vec::new(), cap: 0, cap_exceeded: false };
    search.expand(&mut Vec::new(), all.clone());
    let size = search.best.len();
    match mode {
        StableMode::SizeOnly => StableSetResult { size, witnesses: vec![], optimum_count: None, cap_exceeded: false },
        StableMode::OneWitness => {
            let w = search.to_ids(&search.best);
            StableSetResult { size, witnesses: vec![w], optimum_count: None, cap_exceeded: false }
        }
        StableMode::AllOptima { cap } => {
            search.target = Some(size);
            search.cap = cap;
            search.expand(&mut Vec::new(), all);
            let mut witnesses: Vec<Vec<CycleId>> = search.found.iter().map(|s| search.to_ids(s)).collect();
            witnesses.sort();
            let exceeded = search.cap_exceeded;
            StableSetResult {
                size,
                optimum_count: (!exceeded).then_some(witnesses.len()),
                witnesses,
                cap_exceeded: exceeded,
            }
        }
    }
}
