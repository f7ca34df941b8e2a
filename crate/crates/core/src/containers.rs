//! Fingerprint/container iteration over the overlap graph.
//!
//! Starting from `(S, A) = (∅, V(Ω))`, each step takes the pivot of maximum
//! degree in `Ω[A]` (ties to the smallest id). While `|A| > a`: a pivot in
//! `K` joins `S` and its neighbours leave `A`; any other pivot leaves `A`.
//! The final `S` is the fingerprint and the final `A` the container.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bias::BiasSet;
use crate::cycles::CycleId;
use crate::error::{Error, Result};
use crate::interval::{factorial, Interval};
use crate::overlap::OverlapGraph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ContainerOverrides {
    pub s: Option<f64>,
    pub a: Option<f64>,
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainerParams {
    pub n: usize,
    /// `2 sqrt(log2 n / n)`
    pub alpha: Interval,
    /// `4 (n-1)! / sqrt(n log2 n)`
    pub s: Interval,
    /// `(1 + 2 sqrt(log2 n / n)) (n-1)! / 2`
    pub a: Interval,
    /// `|A| > a` holds exactly when `|A| > a_floor`.
    pub a_floor: u64,
    pub overrides: ContainerOverrides,
}

fn exact_f64(v: f64) -> Result<Interval> {
    BigRational::from_f64(v)
        .map(Interval::exact)
        .ok_or_else(|| Error::InvalidParameter(format!("{v} is not a finite number")))
}

impl ContainerParams {
    pub fn new(n: usize, overrides: ContainerOverrides) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("container parameters need n >= 3, got {n}")));
        }
        let nn = Interval::from_int(n as u64);
        let log_n = nn.log2();
        let root = log_n.div(&nn).sqrt();
        let fm1 = Interval::from_int(BigInt::from(factorial(n as u64 - 1)));
        let alpha = match overrides.alpha {
            Some(v) => exact_f64(v)?,
            None => root.scale(&BigRational::from_integer(2.into())),
        };
        let s = match overrides.s {
            Some(v) => exact_f64(v)?,
            None => fm1.scale(&BigRational::from_integer(4.into())).div(&nn.mul(&log_n).sqrt()),
        };
        let a = match overrides.a {
            Some(v) => exact_f64(v)?,
            None => Interval::from_int(1)
                .add(&root.scale(&BigRational::from_integer(2.into())))
                .mul(&fm1)
                .scale(&BigRational::new(1.into(), 2.into())),
        };
        if a.lo() < &BigRational::from_integer(0.into()) {
            return Err(Error::InvalidParameter("a must be non-negative".into()));
        }
        let a_floor = a
            .floor_exact()
            .and_then(|f| f.to_u64())
            .ok_or_else(|| Error::InvalidParameter("threshold a could not be resolved to an integer floor".into()))?;
        Ok(ContainerParams { n, alpha, s, a, a_floor, overrides })
    }

    pub fn standard(n: usize) -> Result<Self> {
        Self::new(n, ContainerOverrides::default())
    }

    pub fn with_a(n: usize, a: f64) -> Result<Self> {
        Self::new(n, ContainerOverrides { a: Some(a), ..Default::default() })
    }

    fn above_threshold(&self, size: usize) -> bool {
        size as u64 > self.a_floor
    }
}

/// Member of `a` with the most neighbours inside `a`; ties to the smallest id.
pub fn select_pivot(a: &BiasSet, omega: &OverlapGraph) -> Result<CycleId> {
    a.ids()
        .map(|c| (omega.neighbors(c).iter().filter(|&&d| a.contains(d)).count(), c))
        .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
        .map(|(_, c)| c)
        .ok_or(Error::EmptySet)
}

/// One application of the step function, computed from scratch.
pub fn container_step(
    s: &BiasSet,
    a: &BiasSet,
    k: &BiasSet,
    params: &ContainerParams,
    omega: &OverlapGraph,
) -> (BiasSet, BiasSet) {
    if !params.above_threshold(a.len()) {
        return (s.clone(), a.clone());
    }
    let pivot = select_pivot(a, omega).expect("|A| > a >= 0 so A is nonempty");
    let mut s2 = s.clone();
    let mut a2 = a.clone();
    if k.contains(pivot) {
        s2.insert(pivot);
        for &d in omega.neighbors(pivot) {
            a2.remove(d);
        }
    } else {
        a2.remove(pivot);
    }
    (s2, a2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Pivot in `K`: added to the fingerprint, its neighbours dropped.
    Fingerprint,
    /// Pivot not in `K`: dropped from `A`.
    Discard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// `|A| <= a`.
    BelowThreshold,
    /// A fingerprint pivot had no neighbours left in `A`, so the step changes
    /// nothing even though `|A| > a`.
    Stalled,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub pivot: CycleId,
    pub kind: StepKind,
    pub removed: usize,
}

#[derive(Clone, Debug)]
pub struct ContainerTrace {
    pub steps: Vec<StepRecord>,
    /// `|A_i|` for `i = 0..=i0`.
    pub a_sizes: Vec<usize>,
    /// `(S_i, A_i)` for `i = 0..=i0`, when requested.
    pub snapshots: Option<Vec<(BiasSet, BiasSet)>>,
    pub fingerprint: BiasSet,
    pub container: BiasSet,
    pub stop: StopReason,
}

impl ContainerTrace {
    /// Index of the first fixed point.
    pub fn i0(&self) -> usize {
        self.steps.len()
    }

    /// The threshold already held at step 0, so nothing was computed.
    pub fn trivial(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn summary(&self, params: &ContainerParams) -> ContainerSummary {
        ContainerSummary {
            n: params.n,
            i0: self.i0(),
            fingerprint_size: self.fingerprint.len(),
            container_size: self.container.len(),
            a_sizes: self.a_sizes.clone(),
            a_threshold: params.a.clone(),
            s_bound: params.s.clone(),
            trivial: self.trivial(),
            stop: self.stop,
            fingerprint: self.fingerprint.ids().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainerSummary {
    pub n: usize,
    pub i0: usize,
    pub fingerprint_size: usize,
    pub container_size: usize,
    pub a_sizes: Vec<usize>,
    pub a_threshold: Interval,
    pub s_bound: Interval,
    pub trivial: bool,
    pub stop: StopReason,
    pub fingerprint: Vec<CycleId>,
}

/// Iterates the step function with `K = k` from `(∅, V(Ω))` to its fixed point.
/// Degrees inside `A` are maintained incrementally.
pub fn run_containers(
    k: &BiasSet,
    omega: &OverlapGraph,
    params: &ContainerParams,
    keep_snapshots: bool,
) -> ContainerTrace {
    let cat = omega.catalog();
    let mut s = BiasSet::empty(cat);
    let mut a = BiasSet::full(cat);
    let mut deg: Vec<usize> = cat.ids().map(|c| omega.degree(c)).collect();
    let mut steps = Vec::new();
    let mut a_sizes = vec![a.len()];
    let mut snapshots = keep_snapshots.then(|| vec![(s.clone(), a.clone())]);
    let mut size = a.len();

    let remove_from_a = |a: &mut BiasSet, deg: &mut Vec<usize>, c: CycleId| {
        a.remove(c);
        for &d in omega.neighbors(c) {
            if a.contains(d) {
                deg[d as usize] -= 1;
            }
        }
    };

    let stop = loop {
        if !params.above_threshold(size) {
            break StopReason::BelowThreshold;
        }
        let pivot = a.ids().max_by(|&x, &y| deg[x as usize].cmp(&deg[y as usize]).then(y.cmp(&x))).expect("nonempty");
        let record = if k.contains(pivot) {
            if s.contains(pivot) && deg[pivot as usize] == 0 {
                break StopReason::Stalled;
            }
            s.insert(pivot);
            let gone: Vec<CycleId> = omega.neighbors(pivot).iter().copied().filter(|&d| a.contains(d)).collect();
            for &d in &gone {
                remove_from_a(&mut a, &mut deg, d);
            }
            StepRecord { pivot, kind: StepKind::Fingerprint, removed: gone.len() }
        } else {
            remove_from_a(&mut a, &mut deg, pivot);
            StepRecord { pivot, kind: StepKind::Discard, removed: 1 }
        };
        size -= record.removed;
        steps.push(record);
        a_sizes.push(size);
        if let Some(snaps) = snapshots.as_mut() {
            snaps.push((s.clone(), a.clone()));
        }
    };
    ContainerTrace { steps, a_sizes, snapshots, fingerprint: s, container: a, stop }
}
