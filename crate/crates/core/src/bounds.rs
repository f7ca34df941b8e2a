//! Exponents of the counting bounds, in exact rationals where possible and
//! outward-rounded intervals where a square root or logarithm appears.
//! All logarithms are binary.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{factorial, Interval};

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    /// `½ (n-1)!`: at least `2^this` biased cliques.
    pub lower_exponent: String,
    /// `½ (n-1)! (1 + 12 √(log n / n))`.
    pub main_upper_exponent: Interval,
    /// `½ (n-1)! (1 + 10 √(log n / n))`, stated for `n ≥ 12`.
    pub scarce_exponent: Interval,
    /// `½ (n-1)! (1 + 11 √(log n / n))`, stated for `n ≥ 18`.
    pub clique_exponent: Interval,
    /// `(n-1)! n² / (6 ⌊n/3⌋!)`.
    pub compression_term: String,
    /// `n² / (6 ⌊n/3⌋!)`.
    pub compression_ratio: String,
    /// `½ √(log n / n)`.
    pub half_root_term: Interval,
    /// `2 n! + 1`; the abelian bound is this to the power `C(n,2)²`.
    pub abelian_base: String,
    pub abelian_power: String,
    /// `C(n,2)² log(2 n! + 1)`.
    pub abelian_log2: Interval,
    /// `¼ n⁵ log n`.
    pub abelian_exponent_simple: Interval,
    pub checks: BoundsChecks,
}

/// `Some(true)` when the inequality certainly holds, `Some(false)` when it
/// certainly fails, `None` when the enclosures overlap.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsChecks {
    pub lower_le_main_upper: Option<bool>,
    /// `log 9 < main_upper_exponent`; only reported for `n = 3`.
    pub nine_below_main_upper: Option<bool>,
    pub compression_ratio_le_half_root: Option<bool>,
    pub abelian_base_le_n_pow_n: bool,
    pub abelian_within_simple: Option<bool>,
    /// `½ (n-1)! > ¼ n⁵ log n`.
    pub lower_exceeds_abelian_simple: Option<bool>,
}

fn le(a: &Interval, b: &Interval) -> Option<bool> {
    if a.certainly_le(b) {
        Some(true)
    } else if b.certainly_lt(a) {
        Some(false)
    } else {
        None
    }
}

fn lt(a: &Interval, b: &Interval) -> Option<bool> {
    if a.certainly_lt(b) {
        Some(true)
    } else if b.certainly_le(a) {
        Some(false)
    } else {
        None
    }
}

fn ratio_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `½ (n-1)! (1 + c √(log n / n))`.
fn upper_exponent(half_fact: &BigRational, root: &Interval, c: i64) -> Interval {
    Interval::from_int(1).add(&root.scale(&int(c))).scale(half_fact)
}

pub fn bounds_report(n: u64) -> Result<BoundsReport> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("bounds need n >= 3, got {n}")));
    }
    let fact_n1 = BigInt::from(factorial(n - 1));
    let half_fact = BigRational::new(fact_n1.clone(), 2.into());
    let log_n = Interval::log2_of(&int(n));
    let root = log_n.div(&Interval::from_int(n)).sqrt();

    let main = upper_exponent(&half_fact, &root, 12);
    let lower = Interval::exact(half_fact.clone());

    let ratio = BigRational::new(BigInt::from(n * n), BigInt::from(factorial(n / 3)) * 6);
    let compression = &ratio * int(fact_n1.clone());
    let half_root = root.scale(&BigRational::new(1.into(), 2.into()));

    let base = BigUint::from(2u32) * factorial(n) + 1u32;
    let pairs = n * (n - 1) / 2;
    let power = BigUint::from(pairs) * BigUint::from(pairs);
    let abelian_log2 = Interval::log2_of(&int(BigInt::from(base.clone()))).scale(&int(BigInt::from(power.clone())));
    let simple = log_n.scale(&BigRational::new(BigInt::from(n.pow(5)), 4.into()));

    let checks = BoundsChecks {
        lower_le_main_upper: le(&lower, &main),
        nine_below_main_upper: (n == 3).then(|| lt(&Interval::log2_of(&int(9)), &main)).flatten(),
        compression_ratio_le_half_root: le(&Interval::exact(ratio.clone()), &half_root),
        abelian_base_le_n_pow_n: base <= BigUint::from(n).pow(n as u32),
        abelian_within_simple: le(&abelian_log2, &simple),
        lower_exceeds_abelian_simple: lt(&simple, &lower),
    };
    Ok(BoundsReport {
        n,
        lower_exponent: ratio_string(&half_fact),
        main_upper_exponent: main,
        scarce_exponent: upper_exponent(&half_fact, &root, 10),
        clique_exponent: upper_exponent(&half_fact, &root, 11),
        compression_term: ratio_string(&compression),
        compression_ratio: ratio_string(&ratio),
        half_root_term: half_root,
        abelian_base: base.to_string(),
        abelian_power: power.to_string(),
        abelian_log2,
        abelian_exponent_simple: simple,
        checks,
    })
}

/// Smallest `n` in `3..=max` with `½ (n-1)! > ¼ n⁵ log n`, decided rigorously.
pub fn crossover(max: u64) -> Result<Option<u64>> {
    for n in 3..=max {
        match bounds_report(n)?.checks.lower_exceeds_abelian_simple {
            Some(true) => return Ok(Some(n)),
            Some(false) => {}
            None => return Err(Error::InvalidParameter(format!("cannot decide the crossover at n = {n}"))),
        }
    }
    Ok(None)
}
