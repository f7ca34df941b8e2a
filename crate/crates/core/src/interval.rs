//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every endpoint is an exact `BigRational` whose denominator is a power of
//! two no larger than `2^PRECISION`. Operations round the lower endpoint down
//! and the upper endpoint up, so a comparison reported as certain is rigorous.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Fractional bits kept after every rounding step.
pub const PRECISION: u32 = 160;

const LOG_WORK_BITS: u32 = 320;
const LOG_RESULT_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn floor_scaled(q: &BigRational, bits: u32) -> BigInt {
    (q.numer() * pow2(bits)).div_floor(q.denom())
}

fn ceil_scaled(q: &BigRational, bits: u32) -> BigInt {
    -((-(q.numer() * pow2(bits))).div_floor(q.denom()))
}

fn round_down(q: &BigRational) -> BigRational {
    if q.denom().bits() <= PRECISION as u64 + 1 {
        return q.clone();
    }
    BigRational::new(floor_scaled(q, PRECISION), pow2(PRECISION))
}

fn round_up(q: &BigRational) -> BigRational {
    if q.denom().bits() <= PRECISION as u64 + 1 {
        return q.clone();
    }
    BigRational::new(ceil_scaled(q, PRECISION), pow2(PRECISION))
}

fn isqrt_ceil(x: &BigInt) -> BigInt {
    let r = x.sqrt();
    if &(&r * &r) == x {
        r
    } else {
        r + 1
    }
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo: round_down(&lo), hi: round_up(&hi) }
    }

    pub fn exact(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::from_integer(v.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::exact(BigRational::new(num.into(), den.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Euler's number, from the Taylor series with an explicit tail bound.
    pub fn e() -> Self {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        let terms = 60u32;
        for k in 0..=terms {
            if k > 0 {
                term /= BigRational::from_integer(k.into());
            }
            sum += &term;
        }
        // tail sum_{k > N} 1/k! < 1/(N! * N)
        let tail = &term / BigRational::from_integer(terms.into());
        Interval::new(sum.clone(), sum + tail)
    }

    /// Binary logarithm of a positive rational.
    pub fn log2_of(q: &BigRational) -> Self {
        assert!(q.is_positive(), "log2 of a non-positive number");
        // shift q into [1, 2)
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        let mut k = nb - db;
        let two = BigRational::from_integer(2.into());
        let scale = |k: i64| -> BigRational {
            if k >= 0 {
                BigRational::from_integer(pow2(k as u32))
            } else {
                BigRational::new(BigInt::one(), pow2((-k) as u32))
            }
        };
        let mut y = q / scale(k);
        while y >= two {
            y /= &two;
            k += 1;
        }
        while y < BigRational::one() {
            y *= &two;
            k -= 1;
        }
        let unit = pow2(LOG_WORK_BITS);
        let two_units = &unit << 1;
        let mut yl = floor_scaled(&y, LOG_WORK_BITS);
        let mut yu = ceil_scaled(&y, LOG_WORK_BITS);
        let mut acc = BigInt::zero();
        let mut bits_done = 0;
        for _ in 0..LOG_RESULT_BITS {
            yl = (&yl * &yl) >> LOG_WORK_BITS as usize;
            yu = -((-(&yu * &yu)) >> LOG_WORK_BITS as usize);
            acc <<= 1;
            if yl >= two_units {
                acc += 1;
                yl >>= 1;
                yu = -((-yu) >> 1usize);
            } else if yu < two_units {
                // bit is zero
            } else {
                // cannot decide this bit; remaining tail is below 2^-(bits_done)
                acc >>= 1;
                break;
            }
            bits_done += 1;
        }
        let frac_lo = BigRational::new(acc.clone(), pow2(bits_done));
        let frac_hi = BigRational::new(acc + 1, pow2(bits_done));
        let base = BigRational::from_integer(k.into());
        Interval::new(&base + frac_lo, base + frac_hi)
    }

    pub fn log2(&self) -> Self {
        let lo = Self::log2_of(&self.lo);
        let hi = Self::log2_of(&self.hi);
        Interval::new(lo.lo, hi.hi)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        let lo = floor_scaled(&self.lo, 2 * PRECISION).sqrt();
        let hi = isqrt_ceil(&ceil_scaled(&self.hi, 2 * PRECISION));
        Interval::new(BigRational::new(lo, pow2(PRECISION)), BigRational::new(hi, pow2(PRECISION)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(other.lo.is_positive() || other.hi.is_negative(), "division by an interval containing zero");
        let inv = Interval::new(other.hi.recip(), other.lo.recip());
        self.mul(&inv)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.mul(&Interval::exact(q.clone()))
    }

    /// Every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    /// Ordering when the intervals are disjoint; `None` when they overlap.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `floor(x)` when it is the same integer for every point of the interval.
    pub fn floor_exact(&self) -> Option<BigInt> {
        let lo = self.lo.floor().to_integer();
        let hi = self.hi.floor().to_integer();
        (lo == hi).then_some(lo)
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }
}

/// Nearest-ish `f64` for display; never used in a decision.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = 60 - (nb - db);
    let scaled = if shift >= 0 {
        (q.numer() << shift as usize).div_floor(q.denom())
    } else {
        q.numer().div_floor(&(q.denom() << (-shift) as usize))
    };
    let (sign, digits) = scaled.to_u64_digits();
    let mut m = 0f64;
    for d in digits.iter().rev() {
        m = m * 18446744073709551616.0 + *d as f64;
    }
    let v = m * 2f64.powi(-(shift as i32));
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

/// Decimal expansion rounded toward negative infinity (`up = false`) or
/// positive infinity (`up = true`) at `digits` fractional digits.
pub fn decimal_string(q: &BigRational, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let num = q.numer() * &scale;
    let v = if up { -((-num).div_floor(q.denom())) } else { num.div_floor(q.denom()) };
    let negative = v.is_negative();
    let mag = v.abs().to_string();
    let padded = if mag.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
    } else {
        mag
    };
    let split = padded.len() - digits as usize;
    let (int, frac) = padded.split_at(split);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", decimal_string(&self.lo, 20, false), decimal_string(&self.hi, 20, true))
    }
}

/// Serialized as `{"lo": "...", "hi": "..."}` with 24 outward-rounded digits.
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Interval", 2)?;
        s.serialize_field("lo", &decimal_string(&self.lo, 24, false))?;
        s.serialize_field("hi", &decimal_string(&self.hi, 24, true))?;
        s.end()
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    let kk = BigUint::from(k);
    if &kk > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
