//! Finite descriptions of doubly infinite base sequences `a = (a_i)`.
//!
//! Two kinds are representable: eventually periodic tails in both
//! directions, and the procedural `Increment` rule `a_i = |i - center| + offset`.
//! Both keep every prime-level invariant exactly computable.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{AdicError, Result};
use crate::primes::{factorize, PrimeSet};
use crate::rational::{denom_abs, fmt_rational, numer_abs};

/// Entries are kept below this bound so digit sums never overflow `u64`.
pub const MAX_ENTRY: u64 = 1 << 31;

/// One direction of the sequence: a finite preperiod followed by a repeating
/// period. For the negative direction entry `k` is `a_{-1-k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tail {
    #[serde(default)]
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl Tail {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Self {
        Tail { preperiod, period }
    }

    pub fn constant(n: u64) -> Self {
        Tail::new(vec![], vec![n])
    }

    fn validate(&self, side: &str) -> Result<()> {
        if self.period.is_empty() {
            return Err(AdicError::InvalidSpec(format!("{side} period is empty")));
        }
        for &e in self.preperiod.iter().chain(&self.period) {
            if e < 2 {
                return Err(AdicError::InvalidSpec(format!(
                    "{side} entry {e} is smaller than 2"
                )));
            }
            if e > MAX_ENTRY {
                return Err(AdicError::InvalidSpec(format!(
                    "{side} entry {e} exceeds {MAX_ENTRY}"
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, k: usize) -> u64 {
        if k < self.preperiod.len() {
            self.preperiod[k]
        } else {
            let j = (k - self.preperiod.len()) % self.period.len();
            self.period[j]
        }
    }

    /// The first `count` entries together with the period as it continues
    /// after them.
    pub fn unroll(&self, count: usize) -> (Vec<u64>, Vec<u64>) {
        let count = count.max(self.preperiod.len());
        let head = (0..count).map(|k| self.get(k)).collect();
        let shift = (count - self.preperiod.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(shift);
        (head, period)
    }

    pub fn drop_front(&self, m: usize) -> Tail {
        let (head, period) = self.unroll(m);
        Tail::new(head[m..].to_vec(), period)
    }

    pub fn prepend(&self, prefix: Vec<u64>) -> Tail {
        let mut preperiod = prefix;
        preperiod.extend_from_slice(&self.preperiod);
        Tail::new(preperiod, self.period.clone())
    }

    /// Whether two tails describe the same infinite sequence.
    pub fn same_entries(&self, other: &Tail) -> bool {
        let span = self.preperiod.len().max(other.preperiod.len())
            + self.period.len().lcm(&other.period.len());
        (0..span).all(|k| self.get(k) == other.get(k))
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.preperiod.iter().chain(&self.period).copied()
    }

    pub fn period_primes(&self) -> BTreeSet<u64> {
        self.period
            .iter()
            .flat_map(|&e| factorize(e).into_keys())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawSpec {
    EventuallyPeriodic {
        neg: Tail,
        nonneg: Tail,
    },
    Increment {
        offset: u64,
        #[serde(default, skip_serializing_if = "is_zero")]
        center: i64,
    },
}

fn is_zero(n: &i64) -> bool {
    *n == 0
}

/// A doubly infinite sequence of integers `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub enum SequenceSpec {
    EventuallyPeriodic {
        neg: Tail,
        nonneg: Tail,
    },
    /// `a_i = |i - center| + offset`; with `center = 0` this is the symmetric
    /// sequence in which every prime divides infinitely many entries on
    /// both sides.
    Increment {
        offset: u64,
        center: i64,
    },
}

impl TryFrom<RawSpec> for SequenceSpec {
    type Error = AdicError;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let spec = match raw {
            RawSpec::EventuallyPeriodic { neg, nonneg } => {
                SequenceSpec::EventuallyPeriodic { neg, nonneg }
            }
            RawSpec::Increment { offset, center } => SequenceSpec::Increment { offset, center },
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<SequenceSpec> for RawSpec {
    fn from(spec: SequenceSpec) -> Self {
        match spec {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                RawSpec::EventuallyPeriodic { neg, nonneg }
            }
            SequenceSpec::Increment { offset, center } => RawSpec::Increment { offset, center },
        }
    }
}

impl SequenceSpec {
    pub fn periodic(neg: Tail, nonneg: Tail) -> Result<Self> {
        let spec = SequenceSpec::EventuallyPeriodic { neg, nonneg };
        spec.validate()?;
        Ok(spec)
    }

    pub fn constant(n: u64) -> Result<Self> {
        Self::periodic(Tail::constant(n), Tail::constant(n))
    }

    pub fn increment(offset: u64) -> Result<Self> {
        let spec = SequenceSpec::Increment { offset, center: 0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| AdicError::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                neg.validate("neg")?;
                nonneg.validate("nonneg")
            }
            SequenceSpec::Increment { offset, .. } => {
                if *offset < 2 {
                    Err(AdicError::InvalidSpec(format!(
                        "offset {offset} is smaller than 2"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn entry(&self, i: i64) -> u64 {
        match self {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                if i >= 0 {
                    nonneg.get(i as usize)
                } else {
                    neg.get((-1 - i) as usize)
                }
            }
            SequenceSpec::Increment { offset, center } => (i - center).unsigned_abs() + offset,
        }
    }

    /// Entries `a_lo, ..., a_{hi-1}`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u64> {
        (lo..hi).map(|i| self.entry(i)).collect()
    }

    /// The reflected sequence `a^(n)` with `a^(n)_i = a_{n-i}`.
    pub fn shift(&self, n: i64) -> SequenceSpec {
        match self {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                let new_nonneg = if n >= 0 {
                    neg.prepend((0..=n).rev().map(|i| self.entry(i)).collect())
                } else {
                    neg.drop_front((-1 - n) as usize)
                };
                let new_neg = if n + 1 >= 0 {
                    nonneg.drop_front((n + 1) as usize)
                } else {
                    nonneg.prepend((n + 1..0).map(|i| self.entry(i)).collect())
                };
                SequenceSpec::EventuallyPeriodic {
                    neg: new_neg,
                    nonneg: new_nonneg,
                }
            }
            SequenceSpec::Increment { offset, center } => SequenceSpec::Increment {
                offset: *offset,
                center: n - center,
            },
        }
    }

    /// `a*` with `a*_i = a_{-i}`.
    pub fn star(&self) -> SequenceSpec {
        self.shift(0)
    }

    /// `a#` with `a#_i = a_{-1-i}`.
    pub fn sharp(&self) -> SequenceSpec {
        self.shift(-1)
    }

    /// Translation `b_i = a_{i+n}`.
    pub fn translate(&self, n: i64) -> SequenceSpec {
        match self {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                let (new_neg, new_nonneg) = if n >= 0 {
                    (
                        neg.prepend((0..n).rev().map(|i| self.entry(i)).collect()),
                        nonneg.drop_front(n as usize),
                    )
                } else {
                    (
                        neg.drop_front((-n) as usize),
                        nonneg.prepend((n..0).map(|i| self.entry(i)).collect()),
                    )
                };
                SequenceSpec::EventuallyPeriodic {
                    neg: new_neg,
                    nonneg: new_nonneg,
                }
            }
            SequenceSpec::Increment { offset, center } => SequenceSpec::Increment {
                offset: *offset,
                center: center - n,
            },
        }
    }

    /// Semantic equality: same entry at every index.
    pub fn same_sequence(&self, other: &SequenceSpec) -> bool {
        use SequenceSpec::*;
        match (self, other) {
            (
                EventuallyPeriodic { neg, nonneg },
                EventuallyPeriodic {
                    neg: neg2,
                    nonneg: nonneg2,
                },
            ) => neg.same_entries(neg2) && nonneg.same_entries(nonneg2),
            (Increment { .. }, Increment { .. }) => self == other,
            _ => false,
        }
    }

    /// Every distinct entry value, for eventually periodic specs.
    pub fn distinct_entries(&self) -> Option<BTreeSet<u64>> {
        match self {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                Some(neg.values().chain(nonneg.values()).collect())
            }
            SequenceSpec::Increment { .. } => None,
        }
    }

    /// `P`: primes dividing infinitely many entries on both sides, and `Q`:
    /// primes dividing no entry.
    pub fn prime_sets(&self) -> (PrimeSet, PrimeSet) {
        match self {
            SequenceSpec::EventuallyPeriodic { neg, nonneg } => {
                let p = neg
                    .period_primes()
                    .intersection(&nonneg.period_primes())
                    .copied()
                    .collect();
                let occurring = neg
                    .values()
                    .chain(nonneg.values())
                    .flat_map(|e| factorize(e).into_keys())
                    .collect();
                (PrimeSet::Finite(p), PrimeSet::Cofinite(occurring))
            }
            // entries run through every integer >= offset on both sides
            SequenceSpec::Increment { .. } => (PrimeSet::all(), PrimeSet::empty()),
        }
    }

    /// Whether the positive rational `h` lies in `S = <P>`.
    pub fn in_s(&self, h: &BigRational) -> bool {
        if !h.is_positive() {
            return false;
        }
        let (p, _) = self.prime_sets();
        p.supports(&numer_abs(h)) && p.supports(&denom_abs(h))
    }

    pub(crate) fn require_s(&self, h: &BigRational) -> Result<()> {
        if self.in_s(h) {
            Ok(())
        } else {
            Err(AdicError::NotInS(fmt_rational(h)))
        }
    }
}

/// Named sequences used throughout the examples and tests.
pub mod catalog {
    use super::{SequenceSpec, Tail};

    /// Constant sequence `p`; gives the p-adic numbers when `p` is prime.
    pub fn constant(p: u64) -> SequenceSpec {
        SequenceSpec::constant(p).expect("constant entry must be >= 2")
    }

    /// `a_0 = 3`, every other entry `2`.
    pub fn three_at_zero() -> SequenceSpec {
        SequenceSpec::EventuallyPeriodic {
            neg: Tail::constant(2),
            nonneg: Tail::new(vec![3], vec![2]),
        }
    }

    /// `b_{-1} = 3`, every other entry `2`.
    pub fn three_at_negative() -> SequenceSpec {
        SequenceSpec::EventuallyPeriodic {
            neg: Tail::new(vec![3], vec![2]),
            nonneg: Tail::constant(2),
        }
    }

    /// `a_i = 2` for `i < 1` and `a_i = 3` for `i >= 1`; here `P` is empty.
    pub fn two_then_three() -> SequenceSpec {
        SequenceSpec::EventuallyPeriodic {
            neg: Tail::constant(2),
            nonneg: Tail::new(vec![2], vec![3]),
        }
    }

    /// `a_i = |i| + 2`: the finite adeles.
    pub fn adeles() -> SequenceSpec {
        SequenceSpec::Increment {
            offset: 2,
            center: 0,
        }
    }
}
