//! Small-prime number theory and finite/cofinite prime sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AdicError, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization of a machine integer by trial division.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while n > 1 && d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

const TRIAL_LIMIT: u64 = 1 << 22;

/// Factorization of a big integer whose prime factors are all small.
///
/// Returns `None` when a cofactor survives trial division up to `2^22` and
/// is too large to be certified prime that way.
pub fn factorize_big(n: &BigUint) -> Option<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let mut d = 2u64;
    while !rest.is_one() {
        if let Some(small) = rest.to_u64() {
            for (p, e) in factorize(small) {
                *out.entry(p).or_insert(0) += e;
            }
            return Some(out);
        }
        if d > TRIAL_LIMIT {
            return None;
        }
        let bd = BigUint::from(d);
        loop {
            let (q, r) = rest.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            *out.entry(d).or_insert(0) += 1;
            rest = q;
        }
        d += 1;
    }
    Some(out)
}

/// p-adic valuation of `n` together with the cofactor.
pub fn valuation(n: &BigUint, p: u64) -> (u64, BigUint) {
    if n.is_zero() {
        return (u64::MAX, n.clone());
    }
    let bp = BigUint::from(p);
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&bp);
        if !r.is_zero() {
            return (v, rest);
        }
        v += 1;
        rest = q;
    }
}

pub fn valuation_u64(mut n: u64, p: u64) -> u64 {
    let mut v = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Product of prime powers.
pub fn expand(factors: &BTreeMap<u64, u64>) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, (&p, &e)| {
        acc * BigUint::from(p).pow(e as u32)
    })
}

/// A set of primes that is either finite or the complement of a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", content = "primes", rename_all = "lowercase")]
pub enum PrimeSet {
    Finite(BTreeSet<u64>),
    /// All primes except the listed ones.
    Cofinite(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        PrimeSet::Cofinite(BTreeSet::new())
    }

    pub fn finite<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        PrimeSet::Finite(primes.into_iter().collect())
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Self {
        PrimeSet::Cofinite(excluded.into_iter().collect())
    }

    /// Checks that every listed element is prime.
    pub fn validate(&self) -> Result<()> {
        let set = match self {
            PrimeSet::Finite(s) | PrimeSet::Cofinite(s) => s,
        };
        match set.iter().find(|&&p| !is_prime(p)) {
            Some(p) => Err(AdicError::InvalidSupernatural(format!("{p} is not prime"))),
            None => Ok(()),
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(&p),
            PrimeSet::Cofinite(s) => !s.contains(&p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(s) if s.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PrimeSet::Finite(_))
    }

    /// The finite list stored in either mode.
    pub fn listed(&self) -> &BTreeSet<u64> {
        match self {
            PrimeSet::Finite(s) | PrimeSet::Cofinite(s) => s,
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            PrimeSet::Finite(s) => PrimeSet::Cofinite(s.clone()),
            PrimeSet::Cofinite(s) => PrimeSet::Finite(s.clone()),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.intersection(b).copied().collect()),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => {
                Finite(a.difference(b).copied().collect())
            }
            (Cofinite(a), Cofinite(b)) => Cofinite(a.union(b).copied().collect()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.complement()
            .intersection(&other.complement())
            .complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// True iff every prime factor of `n` lies in the set.
    pub fn supports(&self, n: &BigUint) -> bool {
        if n.is_zero() {
            return false;
        }
        match self {
            PrimeSet::Finite(s) => {
                let mut rest = n.clone();
                for &p in s {
                    rest = valuation(&rest, p).1;
                }
                rest.is_one()
            }
            PrimeSet::Cofinite(s) => s.iter().all(|&p| !(n % BigUint::from(p)).is_zero()),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| {
            s.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            PrimeSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            PrimeSet::Cofinite(s) if s.is_empty() => write!(f, "all primes"),
            PrimeSet::Cofinite(s) => write!(f, "all primes except {{{}}}", list(s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(360), BTreeMap::from([(2, 3), (3, 2), (5, 1)]));
        assert_eq!(factorize(97), BTreeMap::from([(97, 1)]));
        assert!(factorize(1).is_empty());
        let big = BigUint::from(2u32).pow(100) * BigUint::from(3u32).pow(7);
        assert_eq!(
            factorize_big(&big),
            Some(BTreeMap::from([(2, 100), (3, 7)]))
        );
    }

    #[test]
    fn set_algebra() {
        let a = PrimeSet::finite([2, 3]);
        let b = PrimeSet::cofinite([3, 5]);
        assert_eq!(a.intersection(&b), PrimeSet::finite([2]));
        assert_eq!(a.union(&b), PrimeSet::cofinite([5]));
        assert_eq!(b.difference(&a), PrimeSet::cofinite([2, 3, 5]));
        assert!(PrimeSet::all().complement().is_empty());
        assert!(a.is_subset(&PrimeSet::all()));
        assert!(!b.is_subset(&a));
    }

    #[test]
    fn support_check() {
        let s = PrimeSet::finite([2, 3]);
        assert!(s.supports(&BigUint::from(72u32)));
        assert!(!s.supports(&BigUint::from(10u32)));
        assert!(s.supports(&BigUint::one()));
        let c = PrimeSet::cofinite([2]);
        assert!(c.supports(&BigUint::from(15u32)));
        assert!(!c.supports(&BigUint::from(6u32)));
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_string(&PrimeSet::finite([2])).unwrap();
        assert_eq!(json, r#"{"mode":"finite","primes":[2]}"#);
        let back: PrimeSet = serde_json::from_str(r#"{"mode":"cofinite","primes":[]}"#).unwrap();
        assert_eq!(back, PrimeSet::all());
    }
}
