//! Supernatural numbers with finite support plus a finite or cofinite set of
//! infinite exponents, and the equivalences built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{AdicError, Result};
use crate::primes::{expand, factorize, is_prime, valuation, PrimeSet};
use crate::rational::serde_biguint;
use crate::sequence::{SequenceSpec, Tail};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        self == Exponent::Infinite
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Deserialize)]
struct RawSupernatural {
    #[serde(default)]
    finite: BTreeMap<u64, u64>,
    inf: PrimeSet,
}

/// `∏ p^{e(p)}` where `e(p) = ∞` exactly on `inf` and is finite elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSupernatural")]
pub struct GenSupernatural {
    finite: BTreeMap<u64, u64>,
    inf: PrimeSet,
}

impl TryFrom<RawSupernatural> for GenSupernatural {
    type Error = AdicError;

    fn try_from(raw: RawSupernatural) -> Result<Self> {
        GenSupernatural::new(raw.finite, raw.inf)
    }
}

impl GenSupernatural {
    /// Zero exponents are dropped. Fails when a key is not prime, when a key
    /// also has infinite exponent, or when no exponent is infinite.
    pub fn new(finite: BTreeMap<u64, u64>, inf: PrimeSet) -> Result<Self> {
        inf.validate()?;
        let finite: BTreeMap<u64, u64> = finite.into_iter().filter(|&(_, e)| e > 0).collect();
        for &p in finite.keys() {
            if !is_prime(p) {
                return Err(AdicError::InvalidSupernatural(format!("{p} is not prime")));
            }
            if inf.contains(p) {
                return Err(AdicError::InvalidSupernatural(format!(
                    "{p} has both a finite and an infinite exponent"
                )));
            }
        }
        if inf.is_empty() {
            return Err(AdicError::InvalidSupernatural(
                "at least one prime must have infinite exponent".into(),
            ));
        }
        Ok(GenSupernatural { finite, inf })
    }

    /// `∏_{p ∈ primes} p^∞`.
    pub fn infinite_on(primes: PrimeSet) -> Result<Self> {
        Self::new(BTreeMap::new(), primes)
    }

    pub fn finite_part(&self) -> &BTreeMap<u64, u64> {
        &self.finite
    }

    pub fn inf_primes(&self) -> &PrimeSet {
        &self.inf
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        if self.inf.contains(p) {
            Exponent::Infinite
        } else {
            Exponent::Finite(self.finite.get(&p).copied().unwrap_or(0))
        }
    }

    /// Primes whose exponent is finite but possibly nonzero, plus the
    /// excluded primes of a cofinite infinity set.
    pub fn mentioned_primes(&self) -> BTreeSet<u64> {
        self.finite
            .keys()
            .chain(self.inf.listed())
            .copied()
            .collect()
    }

    /// Whether `n` divides the supernatural number, i.e. `v_p(n) <= e(p)`
    /// at every prime.
    pub fn divides(&self, n: &BigUint) -> bool {
        match &self.inf {
            PrimeSet::Finite(inf) => {
                let mut rest = n.clone();
                for &p in inf {
                    rest = valuation(&rest, p).1;
                }
                for (&p, &e) in &self.finite {
                    let (v, r) = valuation(&rest, p);
                    if v > e {
                        return false;
                    }
                    rest = r;
                }
                rest == BigUint::from(1u32)
            }
            PrimeSet::Cofinite(excluded) => excluded.iter().all(|&p| {
                let bound = self.finite.get(&p).copied().unwrap_or(0);
                valuation(n, p).0 <= bound
            }),
        }
    }

    /// Multiplies by a natural number, with `∞ + k = ∞`.
    pub fn mul_natural(&self, r: u64) -> Self {
        self.mul_factored(&factorize(r))
    }

    pub fn mul_factored(&self, factors: &BTreeMap<u64, u64>) -> Self {
        let mut out = self.clone();
        for (&p, &e) in factors {
            if e > 0 && !out.inf.contains(p) {
                *out.finite.entry(p).or_insert(0) += e;
            }
        }
        out
    }

    /// `λ` from the nonnegative tail or `ρ` from the negative tail.
    fn from_tail(tail: &Tail) -> Self {
        let inf = tail.period_primes();
        let mut finite = BTreeMap::new();
        for &e in &tail.preperiod {
            for (p, v) in factorize(e) {
                if !inf.contains(&p) {
                    *finite.entry(p).or_insert(0) += v;
                }
            }
        }
        GenSupernatural {
            finite,
            inf: PrimeSet::Finite(inf),
        }
    }
}

impl fmt::Display for GenSupernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .finite
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        match &self.inf {
            PrimeSet::Finite(s) => parts.extend(s.iter().map(|p| format!("{p}^∞"))),
            other => parts.push(format!("({other})^∞")),
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// The supernatural numbers `(λ, ρ)` of a sequence.
///
/// `λ(p)` is the supremum of `v_p(a_0⋯a_j)`, `ρ(p)` the supremum of
/// `v_p(a_{-1}⋯a_{-k})`.
pub fn lambda_rho(spec: &SequenceSpec) -> (GenSupernatural, GenSupernatural) {
    match spec {
        SequenceSpec::EventuallyPeriodic { neg, nonneg } => (
            GenSupernatural::from_tail(nonneg),
            GenSupernatural::from_tail(neg),
        ),
        SequenceSpec::Increment { .. } => {
            let all = GenSupernatural {
                finite: BTreeMap::new(),
                inf: PrimeSet::all(),
            };
            (all.clone(), all)
        }
    }
}

/// A pair of natural numbers certifying an equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "serde_biguint")]
    pub p: BigUint,
    #[serde(with = "serde_biguint")]
    pub q: BigUint,
}

impl Witness {
    fn from_factors(p: &BTreeMap<u64, u64>, q: &BTreeMap<u64, u64>) -> Self {
        Witness {
            p: expand(p),
            q: expand(q),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.p == BigUint::from(1u32) && self.q == BigUint::from(1u32)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

fn finite_value(e: Exponent) -> u64 {
    match e {
        Exponent::Finite(v) => v,
        Exponent::Infinite => 0,
    }
}

/// Minimal `(r1, r2)` with `r1·s1 = r2·s2`, returned as `Witness { p: r1, q: r2 }`.
///
/// Exists exactly when both have the same infinity set.
pub fn equivalent_single(s1: &GenSupernatural, s2: &GenSupernatural) -> Option<Witness> {
    if s1.inf != s2.inf {
        return None;
    }
    let mut r1 = BTreeMap::new();
    let mut r2 = BTreeMap::new();
    for p in s1.mentioned_primes().union(&s2.mentioned_primes()) {
        let (e1, e2) = (s1.exponent(*p), s2.exponent(*p));
        if e1.is_infinite() {
            continue;
        }
        let (e1, e2) = (finite_value(e1), finite_value(e2));
        if e2 > e1 {
            r1.insert(*p, e2 - e1);
        } else if e1 > e2 {
            r2.insert(*p, e1 - e2);
        }
    }
    Some(Witness::from_factors(&r1, &r2))
}

/// Minimal coprime `(p, q)` with `p·λ1 = q·λ2` and `q·ρ1 = p·ρ2`.
pub fn equivalent_pair(
    lambda1: &GenSupernatural,
    rho1: &GenSupernatural,
    lambda2: &GenSupernatural,
    rho2: &GenSupernatural,
) -> Option<Witness> {
    if lambda1.inf != lambda2.inf || rho1.inf != rho2.inf {
        return None;
    }
    let primes: BTreeSet<u64> = [lambda1, rho1, lambda2, rho2]
        .iter()
        .flat_map(|s| s.mentioned_primes())
        .collect();
    let mut p_exp = BTreeMap::new();
    let mut q_exp = BTreeMap::new();
    for r in primes {
        let lambda_inf = lambda1.exponent(r).is_infinite();
        let rho_inf = rho1.exponent(r).is_infinite();
        let (l1, l2) = (
            finite_value(lambda1.exponent(r)) as i128,
            finite_value(lambda2.exponent(r)) as i128,
        );
        let (r1, r2) = (
            finite_value(rho1.exponent(r)) as i128,
            finite_value(rho2.exponent(r)) as i128,
        );
        // v_r(p) - v_r(q), fixed by whichever side is finite
        let diff = match (lambda_inf, rho_inf) {
            (true, true) => 0,
            (true, false) => r1 - r2,
            (false, true) => l2 - l1,
            (false, false) => {
                if l1 + r1 != l2 + r2 {
                    return None;
                }
                l2 - l1
            }
        };
        if diff > 0 {
            p_exp.insert(r, diff as u64);
        } else if diff < 0 {
            q_exp.insert(r, (-diff) as u64);
        }
    }
    Some(Witness::from_factors(&p_exp, &q_exp))
}

/// Normal form of the class of `(λ, ρ)` under the pair equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalPair {
    pub lambda_inf: PrimeSet,
    pub rho_inf: PrimeSet,
    /// `λ(r) + ρ(r)` over primes finite on both sides with positive total.
    pub totals: BTreeMap<u64, u64>,
}

pub fn canonical_pair_form(lambda: &GenSupernatural, rho: &GenSupernatural) -> CanonicalPair {
    let mut totals = BTreeMap::new();
    for r in lambda.finite.keys().chain(rho.finite.keys()) {
        if let (Exponent::Finite(l), Exponent::Finite(p)) = (lambda.exponent(*r), rho.exponent(*r))
        {
            if l + p > 0 {
                totals.insert(*r, l + p);
            }
        }
    }
    CanonicalPair {
        lambda_inf: lambda.inf.clone(),
        rho_inf: rho.inf.clone(),
        totals,
    }
}
