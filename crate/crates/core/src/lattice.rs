//! The lattice `U` of fractional ideals `(m/n)Z` attached to a sequence.
//!
//! A compact open subgroup of the a-adic numbers is always the closure of a
//! single ideal in `U`, so ideals are the runtime representation of compact
//! opens. Non-compact open subgroups (closures of increasing unions) are not
//! represented.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AdicError, Result};
use crate::rational::{denom_abs, fmt_rational, numer_abs, parse_rational};
use crate::sequence::SequenceSpec;
use crate::supernatural::lambda_rho;

/// The subgroup `(num/den)Z` of the rationals, stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FracIdeal {
    num: BigUint,
    den: BigUint,
}

impl FracIdeal {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if num.is_zero() || den.is_zero() {
            return Err(AdicError::InvalidArgument(
                "ideal generator must be nonzero".into(),
            ));
        }
        let g = num.gcd(&den);
        Ok(FracIdeal {
            num: num / &g,
            den: den / &g,
        })
    }

    pub fn integers() -> Self {
        FracIdeal {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    /// The ideal generated by a nonzero rational (sign ignored).
    pub fn generated_by(q: &BigRational) -> Result<Self> {
        Self::new(numer_abs(q), denom_abs(q))
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn generator(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.num.clone()),
            BigInt::from(self.den.clone()),
        )
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        (q / self.generator()).is_integer()
    }

    pub fn is_subset_of(&self, other: &FracIdeal) -> bool {
        other.contains(&self.generator())
    }

    pub fn scale(&self, h: &BigRational) -> Result<Self> {
        Self::generated_by(&(self.generator() * h))
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.generator()))
    }
}

impl FromStr for FracIdeal {
    type Err = AdicError;

    fn from_str(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        if !q.is_positive() {
            return Err(AdicError::Parse(format!(
                "ideal '{s}' must have a positive generator"
            )));
        }
        Self::generated_by(&q)
    }
}

impl Serialize for FracIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

impl<'de> Deserialize<'de> for FracIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Place value `w_i` of digit position `i`: `a_0⋯a_{i-1}` for `i >= 0` and
/// `1/(a_{-1}⋯a_i)` for `i < 0`. The chain ideal `U_i` is `w_i Z`.
pub fn place_value(spec: &SequenceSpec, i: i64) -> BigRational {
    if i >= 0 {
        let p = (0..i).fold(BigInt::one(), |acc, k| acc * spec.entry(k));
        BigRational::from_integer(p)
    } else {
        let d = (i..0).fold(BigInt::one(), |acc, k| acc * spec.entry(k));
        BigRational::new(BigInt::one(), d)
    }
}

/// `U_j = (a_0⋯a_{j-1})Z`, with `U_0 = Z`.
pub fn u_chain(spec: &SequenceSpec, j: u64) -> FracIdeal {
    FracIdeal::generated_by(&place_value(spec, j as i64)).expect("place values are nonzero")
}

/// Membership in `U`: `v_p(m) <= λ(p)` and `v_p(n) <= ρ(p)` at every prime.
pub fn in_u(spec: &SequenceSpec, ideal: &FracIdeal) -> bool {
    let (lambda, rho) = lambda_rho(spec);
    lambda.divides(&ideal.num) && rho.divides(&ideal.den)
}

/// Membership of a rational in `N`.
pub fn in_n(spec: &SequenceSpec, q: &BigRational) -> bool {
    lambda_rho(spec).1.divides(&denom_abs(q))
}

pub(crate) fn require_n(spec: &SequenceSpec, q: &BigRational) -> Result<()> {
    if in_n(spec, q) {
        Ok(())
    } else {
        Err(AdicError::NotInN(fmt_rational(q)))
    }
}

pub(crate) fn require_u(spec: &SequenceSpec, ideal: &FracIdeal) -> Result<()> {
    if in_u(spec, ideal) {
        Ok(())
    } else {
        Err(AdicError::NotInLattice(ideal.to_string()))
    }
}

/// `(m/n)Z ∩ (m'/n')Z = (lcm(m,m')/gcd(n,n'))Z`.
pub fn intersect(a: &FracIdeal, b: &FracIdeal) -> FracIdeal {
    FracIdeal::new(a.num.lcm(&b.num), a.den.gcd(&b.den)).expect("lcm and gcd of nonzero values")
}

/// Smallest `j` with `U_j ⊆ I`.
pub fn cofinal_index(spec: &SequenceSpec, ideal: &FracIdeal) -> Result<u64> {
    require_u(spec, ideal)?;
    let m = &ideal.num;
    let mut prod = BigUint::one() % m;
    let mut j = 0u64;
    while !prod.is_zero() {
        prod = (prod * spec.entry(j as i64)) % m;
        j += 1;
    }
    Ok(j)
}

/// `|I/J|` for `J ⊆ I`.
pub fn quotient_size(outer: &FracIdeal, inner: &FracIdeal) -> Result<BigUint> {
    let ratio = inner.generator() / outer.generator();
    if !ratio.is_integer() {
        return Err(AdicError::NotNested {
            outer: outer.to_string(),
            inner: inner.to_string(),
        });
    }
    Ok(ratio.to_integer().magnitude().clone())
}

/// Generalized index `[A : B] = |A/(A∩B)| / |B/(A∩B)|`.
pub fn generalized_index(a: &FracIdeal, b: &FracIdeal) -> BigRational {
    let c = intersect(a, b);
    let top = quotient_size(a, &c).expect("intersection is nested");
    let bottom = quotient_size(b, &c).expect("intersection is nested");
    BigRational::new(BigInt::from(top), BigInt::from(bottom))
}

/// Whether `qN` is dense, i.e. `q` is coprime to every entry.
pub fn is_dense_multiple(spec: &SequenceSpec, q: &BigUint) -> Result<bool> {
    if *q < BigUint::from(2u32) {
        return Err(AdicError::InvalidArgument(
            "multiplier must be at least 2".into(),
        ));
    }
    Ok(spec.prime_sets().1.supports(q))
}

/// The ideal `h·I` for `h ∈ S`.
pub fn s_action(spec: &SequenceSpec, h: &BigRational, ideal: &FracIdeal) -> Result<FracIdeal> {
    spec.require_s(h)?;
    require_u(spec, ideal)?;
    ideal.scale(h)
}

/// Smallest `j >= 0` with `q ∉ U_j`, for nonzero `q`.
pub fn separating_index(spec: &SequenceSpec, q: &BigRational) -> Result<u64> {
    if q.is_zero() {
        return Err(AdicError::InvalidArgument("zero lies in every U_j".into()));
    }
    let mut j = 0u64;
    while u_chain(spec, j).contains(q) {
        j += 1;
    }
    Ok(j)
}
