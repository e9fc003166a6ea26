//! Duality pairings between a-adic numbers over `a` and over a reflected
//! sequence `a^(n)`, evaluated as exact angles in `Q/Z`.
//!
//! `⟨x, y⟩` is the eventual value of `c_n · x^{(j)} y^{(j)} mod 1`, where the
//! scaling `c_n` is `a_{-1}⋯a_{n+1}` for `n <= -2`, `1` for `n = -1`
//! (the sharp pairing) and `1/(a_0⋯a_n)` for `n >= 0` (`n = 0` is the star
//! pairing). Nothing here ever leaves exact rational arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arithmetic::AdicApprox;
use crate::error::{AdicError, Result};
use crate::lattice::{in_n, place_value, require_n, u_chain};
use crate::rational::{fmt_rational, parse_rational};
use crate::sequence::SequenceSpec;

/// An element `value ∈ [0, 1)` of `Q/Z`, standing for `e^{2πi·value}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn new(q: BigRational) -> Self {
        let frac = &q - q.floor();
        Angle(frac)
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::new(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::new(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} mod 1", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let q = parse_rational(s.trim_end_matches(" mod 1")).map_err(serde::de::Error::custom)?;
        Ok(Angle::new(q))
    }
}

/// Which reflected sequence carries the dual group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `a*_i = a_{-i}`, pairing scaled by `1/a_0`.
    Star,
    /// `a#_i = a_{-1-i}`, unscaled pairing.
    Sharp,
}

impl Flavor {
    pub fn shift(self) -> i64 {
        match self {
            Flavor::Star => 0,
            Flavor::Sharp => -1,
        }
    }

    pub fn dual(self, spec: &SequenceSpec) -> SequenceSpec {
        spec.shift(self.shift())
    }
}

/// The scaling `c_n` of the pairing between `a` and `a^(n)`.
pub fn pairing_scale(spec: &SequenceSpec, n: i64) -> BigRational {
    if n <= -1 {
        // a_{-1}⋯a_{n+1}; empty product for n = -1
        BigRational::from_integer((n + 1..0).fold(BigInt::one(), |acc, i| acc * spec.entry(i)))
    } else {
        place_value(spec, n + 1).recip()
    }
}

fn check_dual(n: i64, x: &AdicApprox, y: &AdicApprox) -> Result<()> {
    if y.spec().same_sequence(&x.spec().shift(n)) {
        Ok(())
    } else {
        Err(AdicError::BadCase(format!(
            "second argument is not defined over a^({n})"
        )))
    }
}

const STABILIZATION_SEARCH: i64 = 4096;

/// Smallest index `m >= start` such that `w_{m+1} · other · scale ∈ Z`,
/// where `w` are the place values of `spec`.
fn stabilization_index(
    spec: &SequenceSpec,
    start: i64,
    other: &BigRational,
    scale: &BigRational,
) -> Result<i64> {
    let fixed = other * scale;
    let mut w = place_value(spec, start + 1);
    for m in start..start + STABILIZATION_SEARCH {
        if (&w * &fixed).is_integer() {
            return Ok(m);
        }
        w *= BigInt::from(spec.entry(m + 1));
    }
    Err(AdicError::BadCase("pairing does not stabilize".into()))
}

/// The eventual pairing value.
///
/// With `v(x)`, `v(y)` the true valuations, the value equals
/// `c_n · x^{(m)} y^{(k)}` where `m` is the first index past which the tail
/// of `x` pairs integrally against `y`, and symmetrically for `k`. Windows must
/// reach those indices or the call fails with `InsufficientPrecision`.
pub fn pair_general(n: i64, x: &AdicApprox, y: &AdicApprox) -> Result<Angle> {
    check_dual(n, x, y)?;
    if x.exact().is_some_and(Zero::is_zero) || y.exact().is_some_and(Zero::is_zero) {
        return Ok(Angle::zero());
    }
    let dual = y.spec().clone();
    let scale = pairing_scale(x.spec(), n);
    let (xn, yn) = (x.normalized(), y.normalized());
    let (vx, vy) = (xn.floor(), yn.floor());

    let m = stabilization_index(x.spec(), vx - 1, &place_value(&dual, vy), &scale)?;
    if m < vx {
        return Ok(Angle::zero());
    }
    let k = stabilization_index(&dual, vy - 1, &place_value(x.spec(), vx), &scale)?;
    if k < vy {
        return Ok(Angle::zero());
    }
    let tx = xn.truncation_value(m)?;
    let ty = yn.truncation_value(k)?;
    Ok(Angle::new(tx * ty * scale))
}

/// Pairing of `Ω_a` with `Ω_{a*}`, scaled by `1/a_0`.
pub fn pair_star(x: &AdicApprox, y: &AdicApprox) -> Result<Angle> {
    pair_general(0, x, y)
}

/// Pairing of `Ω_a` with `Ω_{a#}`, unscaled.
pub fn pair_sharp(x: &AdicApprox, y: &AdicApprox) -> Result<Angle> {
    pair_general(-1, x, y)
}

pub fn pair(flavor: Flavor, x: &AdicApprox, y: &AdicApprox) -> Result<Angle> {
    pair_general(flavor.shift(), x, y)
}

/// The raw term `c_n · x^{(j)} y^{(j)} mod 1` before taking the limit.
pub fn truncation_pairing(n: i64, x: &AdicApprox, y: &AdicApprox, j: i64) -> Result<Angle> {
    check_dual(n, x, y)?;
    let scale = pairing_scale(x.spec(), n);
    Ok(Angle::new(
        x.truncation_value(j)? * y.truncation_value(j)? * scale,
    ))
}

/// Index `L` with `(O_j)^⊥ = O^dual_L`: `1 - j` for star, `-j` for sharp.
pub fn annihilator_level(j: i64, flavor: Flavor) -> i64 {
    match flavor {
        Flavor::Star => 1 - j,
        Flavor::Sharp => -j,
    }
}

/// Checks `(O_j)^⊥ = O^dual_level` on generators: every `e_i` (`i >= j`)
/// pairs trivially with every dual `e_m` (`m >= level`), and some `e_i`
/// pairs nontrivially with the dual `e_{level-1}`. `window` generators are
/// tested on each side.
pub fn verify_annihilator_at(
    spec: &SequenceSpec,
    j: i64,
    flavor: Flavor,
    level: i64,
    window: i64,
) -> Result<bool> {
    if window < 1 {
        return Err(AdicError::InvalidArgument("window must be positive".into()));
    }
    let dual = flavor.dual(spec);
    let precision = j.abs() + level.abs() + window + 4;
    let generator = |s: &SequenceSpec, i: i64| AdicApprox::embed(s, &place_value(s, i), precision);
    let xs = (j..j + window)
        .map(|i| generator(spec, i))
        .collect::<Result<Vec<_>>>()?;
    for m in level..level + window {
        let y = generator(&dual, m)?;
        for x in &xs {
            if !pair(flavor, x, &y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    let outside = generator(&dual, level - 1)?;
    for x in &xs {
        if !pair(flavor, x, &outside)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn verify_annihilator(
    spec: &SequenceSpec,
    j: i64,
    flavor: Flavor,
    window: i64,
) -> Result<bool> {
    verify_annihilator_at(spec, j, flavor, annihilator_level(j, flavor), window)
}

/// `ω((v, y) + N*)(q) = e^{-2πi q v / a_0} e^{2πi q y / a_0}` for rational `v`.
pub fn character_eval(
    spec: &SequenceSpec,
    v: &BigRational,
    y: &BigRational,
    q: &BigRational,
) -> Result<Angle> {
    require_n(spec, q)?;
    if !in_n(&spec.star(), y) {
        return Err(AdicError::NotInNStar(fmt_rational(y)));
    }
    let a0 = BigRational::from_integer(BigInt::from(spec.entry(0)));
    Ok(Angle::new(q * (y - v) / a0))
}

/// `N` embedded diagonally in `R × Ω` meets `(-1, 1) × Δ` only in `0`.
/// Returns whether `q` respects this: it lies in that neighbourhood only if
/// it is zero. Membership in `Δ` is tested as `q ∈ U_0`, since `N ∩ Δ = U_0`.
pub fn discreteness_witness(spec: &SequenceSpec, q: &BigRational) -> bool {
    let in_delta = u_chain(spec, 0).contains(q);
    let in_neighbourhood = q.abs() < BigRational::one() && in_delta;
    !in_neighbourhood || q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::sequence::catalog::*;

    fn emb(spec: &SequenceSpec, q: BigRational, p: i64) -> AdicApprox {
        AdicApprox::embed(spec, &q, p).unwrap()
    }

    #[test]
    fn star_examples() {
        let q2 = constant(2);
        let one = emb(&q2, int(1), 6);
        assert_eq!(pair_star(&one, &one).unwrap(), Angle::new(rat(1, 2)));
        let zero = emb(&q2, int(0), 2);
        assert!(pair_star(&one, &zero).unwrap().is_zero());
        let x = emb(&q2, int(2), 6);
        assert!(pair_star(&x, &one).unwrap().is_zero());
    }

    #[test]
    fn sharp_and_general_examples() {
        let q2 = constant(2);
        let half = emb(&q2, rat(1, 2), 6);
        assert_eq!(pair_sharp(&half, &half).unwrap(), Angle::new(rat(1, 4)));
        let one = emb(&q2, int(1), 6);
        assert!(pair_sharp(&one, &one).unwrap().is_zero());
        assert_eq!(pair_general(1, &one, &one).unwrap(), Angle::new(rat(1, 4)));
        assert_eq!(pairing_scale(&three_at_zero(), 0), rat(1, 3));
        assert_eq!(pairing_scale(&three_at_negative(), -2), int(3));
    }

    #[test]
    fn wrong_dual_is_rejected() {
        let a = three_at_zero();
        let x = emb(&a, int(1), 4);
        let y = emb(&constant(5), int(1), 4);
        assert!(matches!(pair_star(&x, &y), Err(AdicError::BadCase(_))));
    }

    #[test]
    fn insufficient_precision() {
        let q2 = constant(2);
        let x = AdicApprox::from_digits(&q2, -3, 0, |_| 1).unwrap();
        let y = AdicApprox::from_digits(&q2, -3, 1, |_| 1).unwrap();
        assert!(matches!(
            pair_star(&x, &y),
            Err(AdicError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn annihilator_levels() {
        assert_eq!(annihilator_level(0, Flavor::Star), 1);
        assert_eq!(annihilator_level(0, Flavor::Sharp), 0);
        assert_eq!(annihilator_level(3, Flavor::Star), -2);
        assert!(verify_annihilator(&constant(2), 0, Flavor::Star, 8).unwrap());
        assert!(verify_annihilator(&three_at_zero(), 1, Flavor::Star, 8).unwrap());
        assert!(verify_annihilator(&three_at_zero(), 1, Flavor::Sharp, 8).unwrap());
        assert!(!verify_annihilator_at(&constant(2), 0, Flavor::Star, 0, 8).unwrap());
        assert!(!verify_annihilator_at(&constant(2), 0, Flavor::Star, 2, 8).unwrap());
    }

    #[test]
    fn characters() {
        let q2 = constant(2);
        for q in [int(1), rat(3, 4), int(-7)] {
            assert!(character_eval(&q2, &rat(5, 8), &rat(5, 8), &q)
                .unwrap()
                .is_zero());
        }
        assert_eq!(
            character_eval(&q2, &int(0), &int(1), &int(1)).unwrap(),
            Angle::new(rat(1, 2))
        );
        assert!(character_eval(&q2, &int(3), &int(1), &int(0))
            .unwrap()
            .is_zero());
        assert!(matches!(
            character_eval(&q2, &int(0), &rat(1, 3), &int(1)),
            Err(AdicError::NotInNStar(_))
        ));
    }

    #[test]
    fn discreteness() {
        let q2 = constant(2);
        assert!(discreteness_witness(&q2, &int(0)));
        assert!(discreteness_witness(&q2, &rat(1, 2)));
        assert!(discreteness_witness(&q2, &int(1)));
        assert!(discreteness_witness(&adeles(), &rat(-5, 6)));
    }

    #[test]
    fn angle_format() {
        let a = Angle::new(rat(-1, 4));
        assert_eq!(a.to_string(), "3/4 mod 1");
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"3/4\"");
        assert_eq!(Angle::zero().to_string(), "0/1 mod 1");
    }
}
