//! The ax+b group `G = N ⋊ H` acting on a-adic numbers by `(r, h)·x = r + hx`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetic::AdicApprox;
use crate::error::{AdicError, Result};
use crate::lattice::{generalized_index, in_n, in_u, require_n, require_u, FracIdeal};
use crate::rational::{fmt_rational, serde_rational};
use crate::sequence::SequenceSpec;

/// `(r, h)` acting as `q ↦ r + hq`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineElement {
    #[serde(with = "serde_rational")]
    pub r: BigRational,
    #[serde(with = "serde_rational")]
    pub h: BigRational,
}

impl AffineElement {
    pub fn new(r: BigRational, h: BigRational) -> Result<Self> {
        if !h.is_positive() {
            return Err(AdicError::InvalidArgument(format!(
                "multiplier {} must be positive",
                fmt_rational(&h)
            )));
        }
        Ok(AffineElement { r, h })
    }

    pub fn identity() -> Self {
        AffineElement {
            r: BigRational::zero(),
            h: BigRational::one(),
        }
    }

    pub fn translation(r: BigRational) -> Self {
        AffineElement {
            r,
            h: BigRational::one(),
        }
    }

    /// Checks `r ∈ N` and `h ∈ S ∪ {1}`.
    pub fn validate(&self, spec: &SequenceSpec) -> Result<()> {
        require_n(spec, &self.r)?;
        if !self.h.is_one() {
            spec.require_s(&self.h)?;
        }
        Ok(())
    }

    /// `(r1, h1)(r2, h2) = (r1 + h1 r2, h1 h2)`, so that acting by the product
    /// is acting by `g2` first.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            r: &self.r + &self.h * &other.r,
            h: &self.h * &other.h,
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let h_inv = self.h.recip();
        AffineElement {
            r: -(&self.r * &h_inv),
            h: h_inv,
        }
    }

    pub fn act_rational(&self, q: &BigRational) -> BigRational {
        &self.r + &self.h * q
    }

    /// `r + h·x`, with the precision loss of [`AdicApprox::scalar_mul`].
    pub fn act(&self, x: &AdicApprox) -> Result<AdicApprox> {
        let scaled = if self.h.is_one() {
            x.clone()
        } else {
            x.scalar_mul(&self.h)?
        };
        if self.r.is_zero() {
            return Ok(scaled);
        }
        let shift = AdicApprox::embed(x.spec(), &self.r, scaled.precision())?;
        scaled.add(&shift)
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rational(&self.r), fmt_rational(&self.h))
    }
}

/// A subgroup of `S` given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HSubgroup {
    #[serde(with = "serde_rational_vec")]
    pub generators: Vec<BigRational>,
}

mod serde_rational_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{fmt_rational, parse_rational};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl HSubgroup {
    /// Generators equal to 1 are dropped; the rest must be positive.
    pub fn new(generators: Vec<BigRational>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| !g.is_positive()) {
            return Err(AdicError::InvalidArgument(format!(
                "generator {} must be positive",
                fmt_rational(g)
            )));
        }
        Ok(HSubgroup {
            generators: generators.into_iter().filter(|g| !g.is_one()).collect(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn validate(&self, spec: &SequenceSpec) -> Result<()> {
        self.generators.iter().try_for_each(|g| spec.require_s(g))
    }

    /// Smallest integer `s > 1` of the form `∏ g_k^{e_k}` with `|e_k| <= bound`.
    pub fn integral_element(&self, bound: i32) -> Option<BigInt> {
        let k = self.generators.len();
        if k == 0 {
            return None;
        }
        let mut best: Option<BigInt> = None;
        let mut exps = vec![-bound; k];
        loop {
            let s = self
                .generators
                .iter()
                .zip(&exps)
                .fold(BigRational::one(), |acc, (g, &e)| acc * g.pow(e));
            if s.is_integer() && s > BigRational::one() {
                let s = s.to_integer();
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
            // odometer step over the exponent box
            let mut pos = 0;
            while pos < k && exps[pos] == bound {
                exps[pos] = -bound;
                pos += 1;
            }
            if pos == k {
                return best;
            }
            exps[pos] += 1;
        }
    }
}

fn search_bound(generators: usize) -> i32 {
    match generators {
        0..=2 => 6,
        3 => 4,
        4 => 3,
        5..=6 => 2,
        _ => 1,
    }
}

/// `g = (q - sq, s)` with `s ∈ H` an integer `> 1`, so that
/// `g·(q + Ī) = q + sĪ ⊊ q + Ī`.
pub fn contraction_witness(
    spec: &SequenceSpec,
    h: &HSubgroup,
    q: &BigRational,
    ideal: &FracIdeal,
) -> Result<AffineElement> {
    if h.is_trivial() {
        return Err(AdicError::TrivialH);
    }
    h.validate(spec)?;
    require_n(spec, q)?;
    require_u(spec, ideal)?;
    let s = h
        .integral_element(search_bound(h.generators.len()))
        .ok_or(AdicError::NoContraction)?;
    let s = BigRational::from_integer(s);
    let g = AffineElement {
        r: q - &s * q,
        h: s.clone(),
    };
    let image = ideal.scale(&s)?;
    let contracted = in_u(spec, &image) && image.is_subset_of(ideal) && image != *ideal;
    if !contracted || g.act_rational(q) != *q {
        return Err(AdicError::NoContraction);
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedPoints {
    All,
    None,
    /// The only possible fixed point in `N`, if it lies in `N`.
    AtMostOne {
        #[serde(with = "crate::rational::serde_opt_rational")]
        point: Option<BigRational>,
    },
}

/// Fixed points of `g` inside `N`.
pub fn fixed_point_in_n(spec: &SequenceSpec, g: &AffineElement) -> FixedPoints {
    if g.h.is_one() {
        return if g.r.is_zero() {
            FixedPoints::All
        } else {
            FixedPoints::None
        };
    }
    // x = r + hx
    let x = &g.r / (BigRational::one() - &g.h);
    FixedPoints::AtMostOne {
        point: in_n(spec, &x).then_some(x),
    }
}

/// A translation carrying `0` into `q + O_j`.
pub fn orbit_witness(spec: &SequenceSpec, q: &BigRational, j: i64) -> Result<AffineElement> {
    let g = AffineElement::translation(q.clone());
    let target = AdicApprox::embed(spec, q, j)?;
    let image = g.act(&AdicApprox::zero(spec, j))?;
    if !image.eq_mod(&target, j)? {
        return Err(AdicError::InvalidArgument(
            "orbit witness failed verification".into(),
        ));
    }
    Ok(g)
}

/// A translation carrying `0` into the coset represented by a digit window.
pub fn orbit_witness_for(x: &AdicApprox) -> Result<AffineElement> {
    let g = AffineElement::translation(x.representative());
    let image = g.act(&AdicApprox::zero(x.spec(), x.precision()))?;
    if !image.eq_mod(x, x.precision())? {
        return Err(AdicError::InvalidArgument(
            "orbit witness failed verification".into(),
        ));
    }
    Ok(g)
}

/// Modular index `δ(h) = μ(Δ)/μ(h⁻¹Δ)`, the generalized index `[Z : h⁻¹Z]`.
pub fn haar_index(spec: &SequenceSpec, h: &BigRational) -> Result<BigRational> {
    if !h.is_one() {
        spec.require_s(h)?;
    }
    let inv = FracIdeal::generated_by(&h.recip())?;
    Ok(generalized_index(&FracIdeal::integers(), &inv))
}
