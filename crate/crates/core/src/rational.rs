//! Parsing and formatting of exact rationals, plus serde adapters that keep
//! big numbers as strings on the wire.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AdicError, Result};

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| AdicError::Parse(format!("bad rational '{s}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| AdicError::Parse(format!("bad rational '{s}'")))?;
    if den.is_zero() {
        return Err(AdicError::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_positive(s: &str) -> Result<BigRational> {
    let q = parse_rational(s)?;
    if !q.is_positive() {
        return Err(AdicError::InvalidArgument(format!("{s} is not positive")));
    }
    Ok(q)
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn numer_abs(q: &BigRational) -> BigUint {
    q.numer().magnitude().clone()
}

pub fn denom_abs(q: &BigRational) -> BigUint {
    q.denom().magnitude().clone()
}

pub(crate) mod serde_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_opt_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&super::fmt_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| super::parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub(crate) mod serde_biguint {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(fmt_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(fmt_rational(&int(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_positive("-1/2").is_err());
    }
}
