//! Digit-level arithmetic on finite windows of a-adic numbers.
//!
//! An [`AdicApprox`] stores digits `x_i` for `floor <= i < precision` and
//! stands for the coset `x + O_precision`. Digits below `floor` are zero.
//! The window value `Σ x_i w_i` is a rational in `N` representing that coset
//! under `Ω/O_j ≅ N/U_j`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AdicError, Result};
use crate::lattice::{place_value, require_n};
use crate::rational::{fmt_rational, serde_opt_rational};
use crate::sequence::SequenceSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdicApprox {
    spec: Arc<SequenceSpec>,
    floor: i64,
    digits: Vec<u64>,
    precision: i64,
    exact: Option<BigRational>,
}

/// Serializable view of the digit window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitWindow {
    pub floor: i64,
    pub digits: Vec<u64>,
    pub precision: i64,
    #[serde(with = "serde_opt_rational", default)]
    pub exact: Option<BigRational>,
}

/// Mixed-radix expansion of `r ∈ N` on `[f, precision)` where `f <= floor_hint`
/// is the first index with `r ∈ w_f Z`.
fn expand(
    spec: &SequenceSpec,
    r: &BigRational,
    floor_hint: i64,
    precision: i64,
) -> (i64, Vec<u64>) {
    let start = floor_hint.min(precision);
    if r.is_zero() {
        return (start, vec![0; (precision - start) as usize]);
    }
    let mut f = start;
    let mut w = place_value(spec, f);
    let mut scaled = r / &w;
    while !scaled.is_integer() {
        f -= 1;
        w /= BigInt::from(spec.entry(f));
        scaled = r / &w;
    }
    let mut z = scaled.to_integer();
    let mut digits = Vec::with_capacity((precision - f) as usize);
    for i in f..precision {
        let (q, d) = z.div_mod_floor(&BigInt::from(spec.entry(i)));
        digits.push(d.to_u64().expect("digit below radix"));
        z = q;
    }
    (f, digits)
}

impl AdicApprox {
    /// `ι(q) mod O_precision`.
    pub fn embed(spec: &SequenceSpec, q: &BigRational, precision: i64) -> Result<Self> {
        require_n(spec, q)?;
        let (floor, digits) = expand(spec, q, 0, precision);
        Ok(AdicApprox {
            spec: Arc::new(spec.clone()),
            floor,
            digits,
            precision,
            exact: Some(q.clone()),
        })
    }

    pub fn zero(spec: &SequenceSpec, precision: i64) -> Self {
        Self::embed(spec, &BigRational::zero(), precision).expect("zero lies in N")
    }

    /// Builds an element from a digit generator evaluated on `[floor, precision)`.
    pub fn from_digits(
        spec: &SequenceSpec,
        floor: i64,
        precision: i64,
        digit: impl Fn(i64) -> u64,
    ) -> Result<Self> {
        if floor > precision {
            return Err(AdicError::InvalidArgument(format!(
                "floor {floor} exceeds precision {precision}"
            )));
        }
        let mut digits = Vec::with_capacity((precision - floor) as usize);
        for i in floor..precision {
            let (d, radix) = (digit(i), spec.entry(i));
            if d >= radix {
                return Err(AdicError::DigitOutOfRange {
                    index: i,
                    digit: d,
                    radix,
                });
            }
            digits.push(d);
        }
        Ok(AdicApprox {
            spec: Arc::new(spec.clone()),
            floor,
            digits,
            precision,
            exact: None,
        })
    }

    /// Normalizes arbitrary nonnegative digit values by carrying upward; the
    /// carry out of the top position is dropped.
    pub fn from_raw_digits(spec: &SequenceSpec, floor: i64, raw: &[u64]) -> Self {
        let spec = Arc::new(spec.clone());
        let digits = carry(&spec, floor, raw.iter().map(|&d| d as u128));
        AdicApprox {
            precision: floor + raw.len() as i64,
            spec,
            floor,
            digits,
            exact: None,
        }
    }

    pub fn from_window(spec: &SequenceSpec, window: &DigitWindow) -> Result<Self> {
        let digits = window.digits.clone();
        if digits.len() as i64 != window.precision - window.floor {
            return Err(AdicError::InvalidArgument(
                "digit count does not match window".into(),
            ));
        }
        let mut x = Self::from_digits(spec, window.floor, window.precision, |i| {
            digits[(i - window.floor) as usize]
        })?;
        if let Some(q) = &window.exact {
            let check = Self::embed(spec, q, window.precision)?;
            if !x.eq_mod(&check, window.precision)? {
                return Err(AdicError::InvalidArgument(
                    "exact tag disagrees with the digits".into(),
                ));
            }
            x.exact = Some(q.clone());
        }
        Ok(x)
    }

    pub fn window(&self) -> DigitWindow {
        DigitWindow {
            floor: self.floor,
            digits: self.digits.clone(),
            precision: self.precision,
            exact: self.exact.clone(),
        }
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    /// Digit at index `i`, or `None` above the known window.
    pub fn digit(&self, i: i64) -> Option<u64> {
        if i >= self.precision {
            None
        } else if i < self.floor {
            Some(0)
        } else {
            Some(self.digits[(i - self.floor) as usize])
        }
    }

    /// Index of the first nonzero digit, if any digit in the window is nonzero.
    pub fn valuation(&self) -> Option<i64> {
        self.digits
            .iter()
            .position(|&d| d != 0)
            .map(|k| self.floor + k as i64)
    }

    /// Raises the floor to the true valuation; an all-zero window collapses to
    /// `floor = precision`.
    pub fn normalized(&self) -> Self {
        let v = self.valuation().unwrap_or(self.precision);
        AdicApprox {
            digits: self.digits[(v - self.floor) as usize..].to_vec(),
            floor: v,
            ..self.clone()
        }
    }

    /// Truncation value `x^{(j)} = Σ_{i <= j} x_i w_i`.
    pub fn truncation_value(&self, j: i64) -> Result<BigRational> {
        if j >= self.precision {
            return Err(AdicError::InsufficientPrecision {
                needed: j + 1,
                available: self.precision,
            });
        }
        let mut acc = BigRational::zero();
        if j < self.floor {
            return Ok(acc);
        }
        let mut w = place_value(&self.spec, self.floor);
        for i in self.floor..=j {
            let d = self.digits[(i - self.floor) as usize];
            if d != 0 {
                acc += &w * BigInt::from(d);
            }
            w *= BigInt::from(self.spec.entry(i));
        }
        Ok(acc)
    }

    /// The window value, a rational representative of `x + O_precision`.
    pub fn representative(&self) -> BigRational {
        self.truncation_value(self.precision - 1)
            .expect("precision - 1 is inside the window")
    }

    fn check_same_spec(&self, other: &AdicApprox) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec)
            || *self.spec == *other.spec
            || self.spec.same_sequence(&other.spec)
        {
            Ok(())
        } else {
            Err(AdicError::SpecMismatch)
        }
    }

    /// Addition with carry, ascending from the lower floor.
    pub fn add(&self, other: &AdicApprox) -> Result<AdicApprox> {
        self.check_same_spec(other)?;
        let precision = self.precision.min(other.precision);
        let floor = self.floor.min(other.floor);
        let sums = (floor..precision)
            .map(|i| self.digit(i).unwrap_or(0) as u128 + other.digit(i).unwrap_or(0) as u128);
        let digits = carry(&self.spec, floor, sums);
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(AdicApprox {
            spec: self.spec.clone(),
            floor,
            digits,
            precision,
            exact,
        })
    }

    pub fn negate(&self) -> AdicApprox {
        let (floor, digits) = expand(
            &self.spec,
            &-self.representative(),
            self.floor,
            self.precision,
        );
        AdicApprox {
            spec: self.spec.clone(),
            floor,
            digits,
            precision: self.precision,
            exact: self.exact.as_ref().map(|q| -q),
        }
    }

    pub fn sub(&self, other: &AdicApprox) -> Result<AdicApprox> {
        self.add(&other.negate())
    }

    /// Precision left after dividing by `n`: the largest `j' <= j` such that
    /// `n` divides `a_{j'}⋯a_{j-1}`, i.e. the largest `j'` with `U_j ⊆ n·U_{j'}`.
    pub fn division_precision(spec: &SequenceSpec, n: &BigInt, j: i64) -> i64 {
        let mut jp = j;
        let mut prod = BigInt::from(1) % n;
        while !prod.is_zero() {
            jp -= 1;
            prod = (prod * BigInt::from(spec.entry(jp))) % n;
        }
        jp
    }

    /// Multiplication by a positive integer, or by `h ∈ S`.
    ///
    /// Division by the denominator of `h` costs precision per
    /// [`AdicApprox::division_precision`]. A non-integral `h` outside `S` is
    /// rejected: such multipliers are not continuous on the a-adic numbers.
    pub fn scalar_mul(&self, h: &BigRational) -> Result<AdicApprox> {
        if !h.is_positive() {
            return Err(AdicError::InvalidArgument(format!(
                "multiplier {} must be positive",
                fmt_rational(h)
            )));
        }
        let (floor_hint, precision) = if h.is_integer() {
            (self.floor, self.precision)
        } else {
            self.spec.require_s(h)?;
            let jp = Self::division_precision(&self.spec, h.denom(), self.precision);
            (self.floor.min(jp), jp)
        };
        let (floor, digits) = expand(
            &self.spec,
            &(self.representative() * h),
            floor_hint,
            precision,
        );
        Ok(AdicApprox {
            spec: self.spec.clone(),
            floor,
            digits,
            precision,
            exact: self.exact.as_ref().map(|q| q * h),
        })
    }

    pub fn scalar_mul_int(&self, n: u64) -> AdicApprox {
        if n == 0 {
            return AdicApprox {
                exact: self.exact.as_ref().map(|_| BigRational::zero()),
                ..Self::zero(&self.spec, self.precision)
            };
        }
        self.scalar_mul(&BigRational::from_integer(BigInt::from(n)))
            .expect("positive integers always act")
    }

    /// Keeps the digits below `j`.
    pub fn truncate(&self, j: i64) -> Result<AdicApprox> {
        if j > self.precision {
            return Err(AdicError::InsufficientPrecision {
                needed: j,
                available: self.precision,
            });
        }
        let floor = self.floor.min(j);
        let digits = (floor..j).map(|i| self.digit(i).unwrap_or(0)).collect();
        Ok(AdicApprox {
            spec: self.spec.clone(),
            floor,
            digits,
            precision: j,
            exact: self.exact.clone(),
        })
    }

    /// Re-embeds an exact element at a different precision.
    pub fn refine(&self, precision: i64) -> Result<AdicApprox> {
        match &self.exact {
            Some(q) => Self::embed(&self.spec, q, precision),
            None => Err(AdicError::InsufficientPrecision {
                needed: precision,
                available: self.precision,
            }),
        }
    }

    /// Equality of cosets modulo `O_j`.
    pub fn eq_mod(&self, other: &AdicApprox, j: i64) -> Result<bool> {
        self.check_same_spec(other)?;
        let available = self.precision.min(other.precision);
        if j > available {
            return Err(AdicError::InsufficientPrecision {
                needed: j,
                available,
            });
        }
        let lo = self.floor.min(other.floor);
        Ok((lo..j).all(|i| self.digit(i) == other.digit(i)))
    }
}

fn carry(spec: &SequenceSpec, floor: i64, raw: impl Iterator<Item = u128>) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 0u128;
    for (k, s) in raw.enumerate() {
        let radix = spec.entry(floor + k as i64) as u128;
        let total = s + c;
        out.push((total % radix) as u64);
        c = total / radix;
    }
    out
}

impl fmt::Display for AdicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "{{floor:{}, digits:[{}], precision:{}}}",
            self.floor,
            digits.join(","),
            self.precision
        )
    }
}
