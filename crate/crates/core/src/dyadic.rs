//! Exact rationals whose denominator is a power of two.
//!
//! Every bias handled by this crate is an integer sum of `±1` terms divided by
//! a power of two, and products of such biases stay dyadic. Numerators can get
//! far wider than a machine word (a product of eight 13-variable biases has a
//! 104-bit denominator), so they are kept as [`BigInt`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `numerator / 2^log2_denominator`, always kept in canonical form.
///
/// Canonical form: the numerator is odd, or the numerator is zero and the
/// exponent is zero. Two equal values therefore compare equal field by field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigInt,
    log2_denominator: u64,
}

impl DyadicRational {
    pub fn new(numerator: impl Into<BigInt>, log2_denominator: u64) -> Self {
        let mut value = Self {
            numerator: numerator.into(),
            log2_denominator,
        };
        value.normalize();
        value
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// `2^exponent` for any signed exponent.
    pub fn pow2(exponent: i64) -> Self {
        if exponent >= 0 {
            Self::new(BigInt::one() << exponent as u64, 0)
        } else {
            Self::new(1, exponent.unsigned_abs())
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn log2_denominator(&self) -> u64 {
        self.log2_denominator
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::one() << self.log2_denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            numerator: self.numerator.abs(),
            log2_denominator: self.log2_denominator,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        Self::new(
            num_traits::pow(self.numerator.clone(), exponent as usize),
            self.log2_denominator * u64::from(exponent),
        )
    }

    /// Multiplies by `2^shift`.
    pub fn shl(&self, shift: u64) -> Self {
        if shift <= self.log2_denominator {
            Self::new(self.numerator.clone(), self.log2_denominator - shift)
        } else {
            Self::new(&self.numerator << (shift - self.log2_denominator), 0)
        }
    }

    /// Divides by `2^shift`.
    pub fn shr(&self, shift: u64) -> Self {
        Self::new(self.numerator.clone(), self.log2_denominator + shift)
    }

    /// `log2(|value|)`, or negative infinity for zero. Accurate for numerators
    /// of any width.
    pub fn log2_abs(&self) -> f64 {
        if self.numerator.is_zero() {
            return f64::NEG_INFINITY;
        }
        let magnitude = self.numerator.magnitude();
        let bits = magnitude.bits();
        // Keep the top 64 bits for the mantissa.
        let drop = bits.saturating_sub(64);
        let top = (magnitude >> drop).to_f64().unwrap_or(f64::MAX);
        top.log2() + drop as f64 - self.log2_denominator as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.numerator.is_zero() {
            return 0.0;
        }
        let sign = if self.numerator.is_negative() {
            -1.0
        } else {
            1.0
        };
        sign * self.log2_abs().exp2()
    }

    /// Returns `n` if the value is exactly `2^n` (so positive).
    pub fn exact_log2(&self) -> Option<i64> {
        if self.numerator.is_one() {
            Some(-(self.log2_denominator as i64))
        } else if self.log2_denominator == 0 && self.numerator.is_positive() {
            let magnitude = self.numerator.magnitude();
            let bits = magnitude.bits();
            (magnitude.trailing_zeros() == Some(bits - 1)).then(|| bits as i64 - 1)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.log2_denominator = 0;
            return;
        }
        let twos = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = twos.min(self.log2_denominator);
        if shift > 0 {
            self.numerator >>= shift;
            self.log2_denominator -= shift;
        }
    }

    /// Both numerators scaled to the common denominator `2^max(d1, d2)`.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let d = self.log2_denominator.max(other.log2_denominator);
        (
            &self.numerator << (d - self.log2_denominator),
            &other.numerator << (d - other.log2_denominator),
            d,
        )
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for DyadicRational {
    fn from(value: i64) -> Self {
        Self::new(value, 0)
    }
}

impl From<BigInt> for DyadicRational {
    fn from(value: BigInt) -> Self {
        Self::new(value, 0)
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numerator.sign(), other.numerator.sign()) {
            (a, b) if a != b => sign_rank(a).cmp(&sign_rank(b)),
            _ => {
                let (a, b, _) = self.aligned(other);
                a.cmp(&b)
            }
        }
    }
}

fn sign_rank(sign: Sign) -> i8 {
    match sign {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: Self) -> DyadicRational {
        let (a, b, d) = self.aligned(rhs);
        DyadicRational::new(a + b, d)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: Self) -> DyadicRational {
        &self + &rhs
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: Self) -> DyadicRational {
        let (a, b, d) = self.aligned(rhs);
        DyadicRational::new(a - b, d)
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: Self) -> DyadicRational {
        &self - &rhs
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;

    fn mul(self, rhs: Self) -> DyadicRational {
        DyadicRational::new(
            &self.numerator * &rhs.numerator,
            self.log2_denominator + rhs.log2_denominator,
        )
    }
}

impl Mul for DyadicRational {
    type Output = DyadicRational;

    fn mul(self, rhs: Self) -> DyadicRational {
        &self * &rhs
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;

    fn neg(self) -> DyadicRational {
        Self {
            numerator: -self.numerator,
            log2_denominator: self.log2_denominator,
        }
    }
}

/// Renders as `numerator/denominator` with the denominator in decimal, or a
/// bare integer when the denominator is one (`1/4`, `-3/8`, `0`, `1`).
impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_denominator == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

/// Wire form: the numerator travels as a decimal string so that values wider
/// than 2^53 survive JSON consumers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DyadicJson {
    pub numerator: String,
    pub log2_denominator: u64,
    pub log2_abs: Option<f64>,
    pub display: String,
}

impl From<&DyadicRational> for DyadicJson {
    fn from(value: &DyadicRational) -> Self {
        let log2 = value.log2_abs();
        Self {
            numerator: value.numerator.to_string(),
            log2_denominator: value.log2_denominator,
            log2_abs: log2.is_finite().then_some(log2),
            display: value.to_string(),
        }
    }
}

impl TryFrom<&DyadicJson> for DyadicRational {
    type Error = num_bigint::ParseBigIntError;

    fn try_from(value: &DyadicJson) -> Result<Self, Self::Error> {
        Ok(Self::new(
            value.numerator.parse::<BigInt>()?,
            value.log2_denominator,
        ))
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DyadicJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = DyadicJson::deserialize(deserializer)?;
        DyadicRational::try_from(&wire).map_err(serde::de::Error::custom)
    }
}
