//! Exact dyadic rationals `n / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number whose denominator is a power of two.
///
/// Always stored in canonical form: the numerator is odd, or the value is
/// zero and the exponent is `0`. Equality and hashing are therefore
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigInt,
    exponent: u32,
}

impl DyadicRational {
    pub fn zero() -> Self {
        Self { numerator: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// `numerator / 2^exponent`, canonicalized.
    pub fn new(numerator: BigInt, exponent: u32) -> Self {
        let mut out = Self { numerator, exponent };
        out.normalize();
        out
    }

    /// `2^-e`.
    pub fn pow2_neg(e: u32) -> Self {
        Self { numerator: BigInt::one(), exponent: e }
    }

    /// `2^e` for any signed `e`.
    pub fn pow2(e: i64) -> Self {
        if e >= 0 {
            Self { numerator: BigInt::one() << (e as usize), exponent: 0 }
        } else {
            Self::pow2_neg((-e) as u32)
        }
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exponent as u64) as u32;
        if shift > 0 {
            self.numerator >>= shift as usize;
            self.exponent -= shift;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { numerator: self.numerator.abs(), exponent: self.exponent }
    }

    /// Multiply by `2^shift`.
    pub fn mul_pow2(&self, shift: i64) -> Self {
        if shift >= 0 {
            let s = shift as u64;
            if s <= self.exponent as u64 {
                Self::new(self.numerator.clone(), self.exponent - s as u32)
            } else {
                let extra = s - self.exponent as u64;
                Self::new(&self.numerator << (extra as usize), 0)
            }
        } else {
            Self::new(self.numerator.clone(), self.exponent + (-shift) as u32)
        }
    }

    /// If the value equals `2^-e` with `e >= 0`, returns `e`.
    pub fn as_pow2_neg(&self) -> Option<u32> {
        (self.numerator.is_one()).then_some(self.exponent)
    }

    /// Numerator rescaled to the denominator `2^exponent`, provided
    /// `exponent >= self.exponent()`.
    pub fn numerator_at(&self, exponent: u32) -> Option<BigInt> {
        (exponent >= self.exponent).then(|| &self.numerator << ((exponent - self.exponent) as usize))
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << (self.exponent as usize))
    }

    /// Converts an exact rational, failing unless its denominator is a power of two.
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let d = r.denom();
        let e = d.trailing_zeros().unwrap_or(0);
        if (d >> (e as usize)).is_one() {
            Ok(Self::new(r.numer().clone(), e as u32))
        } else {
            Err(Error::Parse(format!("{r} has a non-dyadic denominator")))
        }
    }

    /// Nearest `f64`; exact whenever the value is representable.
    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        if bits <= 53 {
            let n = self.numerator.to_f64().unwrap_or(f64::NAN);
            n * 2f64.powi(-(self.exponent as i32))
        } else {
            let drop = bits - 53;
            let head = (&self.numerator >> (drop as usize)).to_f64().unwrap_or(f64::NAN);
            head * 2f64.powi(drop as i32 - self.exponent as i32)
        }
    }

    /// True when `to_f64` is exact.
    pub fn fits_f64(&self) -> bool {
        let e = self.exponent as i64;
        self.numerator.bits() <= 53 && e < 1000
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << ((e - self.exponent) as usize);
        let b = &other.numerator << ((e - other.exponent) as usize);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator << ((e - self.exponent) as usize);
        let b = &rhs.numerator << ((e - rhs.exponent) as usize);
        DyadicRational::new(a + b, e)
    }
}

impl<'a> Sub<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator << ((e - self.exponent) as usize);
        let b = &rhs.numerator << ((e - rhs.exponent) as usize);
        DyadicRational::new(a - b, e)
    }
}

impl<'a> Mul<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: &DyadicRational) -> DyadicRational {
        DyadicRational::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: DyadicRational) -> DyadicRational {
        &self - &rhs
    }
}

impl Mul for DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: DyadicRational) -> DyadicRational {
        &self * &rhs
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        DyadicRational { numerator: -self.numerator, exponent: self.exponent }
    }
}

impl std::iter::Sum for DyadicRational {
    fn sum<I: Iterator<Item = DyadicRational>>(iter: I) -> Self {
        iter.fold(DyadicRational::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for DyadicRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

/// Canonical text form `num/2^e`.
impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `num/2^e`, a plain integer, or `num/den` with `den` a power of two.
impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid dyadic rational {s:?}"));
        match s.split_once('/') {
            None => BigInt::from_str(s).map(Self::from_integer).map_err(|_| bad()),
            Some((num, den)) => {
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = den.trim();
                if let Some(e) = den.strip_prefix("2^") {
                    let e: u32 = e.parse().map_err(|_| bad())?;
                    Ok(Self::new(num, e))
                } else {
                    let den = BigInt::from_str(den).map_err(|_| bad())?;
                    if !den.is_positive() {
                        return Err(bad());
                    }
                    let e = den.trailing_zeros().unwrap_or(0);
                    if !(&den >> (e as usize)).is_one() {
                        return Err(bad());
                    }
                    Ok(Self::new(num, e as u32))
                }
            }
        }
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses an exact rational `a/b` or integer `a`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = if let Some(e) = b.trim().strip_prefix("2^") {
                let e: usize = e.parse().map_err(|_| bad())?;
                BigInt::one() << e
            } else {
                BigInt::from_str(b.trim()).map_err(|_| bad())?
            };
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
    }
}

/// `floor(log2(x))` for a positive rational.
pub(crate) fn floor_log2(r: &BigRational) -> i64 {
    debug_assert!(r.is_positive());
    let (n, d) = (r.numer().abs(), r.denom().clone());
    let mut e = n.bits() as i64 - d.bits() as i64;
    // 2^e <= n/d < 2^(e+1) after at most one correction
    let ge = |e: i64| -> bool {
        if e >= 0 {
            n >= (&d << (e as usize))
        } else {
            (&n << ((-e) as usize)) >= d
        }
    };
    if !ge(e) {
        e -= 1;
    }
    e
}

impl DyadicRational {
    /// Exact integer part, rounded toward negative infinity.
    pub fn floor(&self) -> BigInt {
        self.numerator.div_floor(&(BigInt::one() << (self.exponent as usize)))
    }
}
