//! Closed `f64` intervals with outward rounding.
//!
//! Every arithmetic result is computed in round-to-nearest and then widened
//! by one ulp on each side, which encloses the exact result.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Exactly representable point.
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    fn rounded(lo: f64, hi: f64) -> Self {
        Self { lo: lo.next_down(), hi: hi.next_up() }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        self.lo / 2.0 + self.hi / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn max(self, other: Self) -> Self {
        Self { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn powi(self, e: u32) -> Self {
        (0..e).fold(Interval::ONE, |acc, _| acc * self)
    }

    /// Enclosure of an exact rational.
    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::ZERO;
        }
        let (lo, hi) = positive_bounds(&r.numer().abs(), r.denom());
        if r.is_negative() {
            Self { lo: -hi, hi: -lo }
        } else {
            Self { lo, hi }
        }
    }

    /// Enclosure of `ln x` for `x > 0`.
    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of nonpositive interval");
        Self { lo: ln_bounds(self.lo).lo, hi: ln_bounds(self.hi).hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        if self.is_exact() && o.is_exact() && (self.lo == 0.0 || o.lo == 0.0) {
            return Interval::point(self.lo + o.lo);
        }
        Interval::rounded(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::rounded(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        if (self.is_exact() && (self.lo == 0.0 || self.lo == 1.0)) || (o.is_exact() && (o.lo == 0.0 || o.lo == 1.0)) {
            let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
            return Interval::new(p.iter().copied().fold(f64::INFINITY, f64::min), p.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        }
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Interval::rounded(p.iter().copied().fold(f64::INFINITY, f64::min), p.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        Interval::rounded(p.iter().copied().fold(f64::INFINITY, f64::min), p.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }
}

/// `(lo, hi)` with `lo ≤ a/b ≤ hi`, for `a, b > 0`.
fn positive_bounds(a: &BigInt, b: &BigInt) -> (f64, f64) {
    // a/b ∈ [q, q+1)·2^-s with q carrying about 64 significant bits
    let s = 64 + b.bits() as i64 - a.bits() as i64;
    let (scaled, lost) = if s >= 0 {
        (a << (s as usize), false)
    } else {
        let t = a >> ((-s) as usize);
        let lost = (&t << ((-s) as usize)) != *a;
        (t, lost)
    };
    let q = &scaled / b;
    let exact = !lost && (&q * b) == scaled;
    let (ql, q_exact) = truncate_to_f64(&q);
    let lo = scale_pow2(ql, -s);
    if exact && q_exact {
        return (lo, lo);
    }
    let (h, h_exact) = truncate_to_f64(&(q + 1u32));
    (lo, scale_pow2(if h_exact { h } else { h.next_up() }, -s))
}

/// Largest `f64 ≤ q`, and whether it is exact.
fn truncate_to_f64(q: &BigInt) -> (f64, bool) {
    debug_assert!(q.sign() != Sign::Minus);
    let bits = q.bits();
    if bits <= 53 {
        return (u64::try_from(q).expect("fits") as f64, true);
    }
    let drop = bits - 53;
    let top = q >> (drop as usize);
    let exact = (&top << (drop as usize)) == *q;
    (scale_pow2(u64::try_from(&top).expect("53 bits") as f64, drop as i64), exact)
}

fn scale_pow2(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 500 {
        x *= 2f64.powi(500);
        e -= 500;
    }
    while e < -500 {
        x *= 2f64.powi(-500);
        e += 500;
    }
    x * 2f64.powi(e as i32)
}

/// `ln 2` widened by one ulp.
pub fn ln2() -> Interval {
    Interval::new(std::f64::consts::LN_2.next_down(), std::f64::consts::LN_2.next_up())
}

const ATANH_TERMS: u32 = 40;

/// Enclosure of `ln x` for a positive double `x`: `x = u·2^e` with
/// `u ∈ [1, 2)`, `ln u = 2 atanh((u-1)/(u+1))` summed with a remainder
/// bound.
fn ln_bounds(x: f64) -> Interval {
    assert!(x > 0.0 && x.is_finite());
    if x == 1.0 {
        return Interval::ZERO;
    }
    let (u, e) = split(x);
    let ui = Interval::point(u);
    let z = (ui - Interval::ONE) / (ui + Interval::ONE);
    let z2 = z * z;
    let mut term = z;
    let mut sum = Interval::ZERO;
    for i in 0..ATANH_TERMS {
        sum = sum + term / Interval::point((2 * i + 1) as f64);
        term = term * z2;
    }
    // tail Σ_{i≥N} z^{2i+1}/(2i+1) ≤ z^{2N+1} / ((2N+1)(1 - z²))
    let tail = term / (Interval::point((2 * ATANH_TERMS + 1) as f64) * (Interval::ONE - z2));
    let ln_u = Interval::point(2.0) * Interval::new(sum.lo, (sum + tail).hi);
    Interval::point(e as f64) * ln2() + ln_u
}

fn split(x: f64) -> (f64, i32) {
    let mut e = x.log2().floor() as i32;
    let mut u = x / 2f64.powi(e);
    while u >= 2.0 {
        u /= 2.0;
        e += 1;
    }
    while u < 1.0 {
        u *= 2.0;
        e -= 1;
    }
    (u, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ln_encloses_libm() {
        for &x in &[1.0, 1.5, 2.0, 3.0, 0.3, 1e-5, 12345.678, 2f64.powi(40), 1.0 + f64::EPSILON] {
            let i = Interval::point(x).ln();
            assert!(i.contains(x.ln()), "{x}: {i}");
            assert!(i.width() <= 1e-13 * x.ln().abs().max(1e-300) + 1e-300 || x == 1.0, "{x}: {i}");
        }
        assert!(ln2().contains(std::f64::consts::LN_2));
    }

    #[test]
    fn rational_enclosures() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let i = Interval::from_rational(&third);
        assert!(i.lo <= 1.0 / 3.0 && i.hi > 1.0 / 3.0, "{i}");
        assert!(i.lo <= i.hi && i.width() < 1e-16);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(Interval::from_rational(&half).contains(0.5));
        let big = BigRational::from_integer(BigInt::from(3) << 80usize);
        assert!(Interval::from_rational(&big).contains(3.0 * 2f64.powi(80)));
        let neg = BigRational::new(BigInt::from(-5), BigInt::from(7));
        assert!(Interval::from_rational(&neg).hi < 0.0);
    }

    #[test]
    fn arithmetic_is_outward() {
        let a = Interval::point(0.1);
        let s = a + a + a;
        assert!(s.lo <= 0.30000000000000004 && s.hi >= 0.3);
        let p = Interval::new(-1.0, 2.0) * Interval::new(-3.0, 0.5);
        assert!(p.lo <= -6.0 && p.hi >= 3.0);
    }
}
