//! Orlicz functions `t^p` and `Φ_d(t) = t(1 + log_+^d t)`, weak-type
//! functionals, and the sharpness harness for counterexample bundles.
//!
//! Level-set measures are exact. Integrals involving logarithms are
//! enclosed in outward-rounded intervals, and an inequality passes only
//! when it holds at the unfavourable endpoint.

mod interval;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use interval::{ln2, Interval};

use crate::constructions::{CounterexampleBundle, Measured};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::maximal::maximal_function;
use crate::poset::{project, property_c_check, width};
use crate::rect::RectangleFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrliczFn {
    /// `t^p`, integer `p ≥ 1`.
    Power(u32),
    /// `Φ_d(t) = t(1 + log_+^d t)`, with `Φ_0(t) = t`.
    Phi(u32),
}

impl fmt::Display for OrliczFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrliczFn::Power(p) => write!(f, "p:{p}"),
            OrliczFn::Phi(d) => write!(f, "d:{d}"),
        }
    }
}

/// `p:P` or `d:D`.
impl FromStr for OrliczFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected p:<int ≥ 1> or d:<int ≥ 0>, got {s:?}"));
        let (kind, val) = s.trim().split_once(':').ok_or_else(bad)?;
        let v: u32 = val.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "p" if v >= 1 => Ok(OrliczFn::Power(v)),
            "d" => Ok(OrliczFn::Phi(v)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for OrliczFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A value known exactly when possible, always enclosed.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    pub interval: Interval,
    pub exact: Option<BigRational>,
}

impl Enclosure {
    pub fn exact(r: BigRational) -> Self {
        Self { interval: Interval::from_rational(&r), exact: Some(r) }
    }

    pub fn approx(interval: Interval) -> Self {
        Self { interval, exact: None }
    }

    pub fn lo(&self) -> f64 {
        self.interval.lo
    }

    pub fn hi(&self) -> f64 {
        self.interval.hi
    }

    fn add(&self, other: &Enclosure) -> Enclosure {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Enclosure::exact(a + b),
            _ => Enclosure::approx(self.interval + other.interval),
        }
    }

    fn scale(&self, c: &BigRational) -> Enclosure {
        match &self.exact {
            Some(a) => Enclosure::exact(a * c),
            None => Enclosure::approx(self.interval * Interval::from_rational(c)),
        }
    }
}

impl OrliczFn {
    /// `Φ(t)` for `t ≥ 0`.
    pub fn eval(&self, t: &BigRational) -> Enclosure {
        assert!(!t.is_negative(), "Orlicz functions take nonnegative arguments");
        match *self {
            OrliczFn::Power(p) => Enclosure::exact(num_traits::pow(t.clone(), p as usize)),
            OrliczFn::Phi(0) => Enclosure::exact(t.clone()),
            OrliczFn::Phi(_) if *t <= BigRational::one() => Enclosure::exact(t.clone()),
            OrliczFn::Phi(d) => {
                let ti = Interval::from_rational(t);
                Enclosure::approx(ti * (Interval::ONE + ti.ln().powi(d)))
            }
        }
    }

    /// `Φ = o(Φ_d)` at infinity.
    pub fn is_little_o_of_phi(&self, d: u32) -> bool {
        match *self {
            OrliczFn::Power(p) => p == 1 && d >= 1,
            OrliczFn::Phi(e) => e < d,
        }
    }
}

/// `∫ Φ(scale·|f|)`, grouped by distinct values of `f`.
pub fn orlicz_integral(f: &GridFunction, phi: OrliczFn, scale: &BigRational) -> Enclosure {
    let vol = f.spec().cell_volume().to_rational();
    let mut total = Enclosure::exact(BigRational::zero());
    for (v, count) in f.abs().histogram() {
        if v.is_zero() {
            continue;
        }
        let w = &vol * BigRational::from_integer(BigInt::from(count));
        total = total.add(&phi.eval(&(scale * v.to_rational())).scale(&w));
    }
    total
}

/// `lhs / rhs` as an interval, `rhs ≥ 0`.
fn ratio(lhs: &BigRational, rhs: &Enclosure) -> Interval {
    let l = Interval::from_rational(lhs);
    if rhs.hi() == 0.0 {
        return if lhs.is_zero() { Interval::ZERO } else { Interval::point(f64::INFINITY) };
    }
    if rhs.lo() <= 0.0 {
        return Interval::new((l / Interval::point(rhs.hi())).lo, f64::INFINITY);
    }
    l / rhs.interval
}

/// Both sides of `|{M f > λ}| ≤ ∫Φ(C|f|/λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakTypeReport {
    pub lambda: DyadicRational,
    pub c: DyadicRational,
    pub phi: OrliczFn,
    pub level_measure: DyadicRational,
    pub orlicz_integral: Enclosure,
    pub ratio: Interval,
}

pub fn weak_type_ratio(family: &RectangleFamily, f: &GridFunction, lambda: &DyadicRational, c: &DyadicRational, phi: OrliczFn) -> Result<WeakTypeReport> {
    if lambda.is_zero() || lambda.is_negative() {
        return Err(Error::InvalidArgument(format!("λ must be positive, got {lambda}")));
    }
    let m = maximal_function(f, family)?;
    let level_measure = m.superlevel(lambda, true).measure();
    let scale = c.to_rational() / lambda.to_rational();
    let integral = orlicz_integral(f, phi, &scale);
    Ok(WeakTypeReport {
        lambda: lambda.clone(),
        c: c.clone(),
        phi,
        ratio: ratio(&level_measure.to_rational(), &integral),
        level_measure,
        orlicz_integral: integral,
    })
}

/// A bundle with `M χ_Θ` and its measured constants.
#[derive(Debug, Clone)]
pub struct Evaluated {
    pub bundle: CounterexampleBundle,
    pub m_theta: GridFunction,
    pub measured: Measured,
}

impl Evaluated {
    pub fn new(bundle: CounterexampleBundle) -> Result<Self> {
        let m_theta = bundle.maximal_theta()?;
        let measured = bundle.measure_with(&m_theta)?;
        Ok(Self { bundle, m_theta, measured })
    }

    /// Largest power of two `≤` the measured `c′`, `None` when `c′ < 1`
    /// or hypothesis (iii) fails.
    pub fn c_prime_used(&self) -> Option<u32> {
        let lower = &self.bundle.claimed_c_prime * DyadicRational::pow2(-((self.bundle.d * self.bundle.k) as i64)).to_rational();
        if self.measured.min_m.to_rational() < lower {
            return None;
        }
        let c = self.measured.c_prime.floor();
        (c >= BigInt::one()).then(|| (c.bits() - 1) as u32)
    }

    /// `f_k = 2^{dk} / c′ · χ_Θ` with `c′ = 2^e` from [`Self::c_prime_used`].
    pub fn f_k(&self) -> Option<(DyadicRational, GridFunction)> {
        let e = self.c_prime_used()?;
        let height = DyadicRational::pow2((self.bundle.d * self.bundle.k) as i64 - e as i64);
        let f = GridFunction::from_set(&self.bundle.theta, &height).ok()?;
        Some((height, f))
    }
}

/// `|{M f_k ≥ 1}| ≥ (c·c′/d^d) ∫Φ_d(f_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaReport {
    pub n: usize,
    pub k: u32,
    pub d: u32,
    /// `c′` used for `f_k`, a power of two.
    pub c_prime: Option<DyadicRational>,
    pub lhs: Option<DyadicRational>,
    pub rhs: Option<Enclosure>,
    pub margin: Option<Interval>,
    pub min_m: DyadicRational,
    pub witness: usize,
    pub passes: bool,
}

pub fn kappa_check(ev: &Evaluated) -> Result<KappaReport> {
    let b = &ev.bundle;
    let mut report = KappaReport {
        n: b.n,
        k: b.k,
        d: b.d,
        c_prime: None,
        lhs: None,
        rhs: None,
        margin: None,
        min_m: ev.measured.min_m.clone(),
        witness: ev.measured.witness,
        passes: false,
    };
    let (Some(e), Some((height, f))) = (ev.c_prime_used(), ev.f_k()) else {
        return Ok(report);
    };
    let mf = ev.m_theta.scaled(&height)?;
    let lhs = mf.superlevel(&DyadicRational::one(), false).measure();
    let c_prime = DyadicRational::pow2(e as i64);
    let dd = BigRational::from_integer(BigInt::from(b.d).pow(b.d));
    let kappa_inv = &b.claimed_c * c_prime.to_rational() / dd;
    let rhs = orlicz_integral(&f, OrliczFn::Phi(b.d), &BigRational::one()).scale(&kappa_inv);
    report.passes = Interval::from_rational(&lhs.to_rational()).lo >= rhs.hi();
    report.margin = Some(ratio(&lhs.to_rational(), &rhs));
    report.c_prime = Some(c_prime);
    report.lhs = Some(lhs);
    report.rhs = Some(rhs);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub k: u32,
    /// `∫Φ_d(f_k)`.
    pub numerator: Option<Enclosure>,
    /// `∫Φ(C f_k)`.
    pub denominator: Option<Enclosure>,
    pub ratio: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub d: u32,
    pub phi: OrliczFn,
    pub c: DyadicRational,
    pub entries: Vec<SweepEntry>,
    /// Strictly increasing (certified) with last/first `≥ 2`: a finite-sweep
    /// proxy for divergence.
    pub diverging: bool,
}

/// `∫Φ_d(f_k) / ∫Φ(C f_k)` across bundles of one `d`.
pub fn divergence_sweep(bundles: &[Evaluated], phi: OrliczFn, c: &DyadicRational) -> Result<SweepReport> {
    let d = bundles.first().map(|e| e.bundle.d).ok_or(Error::EmptyFamily)?;
    if bundles.iter().any(|e| e.bundle.d != d) {
        return Err(Error::InvalidArgument("bundles in a sweep must share d".into()));
    }
    if !phi.is_little_o_of_phi(d) {
        return Err(Error::InvalidArgument(format!("{phi} is not o(Φ_{d}); the ratio stays bounded")));
    }
    let entries: Vec<SweepEntry> = bundles
        .iter()
        .map(|ev| match ev.f_k() {
            Some((_, f)) => {
                let num = orlicz_integral(&f, OrliczFn::Phi(d), &BigRational::one());
                let den = orlicz_integral(&f, phi, &c.to_rational());
                let r = num.interval / den.interval;
                SweepEntry { k: ev.bundle.k, numerator: Some(num), denominator: Some(den), ratio: Some(r) }
            }
            None => SweepEntry { k: ev.bundle.k, numerator: None, denominator: None, ratio: None },
        })
        .collect();
    let ratios: Option<Vec<Interval>> = entries.iter().map(|e| e.ratio).collect();
    let diverging = match ratios {
        Some(r) if r.len() >= 2 => {
            r.windows(2).all(|w| w[1].lo > w[0].hi) && r[r.len() - 1].lo >= 2.0 * r[0].hi
        }
        _ => false,
    };
    Ok(SweepReport { d, phi, c: c.clone(), entries, diverging })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GuzmanMode {
    Prop1,
    Prop2,
}

impl FromStr for GuzmanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop1" => Ok(GuzmanMode::Prop1),
            "prop2" => Ok(GuzmanMode::Prop2),
            _ => Err(Error::Parse(format!("mode must be prop1 or prop2, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuzmanReport {
    pub mode: GuzmanMode,
    pub hypotheses_met: bool,
    /// Width of the projection (prop1) or the property (C) constant (prop2).
    pub hypothesis_value: usize,
    pub lhs: DyadicRational,
    pub rhs: Option<Enclosure>,
    pub holds: bool,
}

/// `10 + 2^{n+1} ln^{n-2} 4`.
pub fn guzman_constant(n: usize) -> Interval {
    let ln4 = Interval::point(2.0) * ln2();
    Interval::point(10.0) + Interval::point(2f64.powi(n as i32 + 1)) * ln4.powi(n as u32 - 2)
}

/// `|{M f > λ}| ≤ (10 + 2^{n+1} ln^{n-2} 4) ∫ Φ_{n-2}(|f|/λ)` on one
/// instance, after checking the projection hypothesis on the last plane.
pub fn guzman_instance_check(family: &RectangleFamily, f: &GridFunction, lambda: &DyadicRational, mode: GuzmanMode, kmax: usize) -> Result<GuzmanReport> {
    let n = family.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("needs dimension at least 2".into()));
    }
    if lambda.is_zero() || lambda.is_negative() {
        return Err(Error::InvalidArgument(format!("λ must be positive, got {lambda}")));
    }
    let plane = (n - 2, n - 1);
    let (hypotheses_met, hypothesis_value) = match mode {
        GuzmanMode::Prop1 => (true, width(&project(family, plane)?).width),
        GuzmanMode::Prop2 => match property_c_check(family, plane, kmax) {
            Ok(r) => (n >= 3 && r.holds(), r.k),
            Err(Error::SearchCap { .. }) => (false, 0),
            Err(e) => return Err(e),
        },
    };
    let lhs = maximal_function(f, family)?.superlevel(lambda, true).measure();
    if !hypotheses_met {
        return Ok(GuzmanReport { mode, hypotheses_met, hypothesis_value, lhs, rhs: None, holds: false });
    }
    let integral = orlicz_integral(f, OrliczFn::Phi(n as u32 - 2), &(BigRational::one() / lambda.to_rational()));
    let rhs = Enclosure::approx(guzman_constant(n) * integral.interval);
    let holds = Interval::from_rational(&lhs.to_rational()).hi <= rhs.lo();
    Ok(GuzmanReport { mode, hypotheses_met, hypothesis_value, lhs, rhs: Some(rhs), holds })
}

/// Rational value of a small interval bound, for reports.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
