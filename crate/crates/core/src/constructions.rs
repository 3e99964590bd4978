//! Builders for the hyperbolic, hat, Rademacher, Soria and cylinder
//! families and their counterexample bundles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::grid::{rademacher_factors, rectangle_indicator, GridFunction, GridSet, GridSpec};
use crate::limits::Limits;
use crate::maximal::maximal_function;
use crate::rect::{DyadicRectangle, RectangleFamily, StrictChain};

/// `{ [0,s_1]×…×[0,s_{n-1}]×[0, α/(s_1⋯s_{n-1})] : s_i = 2^-j_i, 0 ≤ j_i ≤ k }`.
pub fn hyperbolic_family(n: usize, k: u32, alpha: &DyadicRational) -> Result<RectangleFamily> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let a = alpha.as_pow2_neg().ok_or_else(|| Error::NotDyadicPower(alpha.to_string()))?;
    let mut family = RectangleFamily::empty(n)?;
    for js in tuples(n - 1, k) {
        let used: u32 = js.iter().sum();
        if used > a {
            return Err(Error::InvalidSide(format!("2^{}", used - a)));
        }
        let mut e = js;
        e.push(a - used);
        family.insert(DyadicRectangle::new(e)?)?;
    }
    Ok(family)
}

/// Every `len`-tuple over `0..=k`, lexicographic.
fn tuples(len: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..=k).map(move |j| [t.clone(), vec![j]].concat())).collect();
    }
    out
}

/// Nonincreasing `len`-tuples `k ≥ j_1 ≥ … ≥ j_len ≥ 0`, lexicographic.
pub fn nonincreasing_tuples(len: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, top: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for j in 0..=top {
            prefix.push(j);
            rec(len, j, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, k, &mut Vec::new(), &mut out);
    out
}

/// `R^i_j`: the first `i` axes (0-based) from `R_k`, the rest from `R_j`.
fn hat_generator(chain: &StrictChain, i: usize, j: usize) -> DyadicRectangle {
    let top = &chain.rects()[chain.len() - 1];
    let rj = &chain.rects()[j];
    let e = (0..chain.dim()).map(|a| if a < i { top.exponent(a) } else { rj.exponent(a) }).collect();
    DyadicRectangle::new(e).expect("nonempty")
}

/// `Ĉ`: intersections `⋂_i R^i_{j_i}` over `k ≥ j_1 ≥ … ≥ j_n ≥ 0`.
pub fn hat_family(chain: &StrictChain) -> Result<RectangleFamily> {
    let n = chain.dim();
    let k = (chain.len() - 1) as u32;
    let mut family = RectangleFamily::empty(n)?;
    for js in nonincreasing_tuples(n, k) {
        let mut r = hat_generator(chain, 0, js[0] as usize);
        for (i, &j) in js.iter().enumerate().skip(1) {
            r = r.intersection(&hat_generator(chain, i, j as usize))?;
        }
        family.insert(r)?;
    }
    Ok(family)
}

/// `{ R × [0,1] : R ∈ F }`.
pub fn cylinder_family(family: &RectangleFamily) -> Result<RectangleFamily> {
    RectangleFamily::new(family.dim() + 1, family.iter().map(|r| r.extend(0)))
}

/// `R^1_{j_1} ∩ R^2_{j_2}` next to its closed form `[0,α_{j_1}]×[0,β_{2k-j_2}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoriaCertificate {
    pub j1: usize,
    pub j2: usize,
    pub intersection: Vec<u32>,
    pub closed_form: Vec<u32>,
    /// Intersection of the two input rectangles indexed `j_1` and `2k - j_2`.
    pub input_meet: Vec<u32>,
}

impl SoriaCertificate {
    pub fn holds(&self) -> bool {
        self.intersection == self.closed_form && self.closed_form == self.input_meet
    }
}

#[derive(Debug, Clone)]
pub struct SoriaReduction {
    pub chain: StrictChain,
    pub certificates: Vec<SoriaCertificate>,
}

/// Strict chain `R_j = [0,α_j]×[0,β_{2k-j}]` from `2k+1` pairwise
/// incomparable planar rectangles.
pub fn soria_chain(incomparables: &RectangleFamily) -> Result<SoriaReduction> {
    if incomparables.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: incomparables.dim() });
    }
    let size = incomparables.len();
    if size.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("need an odd number of rectangles, got {size}")));
    }
    let mut rects = incomparables.to_vec();
    for (a, r) in rects.iter().enumerate() {
        for s in &rects[a + 1..] {
            if r.compare(s)?.is_comparable() {
                return Err(Error::InvalidArgument(format!("{r} and {s} are comparable")));
            }
        }
    }
    // α ascending
    rects.sort_by_key(|r| std::cmp::Reverse(r.exponent(0)));
    let k = (size - 1) / 2;
    let alpha = |j: usize| rects[j].exponent(0);
    let beta = |j: usize| rects[j].exponent(1);
    let chain = StrictChain::new((0..=k).map(|j| DyadicRectangle::new(vec![alpha(j), beta(2 * k - j)])).collect::<Result<_>>()?)?;
    let mut certificates = Vec::new();
    for j1 in 0..=k {
        for j2 in 0..=j1 {
            let meet = hat_generator(&chain, 0, j1).intersection(&hat_generator(&chain, 1, j2))?;
            certificates.push(SoriaCertificate {
                j1,
                j2,
                intersection: meet.exponents().to_vec(),
                closed_form: vec![alpha(j1), beta(2 * k - j2)],
                input_meet: rects[j1].intersection(&rects[2 * k - j2])?.exponents().to_vec(),
            });
        }
    }
    Ok(SoriaReduction { chain, certificates })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Lemma1,
    Rademacher,
    Cylinder,
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Construction::Lemma1 => "lemma1",
            Construction::Rademacher => "rademacher",
            Construction::Cylinder => "cylinder",
        })
    }
}

/// Family with the sets `Θ ⊆ Y` and the constants `(c, c′)` it claims for
/// hypotheses (ii) and (iii).
#[derive(Debug, Clone)]
pub struct CounterexampleBundle {
    pub construction: Construction,
    pub family: RectangleFamily,
    pub spec: GridSpec,
    pub theta: GridSet,
    pub y: GridSet,
    pub n: usize,
    pub k: u32,
    pub d: u32,
    pub claimed_c: BigRational,
    pub claimed_c_prime: BigRational,
}

/// Constants read off the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Measured {
    pub theta: DyadicRational,
    pub y: DyadicRational,
    pub min_m: DyadicRational,
    /// Cell of `Y` where `M χ_Θ` attains `min_m`.
    pub witness: usize,
    /// `|Y| / (2^{dk} k^d |Θ|)`, absent when `k = 0`.
    pub a: Option<BigRational>,
    /// `min_m · 2^{dk}`.
    pub c_prime: DyadicRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub contained: bool,
    pub ratio_ok: bool,
    pub lower_bound_ok: bool,
}

impl HypothesisReport {
    pub fn all(&self) -> bool {
        self.contained && self.ratio_ok && self.lower_bound_ok
    }
}

pub(crate) fn rational(d: &DyadicRational) -> BigRational {
    d.to_rational()
}

fn pow2_rational(e: i64) -> BigRational {
    DyadicRational::pow2(e).to_rational()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

impl CounterexampleBundle {
    pub fn chi_theta(&self) -> GridFunction {
        GridFunction::indicator(&self.theta)
    }

    /// `M χ_Θ` on the bundle grid.
    pub fn maximal_theta(&self) -> Result<GridFunction> {
        maximal_function(&self.chi_theta(), &self.family)
    }

    pub fn measure(&self) -> Result<Measured> {
        self.measure_with(&self.maximal_theta()?)
    }

    /// Measured constants given a precomputed `M χ_Θ`.
    pub fn measure_with(&self, m: &GridFunction) -> Result<Measured> {
        let (witness, min_m) = m.min_over(&self.y)?.ok_or(Error::EmptyFamily)?;
        let theta = self.theta.measure();
        let y = self.y.measure();
        let a = (self.k > 0 && !theta.is_zero()).then(|| {
            let denom = pow2_rational((self.d * self.k) as i64) * BigRational::from_integer(BigInt::from(self.k).pow(self.d)) * rational(&theta);
            rational(&y) / denom
        });
        let c_prime = min_m.mul_pow2((self.d * self.k) as i64);
        Ok(Measured { theta, y, min_m, witness, a, c_prime })
    }

    /// (i) `Θ ⊆ Y`; (ii) `|Y| ≥ c·2^{dk}k^d|Θ|`; (iii) `min_Y M χ_Θ ≥ c′·2^{-dk}`,
    /// all as exact comparisons.
    pub fn check(&self, measured: &Measured) -> Result<HypothesisReport> {
        let contained = self.theta.is_subset(&self.y)?;
        let kd = BigRational::from_integer(BigInt::from(self.k).pow(self.d));
        let rhs = &self.claimed_c * pow2_rational((self.d * self.k) as i64) * kd * rational(&measured.theta);
        let ratio_ok = rational(&measured.y) >= rhs;
        let lower = &self.claimed_c_prime * pow2_rational(-((self.d * self.k) as i64));
        let lower_bound_ok = rational(&measured.min_m) >= lower;
        Ok(HypothesisReport { contained, ratio_ok, lower_bound_ok })
    }
}

fn union_of(spec: &GridSpec, family: &RectangleFamily) -> Result<GridSet> {
    let mut y = GridSet::empty(spec);
    for r in family {
        y.union_with(&rectangle_indicator(r, spec)?)?;
    }
    Ok(y)
}

/// `c = 1/(3·2^{n-2})`, exact for every `n ≥ 1`.
pub fn lemma1_constant(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(3)) * pow2_rational(2 - n as i64)
}

/// `ℛ_k` with `α_k = 2^{-nk}`, `Θ = ⋂ℛ_k`, `Y = ⋃ℛ_k`, `d = n-1`.
pub fn lemma1_bundle(n: usize, k: u32, limits: &Limits) -> Result<CounterexampleBundle> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let family = hyperbolic_family(n, k, &DyadicRational::pow2_neg(n as u32 * k))?;
    family.check_limits(limits)?;
    let spec = GridSpec::with_limits(family.max_exponents(), limits)?;
    let theta = rectangle_indicator(&family.intersection()?, &spec)?;
    let y = union_of(&spec, &family)?;
    Ok(CounterexampleBundle {
        construction: Construction::Lemma1,
        family,
        spec,
        theta,
        y,
        n,
        k,
        d: n as u32 - 1,
        claimed_c: lemma1_constant(n),
        claimed_c_prime: BigRational::one(),
    })
}

/// The lemma1 bundle in dimension `n - 1`, extended by a full last axis.
pub fn cylinder_bundle(n: usize, k: u32, limits: &Limits) -> Result<CounterexampleBundle> {
    if n < 2 {
        return Err(Error::InvalidArgument("cylinder bundles need n ≥ 2".into()));
    }
    let base = lemma1_bundle(n - 1, k, limits)?;
    let mut q = base.spec.resolutions().to_vec();
    q.push(0);
    let spec = GridSpec::with_limits(q, limits)?;
    let lift = |s: &GridSet| GridSet::from_fn(&spec, |c| s.contains(c));
    Ok(CounterexampleBundle {
        construction: Construction::Cylinder,
        family: cylinder_family(&base.family)?,
        theta: lift(&base.theta),
        y: lift(&base.y),
        spec,
        n,
        k,
        d: n as u32 - 2,
        claimed_c: lemma1_constant(n - 1),
        claimed_c_prime: BigRational::one(),
    })
}

/// `m^i_j = k + 1 - j` on each of `dim` axes.
pub fn default_chain(dim: usize, k: u32) -> Result<StrictChain> {
    StrictChain::from_axis_exponents(&vec![(0..=k).map(|j| k + 1 - j).collect(); dim])
}

/// Rademacher bundle with its `Y_J` and nested unions `E`.
#[derive(Debug, Clone)]
pub struct RademacherBundle {
    pub bundle: CounterexampleBundle,
    pub chain: StrictChain,
    pub p: u32,
    /// `(J, Y_J)` for `J ∈ C(k+1, n-1)`, lexicographic.
    pub y_j: Vec<(Vec<u32>, GridSet)>,
    /// `E_{j_1..j_{i-1}}` keyed by prefix, for prefixes of length `0..=n-1`.
    pub e: BTreeMap<Vec<u32>, GridSet>,
}

/// One prefix of the `E` recursion: `|⋃_j E_{prefix,j}|` against
/// `½ Σ_j |E_{prefix,j}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimEEntry {
    pub prefix: Vec<u32>,
    pub union_measure: DyadicRational,
    pub half_sum: DyadicRational,
}

impl ClaimEEntry {
    pub fn holds(&self) -> bool {
        self.union_measure >= self.half_sum
    }
}

/// Claimed `(ii)` constant `2^{4-2n}/(n-1)!`.
pub fn rademacher_constant(n: usize) -> BigRational {
    pow2_rational(4 - 2 * n as i64) / BigRational::from_integer(factorial(n as u32 - 1))
}

/// `Θ = ∏_i ∏_{j=0}^{k} r_{m^i_j}(x_i)` and `Y = ⋃_J Y_J` over the chain
/// extended by `m^n_j = p - j`; the family is `{R_J × [0, 2^-p]}`.
pub fn rademacher_bundle(chain: &StrictChain, p: u32, limits: &Limits) -> Result<RademacherBundle> {
    let n = chain.dim() + 1;
    let k = (chain.len() - 1) as u32;
    if p < k + 1 {
        return Err(Error::InvalidArgument(format!("p = {p} must be at least k + 1 = {}", k + 1)));
    }
    // m[i][j] for i in 0..n, last axis m^n_j = p - j
    let mut m: Vec<Vec<u32>> = (0..n - 1).map(|i| (0..=k as usize).map(|j| chain.exponent(i, j)).collect()).collect();
    m.push((0..=k).map(|j| p - j).collect());
    if let Some(i) = m.iter().position(|row| row[k as usize] == 0) {
        return Err(Error::InvalidArgument(format!("axis {i} reaches side 1; Rademacher indices start at 1")));
    }
    limits.check_exponents(&m.iter().map(|row| row[0]).collect::<Vec<_>>())?;
    let spec = GridSpec::with_limits(m.iter().map(|row| row[0]).collect(), limits)?;

    let product = |digits: &[Vec<u32>]| -> Result<GridSet> {
        let factors = (0..n)
            .map(|i| Ok(rademacher_factors(&digits[i], i, &spec)?.swap_remove(i)))
            .collect::<Result<Vec<_>>>()?;
        GridSet::product(&spec, &factors)
    };

    let theta = product(&m)?;
    let mut y_j = Vec::new();
    let mut family = RectangleFamily::empty(n)?;
    for js in nonincreasing_tuples(n - 1, k) {
        // j_0 = k, j_n = 0
        let bounds: Vec<u32> = std::iter::once(k).chain(js.iter().copied()).chain(std::iter::once(0)).collect();
        let digits: Vec<Vec<u32>> = (0..n).map(|i| (bounds[i + 1]..=bounds[i]).map(|mu| m[i][mu as usize]).collect()).collect();
        y_j.push((js.clone(), product(&digits)?));
        let mut e: Vec<u32> = js.iter().enumerate().map(|(i, &j)| m[i][j as usize]).collect();
        e.push(p);
        family.insert(DyadicRectangle::new(e)?)?;
    }

    let mut e: BTreeMap<Vec<u32>, GridSet> = y_j.iter().cloned().collect();
    for len in (0..n - 1).rev() {
        let longer: Vec<(Vec<u32>, GridSet)> = e.iter().filter(|(p, _)| p.len() == len + 1).map(|(p, s)| (p.clone(), s.clone())).collect();
        for (prefix, set) in longer {
            let key = prefix[..len].to_vec();
            match e.get_mut(&key) {
                Some(acc) => acc.union_with(&set)?,
                None => {
                    e.insert(key, set);
                }
            }
        }
    }
    let y = e[&Vec::new()].clone();

    let bundle = CounterexampleBundle {
        construction: Construction::Rademacher,
        family,
        spec,
        theta,
        y,
        n,
        k,
        d: n as u32 - 1,
        claimed_c: rademacher_constant(n),
        claimed_c_prime: BigRational::one(),
    };
    Ok(RademacherBundle { bundle, chain: chain.clone(), p, y_j, e })
}

impl RademacherBundle {
    /// The nested-union inequality for every prefix of length `0..=n-2`.
    pub fn claim_e_check(&self) -> Vec<ClaimEEntry> {
        let n = self.bundle.n;
        self.e
            .iter()
            .filter(|(prefix, _)| prefix.len() + 1 < n)
            .map(|(prefix, union)| {
                let sum: DyadicRational = self
                    .e
                    .iter()
                    .filter(|(p, _)| p.len() == prefix.len() + 1 && p.starts_with(prefix))
                    .map(|(_, s)| s.measure())
                    .sum();
                ClaimEEntry { prefix: prefix.clone(), union_measure: union.measure(), half_sum: sum.mul_pow2(-1) }
            })
            .collect()
    }

    /// `#C(k+1, n-1) ≥ k^{n-1} / (2^{n-3} (n-1)!)`.
    pub fn count_bound_holds(&self) -> bool {
        let n = self.bundle.n as u32;
        let k = self.bundle.k;
        let lhs = BigRational::from_integer(BigInt::from(self.y_j.len()));
        let rhs = BigRational::from_integer(BigInt::from(k).pow(n - 1)) * pow2_rational(3 - n as i64) / BigRational::from_integer(factorial(n - 1));
        lhs >= rhs
    }
}

/// `C(a, b)` as an exact integer.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    (0..b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i) / BigInt::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    fn exps(f: &RectangleFamily) -> Vec<Vec<u32>> {
        f.iter().map(|r| r.exponents().to_vec()).collect()
    }

    #[test]
    fn hyperbolic_examples() {
        assert_eq!(exps(&hyperbolic_family(2, 1, &d("1/2")).unwrap()), vec![vec![0, 1], vec![1, 0]]);
        let f = hyperbolic_family(3, 2, &d("1/64")).unwrap();
        assert_eq!(f.len(), 9);
        assert!(f.iter().all(|r| r.weight() == 6));
        assert!(matches!(hyperbolic_family(2, 3, &d("1/4")), Err(Error::InvalidSide(_))));
        assert!(matches!(hyperbolic_family(2, 1, &d("3/8")), Err(Error::NotDyadicPower(_))));
    }

    #[test]
    fn hat_examples() {
        let chain = StrictChain::from_axis_exponents(&[vec![3, 2, 1], vec![3, 2, 1]]).unwrap();
        let hat = hat_family(&chain).unwrap();
        assert_eq!(exps(&hat), vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 2], vec![2, 3], vec![3, 3]]);
        let single = StrictChain::new(vec![DyadicRectangle::new(vec![2, 5]).unwrap()]).unwrap();
        assert_eq!(exps(&hat_family(&single).unwrap()), vec![vec![2, 5]]);
    }

    #[test]
    fn hat_matches_index_formula() {
        let chain = StrictChain::from_axis_exponents(&[vec![9, 5, 2, 1], vec![7, 6, 4, 0], vec![8, 3, 2, 1]]).unwrap();
        let hat = hat_family(&chain).unwrap();
        for js in nonincreasing_tuples(3, 3) {
            let e: Vec<u32> = js.iter().enumerate().map(|(i, &j)| chain.exponent(i, j as usize)).collect();
            assert!(hat.contains(&DyadicRectangle::new(e).unwrap()));
        }
        assert_eq!(BigInt::from(hat.len()), binomial(6, 3));
    }

    #[test]
    fn soria_example() {
        let inc = RectangleFamily::from_exponents(2, &[vec![2, 1], vec![1, 2], vec![0, 3]]).unwrap();
        let red = soria_chain(&inc).unwrap();
        let chain: Vec<Vec<u32>> = red.chain.rects().iter().map(|r| r.exponents().to_vec()).collect();
        assert_eq!(chain, vec![vec![2, 3], vec![1, 2]]);
        assert!(red.certificates.iter().all(SoriaCertificate::holds));
        let single = RectangleFamily::from_exponents(2, &[vec![1, 1]]).unwrap();
        assert_eq!(soria_chain(&single).unwrap().chain.len(), 1);
        let even = RectangleFamily::from_exponents(2, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert!(soria_chain(&even).is_err());
        let comparable = RectangleFamily::from_exponents(2, &[vec![2, 1], vec![1, 1], vec![0, 3]]).unwrap();
        assert!(soria_chain(&comparable).is_err());
    }

    #[test]
    fn lemma1_small() {
        let b = lemma1_bundle(2, 2, &Limits::default()).unwrap();
        let m = b.measure().unwrap();
        assert_eq!(m.theta, d("1/64"));
        assert_eq!(m.y, d("1/8"));
        assert_eq!(m.min_m, d("1/4"));
        assert!(b.check(&m).unwrap().all());
        let b3 = lemma1_bundle(3, 2, &Limits::default()).unwrap();
        assert_eq!(b3.theta.measure(), d("1/2^10"));
    }

    #[test]
    fn lemma1_degenerate() {
        for n in 1..4 {
            let b = lemma1_bundle(n, 0, &Limits::default()).unwrap();
            assert_eq!(b.family.len(), 1);
            assert_eq!(b.theta, b.y);
            assert!(b.maximal_theta().unwrap().values().iter().all(|v| *v == DyadicRational::one()));
        }
    }

    #[test]
    fn rademacher_small() {
        let chain = StrictChain::from_axis_exponents(&[vec![2, 1]]).unwrap();
        let rb = rademacher_bundle(&chain, 2, &Limits::default()).unwrap();
        assert_eq!(rb.bundle.theta.measure(), d("1/16"));
        for (_, s) in &rb.y_j {
            assert_eq!(s.measure(), d("1/8"));
            assert!(rb.bundle.theta.is_subset(s).unwrap());
        }
        assert!(rb.claim_e_check().iter().all(ClaimEEntry::holds));
        assert!(rademacher_bundle(&chain, 1, &Limits::default()).is_err());
    }

    #[test]
    fn rademacher_e_nesting() {
        let rb = rademacher_bundle(&default_chain(2, 3).unwrap(), 4, &Limits::default()).unwrap();
        assert_eq!(rb.y_j.len(), 10);
        assert_eq!(rb.e.keys().filter(|p| p.len() == 1).count(), 4);
        for (prefix, set) in &rb.e {
            if prefix.len() == 2 {
                assert_eq!(set, &rb.y_j.iter().find(|(j, _)| j == prefix).unwrap().1);
            }
        }
        assert!(rb.count_bound_holds());
    }

    #[test]
    fn cylinder_preserves_chains() {
        let chain = default_chain(2, 3).unwrap();
        let cyl = cylinder_family(&chain.to_family()).unwrap();
        assert_eq!((cyl.dim(), cyl.len()), (3, 4));
        for r in &cyl {
            assert!(cyl.iter().all(|s| r.compare(s).unwrap().is_comparable()));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(nonincreasing_tuples(2, 2).len(), 6);
    }
}
