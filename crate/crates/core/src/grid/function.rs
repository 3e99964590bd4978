use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{GridSet, GridSpec};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Cell-wise constant function on the torus grid with exact dyadic values.
///
/// Values share one denominator: cell `c` holds `nums[c] / 2^scale`.
/// Numerators are 64-bit; anything wider is rejected with
/// [`Error::Overflow`] rather than rounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFunction {
    spec: GridSpec,
    scale: u32,
    nums: Vec<i64>,
}

impl GridFunction {
    pub fn zeros(spec: &GridSpec) -> Self {
        Self { spec: spec.clone(), scale: 0, nums: vec![0; spec.cells()] }
    }

    pub fn constant(spec: &GridSpec, c: &DyadicRational) -> Result<Self> {
        let n = to_i64(c.numerator())?;
        Ok(Self { spec: spec.clone(), scale: c.exponent(), nums: vec![n; spec.cells()] }.normalized())
    }

    /// `value · χ_set`.
    pub fn from_set(set: &GridSet, value: &DyadicRational) -> Result<Self> {
        let n = to_i64(value.numerator())?;
        let mut nums = vec![0; set.spec().cells()];
        for c in set.iter() {
            nums[c] = n;
        }
        Ok(Self { spec: set.spec().clone(), scale: value.exponent(), nums }.normalized())
    }

    pub fn indicator(set: &GridSet) -> Self {
        Self::from_set(set, &DyadicRational::one()).expect("1 fits")
    }

    pub fn from_values(spec: &GridSpec, values: &[DyadicRational]) -> Result<Self> {
        if values.len() != spec.cells() {
            return Err(Error::InvalidArgument(format!("{} values for a grid of {} cells", values.len(), spec.cells())));
        }
        let scale = values.iter().map(|v| v.exponent()).max().unwrap_or(0);
        let nums = values
            .iter()
            .map(|v| to_i64(&v.numerator_at(scale).expect("scale is the maximum exponent")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spec: spec.clone(), scale, nums })
    }

    /// Raw constructor; the result is canonicalized.
    pub fn from_parts(spec: &GridSpec, scale: u32, nums: Vec<i64>) -> Result<Self> {
        if nums.len() != spec.cells() {
            return Err(Error::InvalidArgument(format!("{} values for a grid of {} cells", nums.len(), spec.cells())));
        }
        Ok(Self { spec: spec.clone(), scale, nums }.normalized())
    }

    /// Divides out common factors of two so that `scale` is minimal.
    fn normalized(mut self) -> Self {
        let tz = self.nums.iter().filter(|&&n| n != 0).map(|n| n.trailing_zeros()).min().unwrap_or(64);
        let shift = tz.min(self.scale);
        if shift > 0 {
            self.nums.iter_mut().for_each(|n| *n >>= shift);
            self.scale -= shift;
        }
        if self.nums.iter().all(|&n| n == 0) {
            self.scale = 0;
        }
        self
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Common denominator exponent.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn numerators(&self) -> &[i64] {
        &self.nums
    }

    pub fn len(&self) -> usize {
        self.nums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty()
    }

    pub fn value(&self, cell: usize) -> DyadicRational {
        DyadicRational::new(BigInt::from(self.nums[cell]), self.scale)
    }

    pub fn values(&self) -> Vec<DyadicRational> {
        (0..self.len()).map(|c| self.value(c)).collect()
    }

    pub fn abs(&self) -> Self {
        Self { spec: self.spec.clone(), scale: self.scale, nums: self.nums.iter().map(|n| n.abs()).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nums.iter().all(|&n| n >= 0)
    }

    /// `c · f` for a dyadic `c`.
    pub fn scaled(&self, c: &DyadicRational) -> Result<Self> {
        let k = to_i64(c.numerator())?;
        let nums = self
            .nums
            .iter()
            .map(|&n| n.checked_mul(k).ok_or_else(|| Error::Overflow(format!("{n} · {c}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spec: self.spec.clone(), scale: self.scale + c.exponent(), nums }.normalized())
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &GridFunction) -> Result<bool> {
        self.spec.check_same(&other.spec)?;
        let s = self.scale.max(other.scale);
        Ok(self.nums.iter().zip(&other.nums).all(|(&a, &b)| {
            ((a as i128) << (s - self.scale)) <= ((b as i128) << (s - other.scale))
        }))
    }

    /// Smallest value over the cells of `set`, `None` if the set is empty.
    pub fn min_over(&self, set: &GridSet) -> Result<Option<(usize, DyadicRational)>> {
        self.spec.check_same(set.spec())?;
        Ok(set.iter().min_by_key(|&c| self.nums[c]).map(|c| (c, self.value(c))))
    }

    pub fn max_value(&self) -> DyadicRational {
        let n = self.nums.iter().copied().max().unwrap_or(0);
        DyadicRational::new(BigInt::from(n), self.scale)
    }

    /// Distinct values with their cell counts, ascending.
    pub fn histogram(&self) -> BTreeMap<DyadicRational, u64> {
        let mut by_num: BTreeMap<i64, u64> = BTreeMap::new();
        for &n in &self.nums {
            *by_num.entry(n).or_default() += 1;
        }
        by_num.into_iter().map(|(n, c)| (DyadicRational::new(BigInt::from(n), self.scale), c)).collect()
    }

    pub fn integrate(&self) -> DyadicRational {
        integrate(self)
    }

    pub fn superlevel(&self, lambda: &DyadicRational, strict: bool) -> GridSet {
        superlevel(self, lambda, strict)
    }
}

fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Overflow(format!("numerator {n} does not fit in 64 bits")))
}

/// `(Σ values) · ∏ 2^-q_i`, exact.
pub fn integrate(f: &GridFunction) -> DyadicRational {
    let total: i128 = f.nums.iter().map(|&n| n as i128).sum();
    DyadicRational::new(BigInt::from(total), f.scale + f.spec.log2_cells())
}

/// Cells where `f > λ` (`strict`) or `f >= λ`.
pub fn superlevel(f: &GridFunction, lambda: &DyadicRational, strict: bool) -> GridSet {
    // compare n / 2^s against a / 2^e on a common denominator
    let e = f.scale.max(lambda.exponent());
    let threshold = lambda.numerator_at(e).expect("e >= exponent");
    let shift = (e - f.scale) as usize;
    let fits = threshold.to_i128().filter(|_| shift < 64);
    match fits {
        Some(t) => GridSet::from_fn(&f.spec, |c| {
            let v = (f.nums[c] as i128) << shift;
            if strict { v > t } else { v >= t }
        }),
        None => GridSet::from_fn(&f.spec, |c| {
            let v = BigInt::from(f.nums[c]) << shift;
            if strict { v > threshold } else { v >= threshold }
        }),
    }
}
