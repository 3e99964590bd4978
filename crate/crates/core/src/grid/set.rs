use base64::engine::general_purpose::STANDARD;
use base64::Engine;

use super::GridSpec;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::rect::DyadicRectangle;

/// Union of grid cells, one bit per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSet {
    spec: GridSpec,
    words: Vec<u64>,
}

impl GridSet {
    pub fn empty(spec: &GridSpec) -> Self {
        Self { spec: spec.clone(), words: vec![0; spec.cells().div_ceil(64)] }
    }

    pub fn full(spec: &GridSpec) -> Self {
        let mut s = Self { spec: spec.clone(), words: vec![u64::MAX; spec.cells().div_ceil(64)] };
        s.clear_tail();
        s
    }

    pub fn from_fn(spec: &GridSpec, mut member: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(spec);
        for cell in 0..spec.cells() {
            if member(cell) {
                s.insert(cell);
            }
        }
        s
    }

    /// Cartesian product of per-axis cell sets: `factors[a][t]` says whether
    /// coordinate `t` on axis `a` belongs to the product.
    pub fn product(spec: &GridSpec, factors: &[Vec<bool>]) -> Result<Self> {
        if factors.len() != spec.dim() {
            return Err(Error::DimensionMismatch { expected: spec.dim(), found: factors.len() });
        }
        for (a, f) in factors.iter().enumerate() {
            if f.len() != spec.axis_len(a) {
                return Err(Error::InvalidArgument(format!("factor on axis {a} has {} entries, grid has {}", f.len(), spec.axis_len(a))));
            }
        }
        let mut out = Self::empty(spec);
        let mut coords = vec![0usize; spec.dim()];
        fill_product(&mut out, factors, &mut coords, 0, 0);
        Ok(out)
    }

    fn clear_tail(&mut self) {
        let cells = self.spec.cells();
        if !cells.is_multiple_of(64) {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << (cells % 64)) - 1;
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    #[inline]
    pub fn contains(&self, cell: usize) -> bool {
        self.words[cell >> 6] >> (cell & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, cell: usize) {
        self.words[cell >> 6] |= 1 << (cell & 63);
    }

    #[inline]
    pub fn remove(&mut self, cell: usize) {
        self.words[cell >> 6] &= !(1 << (cell & 63));
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn measure(&self) -> DyadicRational {
        measure(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    fn zip_with(&self, other: &GridSet, op: impl Fn(u64, u64) -> u64) -> Result<GridSet> {
        self.spec.check_same(&other.spec)?;
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect();
        Ok(GridSet { spec: self.spec.clone(), words })
    }

    pub fn intersection(&self, other: &GridSet) -> Result<GridSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &GridSet) -> Result<GridSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> GridSet {
        let mut out = GridSet { spec: self.spec.clone(), words: self.words.iter().map(|w| !w).collect() };
        out.clear_tail();
        out
    }

    pub fn union_with(&mut self, other: &GridSet) -> Result<()> {
        self.spec.check_same(&other.spec)?;
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
        Ok(())
    }

    pub fn is_subset(&self, other: &GridSet) -> Result<bool> {
        self.spec.check_same(&other.spec)?;
        Ok(self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0))
    }

    /// Bits packed little-endian: cell `i` is bit `i % 8` of byte `i / 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.spec.cells().div_ceil(8);
        self.words.iter().flat_map(|w| w.to_le_bytes()).take(n).collect()
    }

    pub fn from_bytes(spec: &GridSpec, bytes: &[u8]) -> Result<Self> {
        let n = spec.cells().div_ceil(8);
        if bytes.len() != n {
            return Err(Error::Parse(format!("bitset has {} bytes, grid needs {n}", bytes.len())));
        }
        let mut words = vec![0u64; spec.cells().div_ceil(64)];
        for (i, &b) in bytes.iter().enumerate() {
            words[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let out = GridSet { spec: spec.clone(), words };
        let mut trimmed = out.clone();
        trimmed.clear_tail();
        if trimmed != out {
            return Err(Error::Parse("bitset has bits set beyond the last cell".into()));
        }
        Ok(out)
    }

    pub fn to_base64(&self) -> String {
        STANDARD.encode(self.to_bytes())
    }

    pub fn from_base64(spec: &GridSpec, text: &str) -> Result<Self> {
        let bytes = STANDARD.decode(text.trim()).map_err(|e| Error::Parse(format!("base64: {e}")))?;
        Self::from_bytes(spec, &bytes)
    }
}

fn fill_product(out: &mut GridSet, factors: &[Vec<bool>], coords: &mut [usize], axis: usize, prefix: usize) {
    let q = out.spec.resolution(axis);
    for (t, &keep) in factors[axis].iter().enumerate() {
        if !keep {
            continue;
        }
        coords[axis] = t;
        let idx = (prefix << q) | t;
        if axis + 1 == factors.len() {
            out.insert(idx);
        } else {
            fill_product(out, factors, coords, axis + 1, idx);
        }
    }
}

/// `popcount · ∏ 2^-q_i`.
pub fn measure(set: &GridSet) -> DyadicRational {
    &DyadicRational::from_integer(set.count()) * &set.spec.cell_volume()
}

/// Cells whose `m`-th binary digit along `axis` is `0`, i.e. the sampled
/// Rademacher function `r_m` (with `r_1 = χ[0,1/2)` extended periodically).
pub fn rademacher_sample(m: u32, axis: usize, spec: &GridSpec) -> Result<GridSet> {
    GridSet::product(spec, &rademacher_factors(&[m], axis, spec)?)
}

/// Per-axis factors of `∏_{m ∈ digits} r_m(x_axis)`, all other axes full.
pub(crate) fn rademacher_factors(digits: &[u32], axis: usize, spec: &GridSpec) -> Result<Vec<Vec<bool>>> {
    if axis >= spec.dim() {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range")));
    }
    let q = spec.resolution(axis);
    for &m in digits {
        if m == 0 {
            return Err(Error::InvalidArgument("Rademacher index starts at 1".into()));
        }
        if m > q {
            return Err(Error::Resolution(format!("r_{m} is not constant on cells of length 2^-{q}")));
        }
    }
    let mut factors: Vec<Vec<bool>> = (0..spec.dim()).map(|a| vec![true; spec.axis_len(a)]).collect();
    for (t, keep) in factors[axis].iter_mut().enumerate() {
        *keep = digits.iter().all(|&m| (t >> (q - m)) & 1 == 0);
    }
    Ok(factors)
}

/// Indicator of `∏ [0, 2^-m_i)` on the torus grid.
pub fn rectangle_indicator(r: &DyadicRectangle, spec: &GridSpec) -> Result<GridSet> {
    spec.check_representable(r)?;
    let window = spec.window(r);
    let factors: Vec<Vec<bool>> = (0..spec.dim()).map(|a| (0..spec.axis_len(a)).map(|t| t < window[a]).collect()).collect();
    GridSet::product(spec, &factors)
}

/// Boolean expression over grid sets, evaluated bitwise.
#[derive(Debug, Clone)]
pub enum SetExpr<'a> {
    Set(&'a GridSet),
    Complement(Box<SetExpr<'a>>),
    Intersection(Vec<SetExpr<'a>>),
    Union(Vec<SetExpr<'a>>),
}

impl<'a> SetExpr<'a> {
    pub fn complement(e: SetExpr<'a>) -> Self {
        SetExpr::Complement(Box::new(e))
    }

    pub fn eval(&self) -> Result<GridSet> {
        set_algebra(self)
    }

    fn first_spec(&self) -> Option<&GridSpec> {
        match self {
            SetExpr::Set(s) => Some(s.spec()),
            SetExpr::Complement(e) => e.first_spec(),
            SetExpr::Intersection(v) | SetExpr::Union(v) => v.iter().find_map(|e| e.first_spec()),
        }
    }
}

pub fn set_algebra(expr: &SetExpr<'_>) -> Result<GridSet> {
    let spec = expr.first_spec().ok_or_else(|| Error::InvalidArgument("expression has no operand".into()))?.clone();
    eval(expr, &spec)
}

fn eval(expr: &SetExpr<'_>, spec: &GridSpec) -> Result<GridSet> {
    match expr {
        SetExpr::Set(s) => {
            spec.check_same(s.spec())?;
            Ok((*s).clone())
        }
        SetExpr::Complement(e) => Ok(eval(e, spec)?.complement()),
        SetExpr::Intersection(v) => v.iter().try_fold(GridSet::full(spec), |acc, e| acc.intersection(&eval(e, spec)?)),
        SetExpr::Union(v) => v.iter().try_fold(GridSet::empty(spec), |acc, e| acc.union(&eval(e, spec)?)),
    }
}
