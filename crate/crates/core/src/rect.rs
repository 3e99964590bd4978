//! Standard dyadic rectangles `∏ [0, 2^-m_i]`, chains and families.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::dyadic::{floor_log2, DyadicRational};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Origin-anchored box `∏ [0, 2^-m_i]`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicRectangle {
    exponents: Vec<u32>,
}

/// Outcome of comparing two rectangles under inclusion.
///
/// `Subset` means `R ⊆ S` with equality in at least one but not every
/// coordinate; `StrictSubset` means `R ≺ S`, strictly smaller sides on every
/// axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Equal,
    Subset,
    Superset,
    StrictSubset,
    StrictSuperset,
    Incomparable,
}

impl Comparison {
    pub fn is_comparable(self) -> bool {
        self != Comparison::Incomparable
    }

    pub fn is_subset(self) -> bool {
        matches!(self, Comparison::Equal | Comparison::Subset | Comparison::StrictSubset)
    }

    pub fn is_superset(self) -> bool {
        matches!(self, Comparison::Equal | Comparison::Superset | Comparison::StrictSuperset)
    }
}

impl DyadicRectangle {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(Self { exponents })
    }

    pub fn with_limits(exponents: Vec<u32>, limits: &Limits) -> Result<Self> {
        limits.check_exponents(&exponents)?;
        Self::new(exponents)
    }

    /// The unit cube `[0,1]^n`.
    pub fn unit(dim: usize) -> Result<Self> {
        Self::new(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, axis: usize) -> u32 {
        self.exponents[axis]
    }

    pub fn side(&self, axis: usize) -> DyadicRational {
        DyadicRational::pow2_neg(self.exponents[axis])
    }

    /// Sum of exponents; the measure is `2^-weight`.
    pub fn weight(&self) -> u64 {
        self.exponents.iter().map(|&m| m as u64).sum()
    }

    pub fn measure(&self) -> DyadicRational {
        rectangle_measure(self)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        compare(self, other)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a >= b)
    }

    /// `self ≺ other`.
    pub fn strictly_precedes(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a > b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { exponents: self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| a.max(b)).collect() })
    }

    /// Keeps only the listed axes, in the given order.
    pub fn project(&self, axes: &[usize]) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let exps = axes
            .iter()
            .map(|&a| {
                self.exponents
                    .get(a)
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("axis {a} out of range for dimension {}", self.dim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(exps)
    }

    /// `R × [0, 2^-m]`.
    pub fn extend(&self, exponent: u32) -> Self {
        let mut exponents = self.exponents.clone();
        exponents.push(exponent);
        Self { exponents }
    }
}

impl fmt::Debug for DyadicRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{:?}", self.exponents)
    }
}

impl fmt::Display for DyadicRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sides: Vec<String> = self.exponents.iter().map(|m| format!("[0,2^-{m}]")).collect();
        f.write_str(&sides.join("×"))
    }
}

pub fn compare(r: &DyadicRectangle, s: &DyadicRectangle) -> Result<Comparison> {
    r.check_dim(s)?;
    let (mut le, mut ge, mut lt, mut gt) = (true, true, true, true);
    for (&a, &b) in r.exponents.iter().zip(&s.exponents) {
        // larger exponent = shorter side
        le &= a >= b;
        ge &= a <= b;
        lt &= a > b;
        gt &= a < b;
    }
    Ok(match (le, ge) {
        (true, true) => Comparison::Equal,
        (true, false) if lt => Comparison::StrictSubset,
        (true, false) => Comparison::Subset,
        (false, true) if gt => Comparison::StrictSuperset,
        (false, true) => Comparison::Superset,
        (false, false) => Comparison::Incomparable,
    })
}

pub fn rectangle_measure(r: &DyadicRectangle) -> DyadicRational {
    DyadicRational::pow2(-(r.weight() as i64))
}

/// Smallest standard dyadic rectangle containing `∏ [0, s_i]`.
pub fn dyadic_cover(sides: &[BigRational]) -> Result<DyadicRectangle> {
    let exps = sides
        .iter()
        .map(|s| {
            if !s.is_positive() || *s > BigRational::one() {
                return Err(Error::InvalidSide(s.to_string()));
            }
            // largest m with 2^-m >= s, i.e. m = -ceil(log2 s)
            let fl = floor_log2(s);
            let exact = DyadicRational::pow2(fl).to_rational() == *s;
            let ceil = if exact { fl } else { fl + 1 };
            Ok((-ceil) as u32)
        })
        .collect::<Result<Vec<_>>>()?;
    DyadicRectangle::new(exps)
}

/// A totally ordered list `R_0 ≺ R_1 ≺ … ≺ R_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictChain {
    rects: Vec<DyadicRectangle>,
}

impl StrictChain {
    pub fn new(rects: Vec<DyadicRectangle>) -> Result<Self> {
        let first = rects.first().ok_or(Error::EmptyFamily)?;
        let dim = first.dim();
        for r in &rects {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
            }
        }
        for (j, w) in rects.windows(2).enumerate() {
            if !w[0].strictly_precedes(&w[1]) {
                return Err(Error::NotStrictChain(format!("R_{j} = {:?} does not strictly precede R_{} = {:?}", w[0], j + 1, w[1])));
            }
        }
        Ok(Self { rects })
    }

    /// Chain with `m^i_j = exponents[i][j]`, i.e. axis-major exponent arrays.
    pub fn from_axis_exponents(per_axis: &[Vec<u32>]) -> Result<Self> {
        let len = per_axis.first().map(Vec::len).ok_or(Error::EmptyDimension)?;
        if per_axis.iter().any(|a| a.len() != len) {
            return Err(Error::InvalidArgument("axis exponent arrays differ in length".into()));
        }
        let rects = (0..len)
            .map(|j| DyadicRectangle::new(per_axis.iter().map(|a| a[j]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rects)
    }

    pub fn rects(&self) -> &[DyadicRectangle] {
        &self.rects
    }

    pub fn dim(&self) -> usize {
        self.rects[0].dim()
    }

    /// Number of rectangles, `k + 1`.
    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// `m^i_j`: exponent of `R_j` on `axis`.
    pub fn exponent(&self, axis: usize, j: usize) -> u32 {
        self.rects[j].exponent(axis)
    }

    pub fn to_family(&self) -> RectangleFamily {
        RectangleFamily { dim: self.dim(), rects: self.rects.iter().cloned().collect() }
    }
}

/// Finite, duplicate-free set of rectangles of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleFamily {
    dim: usize,
    rects: BTreeSet<DyadicRectangle>,
}

impl RectangleFamily {
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self { dim, rects: BTreeSet::new() })
    }

    /// Builds a family, dropping duplicates.
    pub fn new(dim: usize, rects: impl IntoIterator<Item = DyadicRectangle>) -> Result<Self> {
        let mut fam = Self::empty(dim)?;
        for r in rects {
            fam.insert(r)?;
        }
        Ok(fam)
    }

    pub fn from_exponents(dim: usize, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(dim, rows.iter().map(|r| DyadicRectangle::new(r.clone())).collect::<Result<Vec<_>>>()?)
    }

    pub fn insert(&mut self, r: DyadicRectangle) -> Result<bool> {
        if r.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: r.dim() });
        }
        Ok(self.rects.insert(r))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn contains(&self, r: &DyadicRectangle) -> bool {
        self.rects.contains(r)
    }

    /// Rectangles in lexicographic exponent order.
    pub fn iter(&self) -> impl Iterator<Item = &DyadicRectangle> {
        self.rects.iter()
    }

    pub fn to_vec(&self) -> Vec<DyadicRectangle> {
        self.rects.iter().cloned().collect()
    }

    /// Largest exponent on each axis.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for r in &self.rects {
            for (o, &m) in out.iter_mut().zip(r.exponents()) {
                *o = (*o).max(m);
            }
        }
        out
    }

    /// `⋂ F`, itself an anchored rectangle.
    pub fn intersection(&self) -> Result<DyadicRectangle> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        DyadicRectangle::new(self.max_exponents())
    }

    pub fn check_limits(&self, limits: &Limits) -> Result<()> {
        self.rects.iter().try_for_each(|r| limits.check_exponents(r.exponents()))
    }
}

impl<'a> IntoIterator for &'a RectangleFamily {
    type Item = &'a DyadicRectangle;
    type IntoIter = std::collections::btree_set::Iter<'a, DyadicRectangle>;
    fn into_iter(self) -> Self::IntoIter {
        self.rects.iter()
    }
}

/// Exact Lebesgue measure of `⋃ F` for an anchored family.
///
/// The union is a down-set, so slicing along the first axis at the distinct
/// side lengths `2^-a_1 > 2^-a_2 > …` leaves, on each slab
/// `(2^-a_{t+1}, 2^-a_t]`, the union of projections of every box whose first
/// side reaches that far. Each slab recurses in one dimension less.
pub fn union_measure_anchored(family: &RectangleFamily) -> Result<DyadicRational> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let boxes: Vec<Vec<u32>> = family.iter().map(|r| r.exponents().to_vec()).collect();
    Ok(union_rec(boxes))
}

/// Same as [`union_measure_anchored`] after checking the exponent cap.
pub fn union_measure_anchored_with_limits(family: &RectangleFamily, limits: &Limits) -> Result<DyadicRational> {
    family.check_limits(limits)?;
    union_measure_anchored(family)
}

fn union_rec(mut boxes: Vec<Vec<u32>>) -> DyadicRational {
    debug_assert!(!boxes.is_empty());
    if boxes[0].len() == 1 {
        let m = boxes.iter().map(|b| b[0]).min().unwrap();
        return DyadicRational::pow2_neg(m);
    }
    boxes = pareto_maximal(boxes);
    boxes.sort_by_key(|b| b[0]);
    let mut total = DyadicRational::zero();
    let mut active: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    while i < boxes.len() {
        let a = boxes[i][0];
        while i < boxes.len() && boxes[i][0] == a {
            active.push(boxes[i][1..].to_vec());
            i += 1;
        }
        let next = if i < boxes.len() { DyadicRational::pow2_neg(boxes[i][0]) } else { DyadicRational::zero() };
        let width = &DyadicRational::pow2_neg(a) - &next;
        let slice = union_rec(active.clone());
        total = &total + &(&width * &slice);
    }
    total
}

/// Drops boxes contained in another box; they never change the union.
fn pareto_maximal(mut boxes: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    boxes.sort_by_key(|b| b.iter().map(|&m| m as u64).sum::<u64>());
    boxes.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(boxes.len());
    for b in boxes {
        if !kept.iter().any(|k| k.iter().zip(&b).all(|(x, y)| y >= x)) {
            kept.push(b);
        }
    }
    kept
}

/// `Σ |R|` over the family.
pub fn total_measure(family: &RectangleFamily) -> DyadicRational {
    family.iter().map(rectangle_measure).sum()
}
