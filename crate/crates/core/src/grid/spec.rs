use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rect::DyadicRectangle;

/// Per-axis dyadic resolutions of the torus grid: axis `i` has `2^q_i`
/// half-open cells of length `2^-q_i`.
///
/// Cells are numbered in row-major order, the last axis varying fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSpec {
    q: Vec<u32>,
}

impl GridSpec {
    /// Grid checked against the default cell cap.
    pub fn new(q: Vec<u32>) -> Result<Self> {
        Self::with_limits(q, &Limits::default())
    }

    pub fn with_limits(q: Vec<u32>, limits: &Limits) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let total: u64 = q.iter().map(|&x| x as u64).sum();
        limits.check_cells(total.min(u32::MAX as u64) as u32)?;
        Ok(Self { q })
    }

    /// Grid no larger than one already admitted; skips the cap check.
    pub(crate) fn sub_grid(&self, q: Vec<u32>) -> Self {
        debug_assert!(q.len() == self.q.len() && q.iter().zip(&self.q).all(|(a, b)| a <= b));
        Self { q }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn resolutions(&self) -> &[u32] {
        &self.q
    }

    pub fn resolution(&self, axis: usize) -> u32 {
        self.q[axis]
    }

    /// Cells along `axis`.
    pub fn axis_len(&self, axis: usize) -> usize {
        1usize << self.q[axis]
    }

    pub fn log2_cells(&self) -> u32 {
        self.q.iter().sum()
    }

    pub fn cells(&self) -> usize {
        1usize << self.log2_cells()
    }

    /// Distance in the flat array between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        1usize << self.q[axis + 1..].iter().sum::<u32>()
    }

    pub fn cell_volume(&self) -> DyadicRational {
        DyadicRational::pow2_neg(self.log2_cells())
    }

    /// Axis coordinate of a flat cell index.
    #[inline]
    pub fn coord(&self, cell: usize, axis: usize) -> usize {
        (cell >> self.q[axis + 1..].iter().sum::<u32>()) & (self.axis_len(axis) - 1)
    }

    pub fn coords(&self, cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        let mut rest = cell;
        for a in (0..self.dim()).rev() {
            out[a] = rest & (self.axis_len(a) - 1);
            rest >>= self.q[a];
        }
        out
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.q).fold(0usize, |acc, (&c, &q)| (acc << q) | (c & ((1usize << q) - 1)))
    }

    pub fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self != other {
            return Err(Error::SpecMismatch(self.q.clone(), other.q.clone()));
        }
        Ok(())
    }

    /// Errors unless every side of `r` is a whole number of cells.
    pub fn check_representable(&self, r: &DyadicRectangle) -> Result<()> {
        if r.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: r.dim() });
        }
        for (a, (&m, &q)) in r.exponents().iter().zip(&self.q).enumerate() {
            if m > q {
                return Err(Error::Resolution(format!("side 2^-{m} on axis {a} is finer than the grid resolution 2^-{q}")));
            }
        }
        Ok(())
    }

    /// Window length in cells of `r` along each axis.
    pub fn window(&self, r: &DyadicRectangle) -> Vec<usize> {
        r.exponents().iter().zip(&self.q).map(|(&m, &q)| 1usize << (q - m)).collect()
    }
}
