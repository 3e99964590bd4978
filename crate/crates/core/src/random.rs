//! Seeded random instances for oracle runs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::grid::{GridFunction, GridSpec};
use crate::rect::{DyadicRectangle, RectangleFamily};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `size` rectangles with exponents in `0..=max_exp` (duplicates collapse).
pub fn random_family(rng: &mut impl Rng, dim: usize, size: usize, max_exp: u32) -> Result<RectangleFamily> {
    let rects = (0..size)
        .map(|_| DyadicRectangle::new((0..dim).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect::<Result<Vec<_>>>()?;
    RectangleFamily::new(dim, rects)
}

/// Values `num / 2^scale` with `|num| ≤ max_num`; nonnegative when `signed` is false.
pub fn random_function(rng: &mut impl Rng, spec: &GridSpec, max_num: i64, scale: u32, signed: bool) -> Result<GridFunction> {
    let lo = if signed { -max_num } else { 0 };
    let nums = (0..spec.cells()).map(|_| rng.gen_range(lo..=max_num)).collect();
    GridFunction::from_parts(spec, scale, nums)
}

/// Sparse variant: each cell is nonzero with probability `density`.
pub fn random_sparse_function(rng: &mut impl Rng, spec: &GridSpec, max_num: i64, scale: u32, density: f64) -> Result<GridFunction> {
    let nums = (0..spec.cells()).map(|_| if rng.gen_bool(density) { rng.gen_range(1..=max_num) } else { 0 }).collect();
    GridFunction::from_parts(spec, scale, nums)
}

/// `2k+1` pairwise incomparable planar rectangles, exponents in `0..=max_exp`.
pub fn random_incomparables(rng: &mut impl Rng, k: usize, max_exp: u32) -> Result<RectangleFamily> {
    let size = 2 * k + 1;
    assert!(max_exp as usize + 1 >= size, "exponent range too small for {size} incomparable rectangles");
    let mut a: Vec<u32> = sample(rng, max_exp as usize + 1, size).into_iter().map(|x| x as u32).collect();
    let mut b: Vec<u32> = sample(rng, max_exp as usize + 1, size).into_iter().map(|x| x as u32).collect();
    a.sort_unstable();
    b.sort_unstable_by(|x, y| y.cmp(x));
    RectangleFamily::new(2, a.into_iter().zip(b).map(|(x, y)| DyadicRectangle::new(vec![x, y])).collect::<Result<Vec<_>>>()?)
}
