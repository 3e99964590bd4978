//! Discrete maximal operator `M_F` over cell-aligned translates of an
//! anchored dyadic family.
//!
//! For a rectangle `R` whose window spans `L_i = 2^(q_i - m_i)` cells, the
//! anchored average field is `A_R(y) = 2^-w · Σ_{t < L} |f|(y + t)` with
//! `w = Σ (q_i - m_i)`, and
//!
//! ```text
//! M_F f(c) = max_{R ∈ F} max_{y : c ∈ y + [0, L)} A_R(y),
//! ```
//!
//! i.e. a box dilation of `A_R` by the window extents. Both steps are
//! separable, so each rectangle costs a constant number of passes per axis.
//! All work happens on unsigned integer lanes at a common denominator
//! `2^(scale + D)`, `D = max_R w_R`, using the narrowest lane type that
//! provably holds every intermediate value.

use num_bigint::BigInt;

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::grid::kernel::{dilate_axis, window_sum_axis, Lane};
use crate::grid::{GridFunction, GridSpec};
use crate::rect::{DyadicRectangle, RectangleFamily};

fn window_weight(spec: &GridSpec, r: &DyadicRectangle) -> u32 {
    spec.log2_cells() - r.weight() as u32
}

fn check_family(spec: &GridSpec, family: &RectangleFamily) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), found: family.dim() });
    }
    family.iter().try_for_each(|r| spec.check_representable(r))
}

/// Bits needed for `max|f| · 2^headroom`.
fn required_bits(f: &GridFunction, headroom: u32) -> u32 {
    let max = f.numerators().iter().map(|n| n.unsigned_abs()).max().unwrap_or(0);
    (64 - max.leading_zeros()) + headroom
}

enum Lanes {
    U16,
    U32,
    U64,
    U128,
}

fn pick_lanes(bits: u32) -> Result<Lanes> {
    Ok(match bits {
        0..=16 => Lanes::U16,
        17..=32 => Lanes::U32,
        33..=64 => Lanes::U64,
        65..=128 => Lanes::U128,
        _ => return Err(Error::Overflow(format!("maximal function needs {bits}-bit accumulators"))),
    })
}

fn load<T: Lane>(f: &GridFunction) -> Vec<T> {
    f.numerators().iter().map(|n| T::from_u64(n.unsigned_abs())).collect()
}

fn store<T: Lane>(spec: &GridSpec, lanes: &[T], scale: u32) -> Result<GridFunction> {
    let max = lanes.iter().map(|v| v.to_u128()).max().unwrap_or(0);
    if max <= i64::MAX as u128 {
        return GridFunction::from_parts(spec, scale, lanes.iter().map(|v| v.to_u128() as i64).collect());
    }
    // strip common powers of two before giving up
    let tz = lanes.iter().map(|v| v.to_u128()).filter(|&v| v != 0).map(|v| v.trailing_zeros()).min().unwrap_or(0).min(scale);
    if max >> tz > i64::MAX as u128 {
        return Err(Error::Overflow("maximal function values exceed 64-bit numerators".into()));
    }
    GridFunction::from_parts(spec, scale - tz, lanes.iter().map(|v| (v.to_u128() >> tz) as i64).collect())
}

struct Scratch<T> {
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Lane> Scratch<T> {
    fn new() -> Self {
        Self { a: Vec::new(), b: Vec::new() }
    }
}

fn average_lanes<T: Lane>(work: &mut [T], spec: &GridSpec, window: &[usize], scratch: &mut Scratch<T>) {
    for (axis, &len) in window.iter().enumerate() {
        window_sum_axis(work, spec, axis, len, &mut scratch.a);
    }
}

fn dilate_lanes<T: Lane>(work: &mut [T], spec: &GridSpec, window: &[usize], scratch: &mut Scratch<T>) {
    for (axis, &len) in window.iter().enumerate() {
        dilate_axis(work, spec, axis, len, &mut scratch.a, &mut scratch.b);
    }
}

/// Exact average of `|f|` over the translate of `r` anchored at each cell's
/// lower corner, wrapping around the torus.
pub fn box_average_field(f: &GridFunction, r: &DyadicRectangle) -> Result<GridFunction> {
    let spec = f.spec();
    spec.check_representable(r)?;
    let w = window_weight(spec, r);
    match pick_lanes(required_bits(f, w))? {
        Lanes::U16 => box_average_with::<u16>(f, r, w),
        Lanes::U32 => box_average_with::<u32>(f, r, w),
        Lanes::U64 => box_average_with::<u64>(f, r, w),
        Lanes::U128 => box_average_with::<u128>(f, r, w),
    }
}

fn box_average_with<T: Lane>(f: &GridFunction, r: &DyadicRectangle, w: u32) -> Result<GridFunction> {
    let spec = f.spec();
    let mut work = load::<T>(f);
    average_lanes(&mut work, spec, &spec.window(r), &mut Scratch::new());
    store(spec, &work, f.scale() + w)
}

/// `M_F f` with cell-aligned anchors, computed by separable passes.
pub fn maximal_function(f: &GridFunction, family: &RectangleFamily) -> Result<GridFunction> {
    let spec = f.spec();
    check_family(spec, family)?;
    let depth = family.iter().map(|r| window_weight(spec, r)).max().unwrap_or(0);
    match pick_lanes(required_bits(f, depth))? {
        Lanes::U16 => maximal_with::<u16>(f, family, depth),
        Lanes::U32 => maximal_with::<u32>(f, family, depth),
        Lanes::U64 => maximal_with::<u64>(f, family, depth),
        Lanes::U128 => maximal_with::<u128>(f, family, depth),
    }
}

fn maximal_with<T: Lane>(f: &GridFunction, family: &RectangleFamily, depth: u32) -> Result<GridFunction> {
    let spec = f.spec();
    let input = load::<T>(f);
    let mut best = vec![T::default(); input.len()];
    let Some(support) = support_arcs(spec, &input) else {
        return store(spec, &best, f.scale() + depth);
    };
    let mut work = Vec::new();
    let mut scratch = Scratch::new();
    for r in family {
        let window = spec.window(r);
        let shift = depth - window_weight(spec, r);
        let crop = Crop::new(spec, &support, &window)?;
        crop.gather(spec, &input, &mut work);
        average_lanes(&mut work, &crop.spec, &window, &mut scratch);
        dilate_lanes(&mut work, &crop.spec, &window, &mut scratch);
        // dilation commutes with the shift to the common denominator
        crop.scatter_max(spec, &work, &mut best, shift);
    }
    store(spec, &best, f.scale() + depth)
}

/// Per axis, the shortest circular arc `(start, len)` holding the support's
/// projection; `None` when `f ≡ 0`.
fn support_arcs<T: Lane>(spec: &GridSpec, lanes: &[T]) -> Option<Vec<(usize, usize)>> {
    let mut occupied: Vec<Vec<bool>> = (0..spec.dim()).map(|a| vec![false; spec.axis_len(a)]).collect();
    let shifts: Vec<u32> = (0..spec.dim()).map(|a| spec.stride(a).trailing_zeros()).collect();
    let mut any = false;
    for (cell, v) in lanes.iter().enumerate() {
        if *v != T::default() {
            any = true;
            for (occ, &s) in occupied.iter_mut().zip(&shifts) {
                let n = occ.len();
                occ[(cell >> s) & (n - 1)] = true;
            }
        }
    }
    if !any {
        return None;
    }
    Some(
        occupied
            .iter()
            .map(|occ| {
                let n = occ.len();
                // longest circular run of empty positions, ending just before `end`
                let (mut gap, mut end, mut run) = (0, 0, 0);
                for t in 0..2 * n {
                    if occ[t % n] {
                        run = 0;
                    } else {
                        run += 1;
                        if run > gap && run < n {
                            gap = run;
                            end = (t + 1) % n;
                        }
                    }
                }
                (end, n - gap)
            })
            .collect(),
    )
}

/// Sub-torus around the support, large enough that no window sum or
/// dilation wraps onto nonzero data. Every extent is a power of two, a
/// multiple of the window, or the whole axis.
struct Crop {
    spec: GridSpec,
    /// Global lane offset of each local coordinate, per axis.
    offsets: Vec<Vec<usize>>,
    full: bool,
}

impl Crop {
    fn new(spec: &GridSpec, support: &[(usize, usize)], window: &[usize]) -> Result<Self> {
        let mut q = Vec::with_capacity(spec.dim());
        let mut offsets = Vec::with_capacity(spec.dim());
        let mut full = true;
        for (a, (&(start, len), &l)) in support.iter().zip(window).enumerate() {
            let n = spec.axis_len(a);
            let extent = (len + 2 * (l - 1)).next_power_of_two();
            let (origin, extent) = if extent >= n { (0, n) } else { ((start + n - (l - 1)) % n, extent) };
            full &= extent == n;
            q.push(extent.trailing_zeros());
            offsets.push((0..extent).map(|t| ((origin + t) % n) * spec.stride(a)).collect());
        }
        Ok(Self { spec: spec.sub_grid(q), offsets, full })
    }

    fn for_each<F: FnMut(usize, usize)>(&self, mut visit: F) {
        fn rec<F: FnMut(usize, usize)>(offsets: &[Vec<usize>], axis: usize, base: usize, local: &mut usize, visit: &mut F) {
            if axis + 1 == offsets.len() {
                for &o in &offsets[axis] {
                    visit(*local, base + o);
                    *local += 1;
                }
                return;
            }
            for &o in &offsets[axis] {
                rec(offsets, axis + 1, base + o, local, visit);
            }
        }
        rec(&self.offsets, 0, 0, &mut 0, &mut visit);
    }

    fn gather<T: Lane>(&self, spec: &GridSpec, input: &[T], work: &mut Vec<T>) {
        work.clear();
        if self.full {
            debug_assert_eq!(&self.spec, spec);
            work.extend_from_slice(input);
            return;
        }
        work.resize(self.spec.cells(), T::default());
        self.for_each(|l, g| work[l] = input[g]);
    }

    fn scatter_max<T: Lane>(&self, spec: &GridSpec, work: &[T], best: &mut [T], shift: u32) {
        if self.full {
            debug_assert_eq!(&self.spec, spec);
            for (b, &v) in best.iter_mut().zip(work) {
                *b = (*b).max(v << shift);
            }
            return;
        }
        self.for_each(|l, g| best[g] = best[g].max(work[l] << shift));
    }
}

/// Reference `M_F f`: every (rectangle, anchor) pair, window sums by direct
/// enumeration, every covered cell updated explicitly.
pub fn maximal_function_bruteforce(f: &GridFunction, family: &RectangleFamily) -> Result<GridFunction> {
    let spec = f.spec();
    check_family(spec, family)?;
    let dim = spec.dim();
    let values: Vec<BigInt> = f.numerators().iter().map(|&n| BigInt::from(n.unsigned_abs())).collect();
    let mut best: Vec<DyadicRational> = vec![DyadicRational::zero(); spec.cells()];
    let mut offsets = vec![0usize; dim];
    for r in family {
        let window = spec.window(r);
        let window_cells: usize = window.iter().product();
        let denom = f.scale() + window_weight(spec, r);
        for anchor in 0..spec.cells() {
            let base = spec.coords(anchor);
            let mut covered = Vec::with_capacity(window_cells);
            let mut sum = BigInt::from(0);
            offsets.iter_mut().for_each(|o| *o = 0);
            for _ in 0..window_cells {
                let coords: Vec<usize> = (0..dim).map(|a| (base[a] + offsets[a]) % spec.axis_len(a)).collect();
                let cell = spec.index(&coords);
                sum += &values[cell];
                covered.push(cell);
                for a in (0..dim).rev() {
                    offsets[a] += 1;
                    if offsets[a] < window[a] {
                        break;
                    }
                    offsets[a] = 0;
                }
            }
            let avg = DyadicRational::new(sum, denom);
            for cell in covered {
                if avg > best[cell] {
                    best[cell] = avg.clone();
                }
            }
        }
    }
    GridFunction::from_values(spec, &best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSet;

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    fn fam(rows: &[&[u32]]) -> RectangleFamily {
        RectangleFamily::from_exponents(rows[0].len(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn one_d(vals: &[&str]) -> GridFunction {
        let q = vals.len().trailing_zeros();
        let spec = GridSpec::new(vec![q]).unwrap();
        GridFunction::from_values(&spec, &vals.iter().map(|v| d(v)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn averages_of_constant() {
        let spec = GridSpec::new(vec![2, 3]).unwrap();
        let f = GridFunction::constant(&spec, &d("3/4")).unwrap();
        let a = box_average_field(&f, &DyadicRectangle::new(vec![1, 2]).unwrap()).unwrap();
        assert!(a.values().iter().all(|v| *v == d("3/4")));
    }

    #[test]
    fn anchored_average_example() {
        let f = one_d(&["1", "1", "0", "0"]);
        let a = box_average_field(&f, &DyadicRectangle::new(vec![1]).unwrap()).unwrap();
        assert_eq!(a.values(), vec![d("1"), d("1/2"), d("0"), d("1/2")]);
        let whole = box_average_field(&f, &DyadicRectangle::new(vec![0]).unwrap()).unwrap();
        assert!(whole.values().iter().all(|v| *v == f.integrate()));
        assert!(box_average_field(&f, &DyadicRectangle::new(vec![3]).unwrap()).is_err());
    }

    #[test]
    fn maximal_example() {
        let f = one_d(&["1", "1", "0", "0"]);
        let family = fam(&[&[1]]);
        let expected = vec![d("1"), d("1"), d("1/2"), d("1/2")];
        assert_eq!(maximal_function(&f, &family).unwrap().values(), expected);
        assert_eq!(maximal_function_bruteforce(&f, &family).unwrap().values(), expected);
    }

    #[test]
    fn constant_one_and_zero() {
        let spec = GridSpec::new(vec![2, 2]).unwrap();
        let family = fam(&[&[1, 0], &[2, 1], &[0, 2]]);
        let one = GridFunction::indicator(&GridSet::full(&spec));
        assert!(maximal_function(&one, &family).unwrap().values().iter().all(|v| *v == d("1")));
        let zero = GridFunction::zeros(&spec);
        assert!(maximal_function_bruteforce(&zero, &family).unwrap().values().iter().all(|v| v.is_zero()));
        assert!(matches!(maximal_function(&one, &RectangleFamily::empty(2).unwrap()), Err(Error::EmptyFamily)));
    }

    #[test]
    fn negative_values_use_absolute_value() {
        let f = one_d(&["-1", "1", "0", "0"]);
        let m = maximal_function(&f, &fam(&[&[2]])).unwrap();
        assert_eq!(m.values(), f.abs().values());
    }

    #[test]
    fn wide_lanes_are_exact() {
        let spec = GridSpec::new(vec![3]).unwrap();
        let big = DyadicRational::new(BigInt::from(i64::MAX / 4), 3);
        let mut vals = vec![DyadicRational::zero(); 8];
        vals[5] = big.clone();
        let f = GridFunction::from_values(&spec, &vals).unwrap();
        let family = fam(&[&[1], &[3]]);
        assert_eq!(maximal_function(&f, &family).unwrap(), maximal_function_bruteforce(&f, &family).unwrap());
    }

    #[test]
    fn sparse_supports_match_bruteforce() {
        use crate::random::{random_family, random_sparse_function, rng};
        let mut g = rng(41);
        for (t, q) in [vec![5], vec![4, 3], vec![3, 4, 2], vec![5, 1, 3]].into_iter().cycle().take(40).enumerate() {
            let spec = GridSpec::new(q.clone()).unwrap();
            let mut family = random_family(&mut g, q.len(), 4, *q.iter().min().unwrap()).unwrap();
            family.insert(DyadicRectangle::new(q.clone()).unwrap()).unwrap();
            let density = [0.02, 0.05, 0.2][t % 3];
            let f = random_sparse_function(&mut g, &spec, 9, 1, density).unwrap();
            assert_eq!(maximal_function(&f, &family).unwrap(), maximal_function_bruteforce(&f, &family).unwrap(), "q={q:?}");
        }
    }

    #[test]
    fn support_wrapping_the_torus() {
        let spec = GridSpec::new(vec![5, 4]).unwrap();
        let mut vals = vec![DyadicRational::zero(); spec.cells()];
        for c in [[0, 15], [31, 0], [30, 1]] {
            vals[spec.index(&c)] = d("3");
        }
        let f = GridFunction::from_values(&spec, &vals).unwrap();
        let family = fam(&[&[3, 2], &[4, 4], &[5, 1]]);
        assert_eq!(maximal_function(&f, &family).unwrap(), maximal_function_bruteforce(&f, &family).unwrap());
    }
}
