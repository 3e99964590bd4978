//! Separable per-axis passes over dense lane arrays.
//!
//! Data is viewed, for a pass along `axis`, as `outer` blocks of `n` rows,
//! each row holding `stride` contiguous lanes. Every pass works row by row
//! on whole lane slices, so the inner loops are plain elementwise loops over
//! contiguous memory.

use std::ops::{Add, Shl, Sub};

use super::GridSpec;

/// Unsigned accumulator used by the kernels.
pub trait Lane: Copy + Ord + Default + Add<Output = Self> + Sub<Output = Self> + Shl<u32, Output = Self> + Send + Sync {
    const BITS: u32;
    fn from_u64(v: u64) -> Self;
    fn to_u128(self) -> u128;
}

macro_rules! lane {
    ($t:ty) => {
        impl Lane for $t {
            const BITS: u32 = <$t>::BITS;
            #[inline]
            fn from_u64(v: u64) -> Self {
                v as $t
            }
            #[inline]
            fn to_u128(self) -> u128 {
                self as u128
            }
        }
    };
}

lane!(u16);
lane!(u32);
lane!(u64);
lane!(u128);

/// Lanes per gathered tile on strided axes.
const TILE: usize = 1 << 14;

fn layout(spec: &GridSpec, axis: usize) -> (usize, usize, usize) {
    let n = spec.axis_len(axis);
    let stride = spec.stride(axis);
    let outer = spec.cells() / (n * stride);
    (outer, n, stride)
}

/// Gathers `n` rows of `w` adjacent columns into a dense `n × w` tile, lets
/// `op` rewrite it, and scatters it back.
fn for_each_tile<T: Lane>(data: &mut [T], outer: usize, n: usize, stride: usize, tile: &mut Vec<T>, mut op: impl FnMut(&mut [T], usize)) {
    let w = (TILE / n).max(8).min(stride);
    let block = n * stride;
    tile.clear();
    tile.resize(n * w, T::default());
    for o in 0..outer {
        let blk = &mut data[o * block..(o + 1) * block];
        let mut c0 = 0;
        while c0 < stride {
            let c1 = (c0 + w).min(stride);
            let cw = c1 - c0;
            let t = &mut tile[..n * cw];
            for r in 0..n {
                t[r * cw..(r + 1) * cw].copy_from_slice(&blk[r * stride + c0..r * stride + c1]);
            }
            op(t, cw);
            for r in 0..n {
                blk[r * stride + c0..r * stride + c1].copy_from_slice(&t[r * cw..(r + 1) * cw]);
            }
            c0 = c1;
        }
    }
}

/// In place: `data[y] ← Σ_{t<len} data[y + t·e_axis]`, indices taken mod the
/// axis length (forward window anchored at `y`).
pub fn window_sum_axis<T: Lane>(data: &mut [T], spec: &GridSpec, axis: usize, len: usize, scratch: &mut Vec<T>) {
    let (outer, n, stride) = layout(spec, axis);
    debug_assert!(len >= 1 && len <= n && n % len == 0);
    if len == 1 {
        return;
    }
    if stride == 1 {
        return window_sum_rows(data, n, len, scratch);
    }
    let mut src: Vec<T> = Vec::new();
    for_each_tile(data, outer, n, stride, scratch, |t, w| {
        src.clear();
        src.extend_from_slice(t);
        let (first, _) = t.split_at_mut(w);
        first.fill(T::default());
        for r in 0..len {
            for (a, &v) in first.iter_mut().zip(&src[r * w..(r + 1) * w]) {
                *a = *a + v;
            }
        }
        for r in 1..n {
            let (done, rest) = t.split_at_mut(r * w);
            let prev = &done[(r - 1) * w..];
            let old = &src[(r - 1) * w..r * w];
            let enter = (r + len - 1) & (n - 1);
            let new = &src[enter * w..(enter + 1) * w];
            for (((a, &p), &o), &v) in rest[..w].iter_mut().zip(prev).zip(old).zip(new) {
                *a = p - o + v;
            }
        }
    });
}

/// In place: `data[c] ← max_{t<len} data[c − t·e_axis]`, indices mod the
/// axis length (the max over every window of length `len` covering `c`).
///
/// van Herk/Gil-Werman: with blocks of `len` rows, the window ending at `c`
/// is the prefix of `c`'s block up to `c` joined with the suffix of the
/// previous block starting at `c − len + 1`.
pub fn dilate_axis<T: Lane>(data: &mut [T], spec: &GridSpec, axis: usize, len: usize, prefix: &mut Vec<T>, suffix: &mut Vec<T>) {
    let (outer, n, stride) = layout(spec, axis);
    debug_assert!(len >= 1 && len <= n && n % len == 0);
    if len == 1 {
        return;
    }
    if stride == 1 {
        return dilate_rows(data, n, len, prefix, suffix);
    }
    let mut tile = Vec::new();
    for_each_tile(data, outer, n, stride, &mut tile, |t, w| {
        for buf in [&mut *prefix, &mut *suffix] {
            buf.clear();
            buf.extend_from_slice(t);
        }
        for b in 0..n / len {
            let start = b * len;
            for r in start + 1..start + len {
                let (done, rest) = prefix.split_at_mut(r * w);
                for (p, &q) in rest[..w].iter_mut().zip(&done[(r - 1) * w..]) {
                    *p = (*p).max(q);
                }
            }
            for r in (start..start + len - 1).rev() {
                let (head, tail) = suffix.split_at_mut((r + 1) * w);
                for (s, &q) in head[r * w..].iter_mut().zip(&tail[..w]) {
                    *s = (*s).max(q);
                }
            }
        }
        for c in 0..n {
            let from = (c + n + 1 - len) & (n - 1);
            let g = &prefix[c * w..(c + 1) * w];
            let h = &suffix[from * w..(from + 1) * w];
            for ((o, &a), &b) in t[c * w..(c + 1) * w].iter_mut().zip(g).zip(h) {
                *o = a.max(b);
            }
        }
    });
}

/// Contiguous rows of length `n`: forward sums by doubling,
/// `S_{2s}[i] = S_s[i] + S_s[i + s]`, over the circularly extended row.
fn window_sum_rows<T: Lane>(data: &mut [T], n: usize, len: usize, scratch: &mut Vec<T>) {
    let ext = n + len - 1;
    scratch.clear();
    scratch.resize(2 * ext, T::default());
    let (mut x, mut y) = scratch.split_at_mut(ext);
    for row in data.chunks_exact_mut(n) {
        x[..n].copy_from_slice(row);
        x[n..].copy_from_slice(&row[..len - 1]);
        let mut s = 1;
        while s < len {
            let m = ext - s;
            for ((o, &a), &b) in y[..m].iter_mut().zip(&x[..m]).zip(&x[s..]) {
                *o = a + b;
            }
            std::mem::swap(&mut x, &mut y);
            s *= 2;
        }
        row.copy_from_slice(&x[..n]);
    }
}

/// Contiguous rows: backward window maxima by doubling over the row
/// extended with its last `len - 1` entries in front.
fn dilate_rows<T: Lane>(data: &mut [T], n: usize, len: usize, prefix: &mut Vec<T>, suffix: &mut Vec<T>) {
    let ext = n + len - 1;
    for buf in [&mut *prefix, &mut *suffix] {
        buf.clear();
        buf.resize(ext, T::default());
    }
    let (mut x, mut y) = (&mut prefix[..], &mut suffix[..]);
    for row in data.chunks_exact_mut(n) {
        x[..len - 1].copy_from_slice(&row[n - len + 1..]);
        x[len - 1..].copy_from_slice(row);
        let mut s = 1;
        while s < len {
            let m = ext - s;
            for ((o, &a), &b) in y[..m].iter_mut().zip(&x[..m]).zip(&x[s..]) {
                *o = a.max(b);
            }
            std::mem::swap(&mut x, &mut y);
            s *= 2;
        }
        row.copy_from_slice(&x[..n]);
    }
}
