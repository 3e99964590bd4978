//! Inclusion order on rectangle families: width, chains, projections and
//! property (C).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rect::{DyadicRectangle, RectangleFamily};

/// Maximum antichain together with a chain cover of the same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub width: usize,
    pub antichain: Vec<DyadicRectangle>,
    /// Each chain listed from smallest to largest.
    pub chains: Vec<Vec<DyadicRectangle>>,
}

impl WidthReport {
    /// `|chain cover| == |antichain|`, the antichain is pairwise incomparable
    /// and every chain is totally ordered.
    pub fn is_certified(&self) -> bool {
        self.chains.len() == self.antichain.len()
            && self.antichain.len() == self.width
            && pairwise(&self.antichain, |a, b| !a.is_subset_of(b) && !b.is_subset_of(a))
            && self.chains.iter().all(|c| c.windows(2).all(|w| w[0].is_subset_of(&w[1])))
    }
}

fn pairwise(rects: &[DyadicRectangle], ok: impl Fn(&DyadicRectangle, &DyadicRectangle) -> bool) -> bool {
    rects.iter().enumerate().all(|(i, a)| rects[i + 1..].iter().all(|b| ok(a, b)))
}

/// Kuhn's augmenting-path matching on the bipartite split of the strict
/// inclusion DAG.
struct Matching {
    /// `right_of[u] = v` when the edge `u ⊊ v` is matched.
    right_of: Vec<Option<usize>>,
    left_of: Vec<Option<usize>>,
}

fn max_matching(adj: &[Vec<usize>]) -> Matching {
    let n = adj.len();
    let mut m = Matching { right_of: vec![None; n], left_of: vec![None; n] };
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, adj, &mut seen, &mut m);
    }
    m
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], m: &mut Matching) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if m.left_of[v].is_none_or(|w| augment(w, adj, seen, m)) {
            m.left_of[v] = Some(u);
            m.right_of[u] = Some(v);
            return true;
        }
    }
    false
}

/// Width of `F` under `⊆` by minimum chain cover.
pub fn width(family: &RectangleFamily) -> WidthReport {
    let rects = family.to_vec();
    let n = rects.len();
    let adj: Vec<Vec<usize>> =
        (0..n).map(|u| (0..n).filter(|&v| u != v && rects[u].is_subset_of(&rects[v])).collect()).collect();
    let m = max_matching(&adj);

    let mut chains = Vec::new();
    for start in (0..n).filter(|&v| m.left_of[v].is_none()) {
        let mut chain = vec![rects[start].clone()];
        let mut cur = start;
        while let Some(next) = m.right_of[cur] {
            chain.push(rects[next].clone());
            cur = next;
        }
        chains.push(chain);
    }

    // König: alternate from unmatched left vertices
    let mut left_z = vec![false; n];
    let mut right_z = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| m.right_of[u].is_none()).collect();
    stack.iter().for_each(|&u| left_z[u] = true);
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if m.right_of[u] == Some(v) || right_z[v] {
                continue;
            }
            right_z[v] = true;
            if let Some(w) = m.left_of[v] {
                if !left_z[w] {
                    left_z[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let antichain: Vec<DyadicRectangle> = (0..n).filter(|&x| left_z[x] && !right_z[x]).map(|x| rects[x].clone()).collect();
    WidthReport { width: chains.len(), antichain, chains }
}

/// Every pair comparable under `⊆`.
pub fn is_chain(family: &RectangleFamily) -> bool {
    pairwise(&family.to_vec(), |a, b| a.is_subset_of(b) || b.is_subset_of(a))
}

/// Projection onto the coordinate plane `(a, b)`, 0-based axes.
pub fn project(family: &RectangleFamily, axes: (usize, usize)) -> Result<RectangleFamily> {
    if axes.0 == axes.1 {
        return Err(Error::InvalidArgument(format!("plane needs two distinct axes, got {axes:?}")));
    }
    RectangleFamily::new(2, family.iter().map(|r| r.project(&[axes.0, axes.1])).collect::<Result<Vec<_>>>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Width stays within the threshold: finite-width (weak (1,1)) regime.
    Bounded,
    /// Width strictly increases along the sweep: infinite-width regime.
    Growing,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Weak11Report {
    /// `(k, width)` per family.
    pub widths: Vec<(u32, usize)>,
    pub threshold: usize,
    pub verdict: Verdict,
}

/// Width of one finite family against a threshold.
pub fn weak11_verdict(family: &RectangleFamily, threshold: usize) -> Weak11Report {
    weak11_sweep(&[(0, family.clone())], threshold)
}

/// Width growth across a `k`-indexed generator. `Growing` needs at least two
/// entries and strictly increasing widths; `Bounded` means every width is at
/// most `threshold`.
pub fn weak11_sweep(families: &[(u32, RectangleFamily)], threshold: usize) -> Weak11Report {
    let widths: Vec<(u32, usize)> = families.iter().map(|(k, f)| (*k, width(f).width)).collect();
    let verdict = if widths.len() >= 2 && widths.windows(2).all(|w| w[1].1 > w[0].1) {
        Verdict::Growing
    } else if widths.iter().all(|&(_, w)| w <= threshold) {
        Verdict::Bounded
    } else {
        Verdict::Inconclusive
    };
    Weak11Report { widths, threshold, verdict }
}

/// Largest subfamily with pairwise comparable projections onto `plane` and
/// pairwise incomparable members; property (C) holds with `k = largest + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCReport {
    pub plane: (usize, usize),
    pub largest: usize,
    pub k: usize,
    pub kmax: usize,
    pub witness: Vec<DyadicRectangle>,
}

impl PropertyCReport {
    pub fn holds(&self) -> bool {
        self.k <= self.kmax
    }
}

pub const PROPERTY_C_CAP: usize = 20;

/// Exhaustive maximum-clique search; the witness is the lexicographically
/// first maximum subfamily in family order.
pub fn property_c_check(family: &RectangleFamily, plane: (usize, usize), kmax: usize) -> Result<PropertyCReport> {
    if family.len() > PROPERTY_C_CAP {
        return Err(Error::SearchCap { size: family.len(), cap: PROPERTY_C_CAP });
    }
    let rects = family.to_vec();
    let proj = rects.iter().map(|r| r.project(&[plane.0, plane.1])).collect::<Result<Vec<_>>>()?;
    let n = rects.len();
    let comparable = |a: &DyadicRectangle, b: &DyadicRectangle| a.is_subset_of(b) || b.is_subset_of(a);
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && comparable(&proj[i], &proj[j]) && !comparable(&rects[i], &rects[j]))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    let mut best = 0u32;
    clique(&adj, 0, (1u32 << n) - 1, &mut best);
    let witness: Vec<DyadicRectangle> = (0..n).filter(|&i| best >> i & 1 == 1).map(|i| rects[i].clone()).collect();
    let largest = witness.len();
    Ok(PropertyCReport { plane, largest, k: largest + 1, kmax, witness })
}

fn clique(adj: &[u32], current: u32, candidates: u32, best: &mut u32) {
    if current.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    if candidates == 0 {
        *best = current;
        return;
    }
    let mut rest = candidates;
    while rest != 0 {
        if current.count_ones() + rest.count_ones() <= best.count_ones() {
            return;
        }
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        clique(adj, current | 1 << v, rest & adj[v as usize], best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cylinder_family, hyperbolic_family};
    use crate::DyadicRational;

    fn fam(rows: &[&[u32]]) -> RectangleFamily {
        RectangleFamily::from_exponents(rows[0].len(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn width_examples() {
        let chain = fam(&[&[3, 3], &[2, 2], &[1, 2], &[0, 0]]);
        let r = width(&chain);
        assert_eq!(r.width, 1);
        assert!(r.is_certified());
        assert!(is_chain(&chain));
        let two = fam(&[&[0, 1], &[1, 0]]);
        assert_eq!(width(&two).width, 2);
        assert!(!is_chain(&two));
        for k in 1..6 {
            let h = hyperbolic_family(2, k, &DyadicRational::pow2_neg(k)).unwrap();
            let r = width(&h);
            assert_eq!(r.width, k as usize + 1);
            assert!(r.is_certified());
        }
    }

    #[test]
    fn projection_example() {
        let p = project(&fam(&[&[1, 2, 3]]), (0, 2)).unwrap();
        assert_eq!(p, fam(&[&[1, 3]]));
        assert!(project(&fam(&[&[1, 2, 3]]), (1, 1)).is_err());
        assert!(project(&fam(&[&[1, 2, 3]]), (0, 5)).is_err());
    }

    #[test]
    fn tied_first_side_breaks_planar_chains() {
        let f = fam(&[&[0, 0, 1], &[0, 1, 0]]);
        assert!(is_chain(&project(&f, (0, 1)).unwrap()));
        assert!(is_chain(&project(&f, (0, 2)).unwrap()));
        assert!(!is_chain(&f));
    }

    #[test]
    fn verdicts() {
        let chain = fam(&[&[2, 2, 0], &[1, 1, 0]]);
        assert_eq!(weak11_verdict(&chain, 1).verdict, Verdict::Bounded);
        let sweep: Vec<(u32, RectangleFamily)> =
            (1..=6).map(|k| (k, hyperbolic_family(2, k, &DyadicRational::pow2_neg(k)).unwrap())).collect();
        let r = weak11_sweep(&sweep, 1);
        assert_eq!(r.widths.iter().map(|w| w.1).collect::<Vec<_>>(), vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(r.verdict, Verdict::Growing);
    }

    #[test]
    fn property_c_examples() {
        let slabs = fam(&[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[3, 0, 0]]);
        let r = property_c_check(&slabs, (1, 2), 8).unwrap();
        assert_eq!((r.largest, r.k), (1, 2));
        assert!(r.holds());
        for k in 1..5 {
            let cyl = cylinder_family(&hyperbolic_family(2, k, &DyadicRational::pow2_neg(k)).unwrap()).unwrap();
            let r = property_c_check(&cyl, (1, 2), 3).unwrap();
            assert_eq!(r.largest, k as usize + 1);
            assert_eq!(r.holds(), k + 2 <= 3);
        }
        let empty = RectangleFamily::empty(3).unwrap();
        assert_eq!(property_c_check(&empty, (1, 2), 1).unwrap().k, 1);
        let big = RectangleFamily::from_exponents(1, &(0..21).map(|m| vec![m]).collect::<Vec<_>>()).unwrap();
        assert!(matches!(property_c_check(&big, (0, 0), 1), Err(Error::SearchCap { .. })));
    }
}
