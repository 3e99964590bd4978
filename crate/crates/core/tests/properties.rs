//! Property tests against independent oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rectlab::constructions::{binomial, hat_family};
use rectlab::grid::rectangle_indicator;
use rectlab::maximal::{maximal_function, maximal_function_bruteforce};
use rectlab::orlicz::{weak_type_ratio, OrliczFn};
use rectlab::poset::{is_chain, width};
use rectlab::rect::{dyadic_cover, rectangle_measure, total_measure, union_measure_anchored};
use rectlab::{DyadicRational, DyadicRectangle, GridFunction, GridSet, GridSpec, RectangleFamily, StrictChain};

fn rect(dim: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, dim)
}

fn family(dim: usize, max: u32, size: usize) -> impl Strategy<Value = RectangleFamily> {
    prop::collection::vec(rect(dim, max), 1..=size).prop_map(move |rows| RectangleFamily::from_exponents(dim, &rows).unwrap())
}

/// Grid function on `q` with small signed numerators.
fn function(q: Vec<u32>) -> impl Strategy<Value = GridFunction> {
    let cells = 1usize << q.iter().sum::<u32>();
    (prop::collection::vec(-20i64..=20, cells), 0u32..3).prop_map(move |(nums, scale)| GridFunction::from_parts(&GridSpec::new(q.clone()).unwrap(), scale, nums).unwrap())
}

/// Family and function on the same grid, exponents within the grid.
fn instance() -> impl Strategy<Value = (RectangleFamily, GridFunction)> {
    (1usize..=3)
        .prop_flat_map(|dim| rect(dim, 3))
        .prop_flat_map(|q| {
            let dim = q.len();
            let rows = prop::collection::vec(q.iter().map(|&m| 0..=m).collect::<Vec<_>>(), 1..=5);
            (rows.prop_map(move |r| RectangleFamily::from_exponents(dim, &r).unwrap()), function(q))
        })
}

fn raster(f: &RectangleFamily) -> DyadicRational {
    let spec = GridSpec::new(f.max_exponents()).unwrap();
    let mut s = GridSet::empty(&spec);
    for r in f {
        s.union_with(&rectangle_indicator(r, &spec).unwrap()).unwrap();
    }
    s.measure()
}

fn exhaustive_width(f: &RectangleFamily) -> usize {
    let r = f.to_vec();
    let n = r.len();
    (0u32..1 << n)
        .filter(|m| (0..n).all(|i| m >> i & 1 == 0 || (i + 1..n).all(|j| m >> j & 1 == 0 || (!r[i].is_subset_of(&r[j]) && !r[j].is_subset_of(&r[i])))))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn union_measure_matches_raster(f in (1usize..=4).prop_flat_map(|d| family(d, 6 / d as u32 + 1, 8))) {
        let u = union_measure_anchored(&f).unwrap();
        prop_assert_eq!(&u, &raster(&f));
        let biggest = f.iter().map(rectangle_measure).max().unwrap();
        prop_assert!(biggest <= u && u <= total_measure(&f));
    }

    #[test]
    fn maximal_matches_bruteforce((f, g) in instance()) {
        prop_assert_eq!(maximal_function(&g, &f).unwrap(), maximal_function_bruteforce(&g, &f).unwrap());
    }

    #[test]
    fn maximal_is_monotone_and_homogeneous((f, g) in instance(), e in 0u32..4) {
        let m = maximal_function(&g, &f).unwrap();
        let first = f.iter().next().unwrap().clone();
        let sub = RectangleFamily::new(f.dim(), [first]).unwrap();
        prop_assert!(maximal_function(&g, &sub).unwrap().le(&m).unwrap());
        let c = DyadicRational::pow2_neg(e);
        prop_assert_eq!(maximal_function(&g.scaled(&c).unwrap(), &f).unwrap(), m.scaled(&c).unwrap());
    }

    #[test]
    fn width_matches_exhaustive(f in (2usize..=4).prop_flat_map(|d| family(d, 3, 12))) {
        let r = width(&f);
        prop_assert_eq!(r.width, exhaustive_width(&f));
        prop_assert!(r.is_certified());
        let mut covered = r.chains.concat();
        covered.sort();
        prop_assert_eq!(covered, f.to_vec());
        prop_assert_eq!(is_chain(&f), r.width == 1);
    }

    #[test]
    fn hat_count_is_binomial(n in 1usize..=3, steps in prop::collection::vec(prop::collection::vec(1u32..=3, 0..=4), 3)) {
        let k = steps[0].len();
        let per_axis: Vec<Vec<u32>> = (0..n)
            .map(|a| {
                let mut e = 0u32;
                let mut v = vec![e];
                for j in 0..k {
                    e += steps[a].get(j).copied().unwrap_or(1);
                    v.push(e);
                }
                v.reverse();
                v
            })
            .collect();
        let chain = StrictChain::from_axis_exponents(&per_axis).unwrap();
        prop_assert_eq!(BigInt::from(hat_family(&chain).unwrap().len()), binomial((k + n) as u64, n as u64));
    }

    #[test]
    fn dyadic_cover_sandwich(e in rect(3, 8), num in prop::collection::vec(1u64..=255, 3)) {
        let r = DyadicRectangle::new(e.clone()).unwrap();
        let sides: Vec<BigRational> = e.iter().map(|&m| DyadicRational::pow2_neg(m).to_rational()).collect();
        prop_assert_eq!(dyadic_cover(&sides).unwrap(), r);
        let raw: Vec<BigRational> = num.iter().map(|&a| BigRational::new(a.into(), 256u64.into())).collect();
        let cover = dyadic_cover(&raw).unwrap();
        let vol: BigRational = raw.iter().product();
        let cvol = rectangle_measure(&cover).to_rational();
        prop_assert!(cvol >= vol && cvol < vol * BigRational::from_integer(8.into()));
    }

    #[test]
    fn grid_set_base64_round_trip(q in rect(3, 3), bits in prop::collection::vec(any::<bool>(), 512)) {
        let spec = GridSpec::new(q).unwrap();
        let s = GridSet::from_fn(&spec, |c| bits[c % 512]);
        prop_assert_eq!(GridSet::from_base64(&spec, &s.to_base64()).unwrap(), s);
    }

    #[test]
    fn dyadic_text_round_trip(n in any::<i64>(), e in 0u32..80) {
        let d = DyadicRational::new(BigInt::from(n), e);
        prop_assert_eq!(d.to_string().parse::<DyadicRational>().unwrap(), d);
    }

    #[test]
    fn level_measure_is_monotone_in_family((f, g) in instance(), extra in rect(3, 3)) {
        let dim = f.dim();
        let q = g.spec().resolutions().to_vec();
        let r = DyadicRectangle::new(extra.iter().zip(&q).take(dim).map(|(&a, &b)| a.min(b)).collect()).unwrap();
        let mut bigger = f.clone();
        bigger.insert(r).unwrap();
        let one = DyadicRational::one();
        let half = DyadicRational::pow2_neg(1);
        let small = weak_type_ratio(&f, &g, &half, &one, OrliczFn::Power(1)).unwrap();
        let large = weak_type_ratio(&bigger, &g, &half, &one, OrliczFn::Power(1)).unwrap();
        prop_assert!(small.level_measure <= large.level_measure);
    }
}
