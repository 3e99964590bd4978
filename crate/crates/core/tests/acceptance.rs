//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use rectlab::constructions::{
    binomial, cylinder_bundle, cylinder_family, default_chain, hat_family, hyperbolic_family, lemma1_bundle, lemma1_constant, rademacher_bundle,
    rademacher_constant, soria_chain, RademacherBundle,
};
use rectlab::grid::{rademacher_sample, rectangle_indicator};
use rectlab::maximal::{maximal_function, maximal_function_bruteforce};
use rectlab::orlicz::{divergence_sweep, guzman_instance_check, kappa_check, Evaluated, GuzmanMode, OrliczFn};
use rectlab::poset::{is_chain, project, property_c_check, weak11_sweep, width, Verdict};
use rectlab::random::{random_family, random_function, random_incomparables, random_sparse_function, rng};
use rectlab::rect::union_measure_anchored;
use rectlab::{DyadicRational, DyadicRectangle, GridSet, GridSpec, Limits, RectangleFamily, StrictChain};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn q(r: &DyadicRational) -> BigRational {
    r.to_rational()
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Grid oracle for the union measure.
fn raster_union(family: &RectangleFamily) -> DyadicRational {
    let spec = GridSpec::new(family.max_exponents()).unwrap();
    let mut s = GridSet::empty(&spec);
    for r in family {
        s.union_with(&rectangle_indicator(r, &spec).unwrap()).unwrap();
    }
    s.measure()
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for n in 2..=3usize {
        for k in 1..=6u32 {
            let start = Instant::now();
            let alpha = DyadicRational::pow2_neg(n as u32 * k);
            let family = hyperbolic_family(n, k, &alpha).unwrap();
            let union = union_measure_anchored(&family).unwrap();
            let bound = lemma1_constant(n) * int(k.pow(n as u32 - 1) as u64) * q(&alpha);
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            if q(&union) < bound || elapsed >= Duration::from_secs(1) {
                failures.push(format!("n={n} k={k} union={union} bound={bound} t={elapsed:?}"));
            }
        }
    }
    let f = hyperbolic_family(2, 3, &"1/8".parse().unwrap()).unwrap();
    let five_16: DyadicRational = "5/16".parse().unwrap();
    let (u, oracle) = (union_measure_anchored(&f).unwrap(), raster_union(&f));
    if u != five_16 || oracle != five_16 {
        failures.push(format!("n=2 k=3 α=1/8: union {u}, raster {oracle}, expected 5/16"));
    }
    outcome(failures.is_empty(), format!("12 cases + 5/16 instance, slowest {slowest:?}; {failures:?}"))
}

/// Bundles shared between criteria 2-4.
struct Shared {
    lemma1: Vec<Evaluated>,
    rademacher: Vec<(RademacherBundle, Evaluated)>,
}

fn criterion_2(shared: &mut Shared) -> Outcome {
    let limits = Limits::default().with_max_cells(1 << 26);
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=3usize {
        for k in 0..=5u32 {
            let ev = Evaluated::new(lemma1_bundle(n, k, &limits).unwrap()).unwrap();
            let b = &ev.bundle;
            let m = &ev.measured;
            let contained = b.theta.is_subset(&b.y).unwrap();
            let d = n as u32 - 1;
            let rhs = lemma1_constant(n) * q(&DyadicRational::pow2((d * k) as i64)) * int(k.pow(d) as u64) * q(&m.theta);
            let ratio = q(&m.y) >= rhs;
            let lower = m.min_m >= DyadicRational::pow2(-((d * k) as i64));
            if !(contained && ratio && lower) {
                failures.push(format!("n={n} k={k}: (i)={contained} (ii)={ratio} (iii)={lower}"));
            }
            if (n, k) == (2, 2) {
                let expect = ["1/64", "1/8", "1/4"].map(|s| s.parse::<DyadicRational>().unwrap());
                if [&m.theta, &m.y, &m.min_m] != [&expect[0], &expect[1], &expect[2]] {
                    failures.push(format!("n=2 k=2: |Θ|={} |Y|={} minM={}", m.theta, m.y, m.min_m));
                }
            }
            shared.lemma1.push(ev);
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?} ≥ 10 s"));
    }
    outcome(failures.is_empty(), format!("n∈{{2,3}}, k=0..5 in {elapsed:?}; {failures:?}"))
}

fn criterion_3(shared: &mut Shared) -> Outcome {
    let limits = Limits::default();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut claim_e_ok = true;
    for n in 2..=3usize {
        for k in (2 * n as u32).saturating_sub(6)..=6 {
            let rb = rademacher_bundle(&default_chain(n - 1, k).unwrap(), k + 1, &limits).unwrap();
            let ev = Evaluated::new(rb.bundle.clone()).unwrap();
            let m = &ev.measured;
            let d = n as u32 - 1;
            let contained = rb.bundle.theta.is_subset(&rb.bundle.y).unwrap();
            let rhs = rademacher_constant(n) * q(&DyadicRational::pow2((d * k) as i64)) * int(k.pow(d) as u64) * q(&m.theta);
            let ratio = q(&m.y) >= rhs;
            let lower = m.min_m >= DyadicRational::pow2(-((d * k) as i64));
            let e = rb.claim_e_check().iter().all(|e| e.union_measure >= e.half_sum);
            claim_e_ok &= e;
            if !(contained && ratio && lower && e) {
                failures.push(format!("n={n} k={k}: (i)={contained} (ii)={ratio} (iii)={lower} minM={} E={e}", m.min_m));
            }
            shared.rademacher.push((rb, ev));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:?} ≥ 60 s"));
    }
    outcome(failures.is_empty(), format!("{} bundles in {elapsed:?}, nested unions all hold: {claim_e_ok}; failing: {failures:?}", shared.rademacher.len()))
}

fn criterion_4(shared: &Shared) -> Outcome {
    let mut failures = Vec::new();
    let bundles: Vec<&Evaluated> = shared.lemma1.iter().chain(shared.rademacher.iter().map(|(_, e)| e)).collect();
    for ev in &bundles {
        let r = kappa_check(ev).unwrap();
        if !r.passes {
            failures.push(format!("level set {} n={} k={}", ev.bundle.construction, r.n, r.k));
        }
    }
    let two = DyadicRational::from_integer(2);
    for construction in ["lemma1", "rademacher"] {
        for n in 2..=3usize {
            let evs: Vec<Evaluated> = bundles
                .iter()
                .filter(|e| e.bundle.construction.to_string() == construction && e.bundle.n == n)
                .map(|e| (*e).clone())
                .collect();
            let phis = if n == 3 { vec![OrliczFn::Phi(0), OrliczFn::Phi(1)] } else { vec![OrliczFn::Phi(0)] };
            for phi in phis {
                let s = divergence_sweep(&evs, phi, &two).unwrap();
                if !s.diverging {
                    failures.push(format!("sweep {construction} n={n} Φ={phi}"));
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("{} bundles; failing: {failures:?}", bundles.len()))
}

fn criterion_5() -> Outcome {
    let mut g = rng(5);
    let mut bad = 0;
    for _ in 0..50 {
        let dim = g.gen_range(1..=3);
        let qs: Vec<u32> = (0..dim).map(|_| g.gen_range(0..=4)).collect();
        let spec = GridSpec::new(qs.clone()).unwrap();
        let size = g.gen_range(1..=6);
        let rects: Vec<DyadicRectangle> = (0..size).map(|_| DyadicRectangle::new(qs.iter().map(|&m| g.gen_range(0..=m)).collect()).unwrap()).collect();
        let family = RectangleFamily::new(dim, rects).unwrap();
        let scale = g.gen_range(0..4);
        let f = random_function(&mut g, &spec, 1000, scale, true).unwrap();
        if maximal_function(&f, &family).unwrap() != maximal_function_bruteforce(&f, &family).unwrap() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("50 instances, {bad} mismatches"))
}

fn exhaustive_antichain(rects: &[DyadicRectangle]) -> usize {
    let n = rects.len();
    (0u32..1 << n)
        .filter(|mask| {
            (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || (!rects[i].is_subset_of(&rects[j]) && !rects[j].is_subset_of(&rects[i]))))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn criterion_6() -> Outcome {
    let mut g = rng(6);
    let mut bad = Vec::new();
    for t in 0..200 {
        let dim = g.gen_range(2..=4);
        let size = g.gen_range(1..=12);
        let family = random_family(&mut g, dim, size, 4).unwrap();
        let rects = family.to_vec();
        let r = width(&family);
        let mut covered: Vec<DyadicRectangle> = r.chains.concat();
        covered.sort();
        let partition = covered == rects;
        if r.width != exhaustive_antichain(&rects) || !r.is_certified() || !partition {
            bad.push(t);
        }
    }
    outcome(bad.is_empty(), format!("200 families, failing runs {bad:?}"))
}

fn projections_are_chains(family: &RectangleFamily) -> bool {
    (1..family.dim()).all(|j| is_chain(&project(family, (0, j)).unwrap()))
}

fn criterion_7() -> Outcome {
    let mut g = rng(7);
    let mut counterexamples = Vec::new();
    let mut tie_free = 0;
    let mut tie_free_bad = 0;
    let mut chains = 0;
    for t in 0..500 {
        let dim = g.gen_range(3..=4);
        let size = g.gen_range(2..=6);
        // every other family is built as a chain
        let family = if t % 2 == 0 {
            random_family(&mut g, dim, size, 5).unwrap()
        } else {
            let mut e: Vec<u32> = (0..dim).map(|_| g.gen_range(0..=2)).collect();
            let mut rects = Vec::new();
            for _ in 0..size {
                rects.push(DyadicRectangle::new(e.clone()).unwrap());
                e.iter_mut().for_each(|x| *x += g.gen_range(0..=1));
            }
            RectangleFamily::new(dim, rects).unwrap()
        };
        let chain = is_chain(&family);
        chains += chain as usize;
        let holds = chain == projections_are_chains(&family);
        let rects = family.to_vec();
        let distinct_first = rects.iter().enumerate().all(|(i, a)| rects[i + 1..].iter().all(|b| a.exponent(0) != b.exponent(0)));
        if distinct_first {
            tie_free += 1;
            tie_free_bad += !holds as usize;
        }
        if !holds {
            counterexamples.push(rects);
        }
    }
    let first = counterexamples.first().map(|c| format!("{c:?}")).unwrap_or_default();
    outcome(
        counterexamples.is_empty(),
        format!(
            "500 families ({chains} chains), {} counterexamples, first {first}; families with distinct first sides: {tie_free}, counterexamples among them: {tie_free_bad}",
            counterexamples.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut g = rng(8);
    for n in 1..=3usize {
        for k in 0..=4u32 {
            let expected = binomial((k as usize + n) as u64, n as u64);
            let default = hat_family(&default_chain(n, k).unwrap()).unwrap().len();
            // a random strict chain as well
            let per_axis: Vec<Vec<u32>> = (0..n)
                .map(|_| {
                    let mut e = vec![g.gen_range(0..=2)];
                    for _ in 0..k {
                        let last = *e.last().unwrap();
                        e.push(last + g.gen_range(1..=3));
                    }
                    e.reverse();
                    e
                })
                .collect();
            let random = hat_family(&StrictChain::from_axis_exponents(&per_axis).unwrap()).unwrap().len();
            if BigInt::from(default) != expected || BigInt::from(random) != expected {
                failures.push(format!("n={n} k={k}: {default}/{random} vs {expected}"));
            }
        }
    }
    let fig = StrictChain::from_axis_exponents(&[vec![3, 2, 1], vec![4, 2, 0]]).unwrap();
    if hat_family(&fig).unwrap().len() != 6 {
        failures.push("chain of 3 in the plane".into());
    }
    let mut subsets = 0;
    for spec in [GridSpec::new(vec![6]).unwrap(), GridSpec::new(vec![6, 6]).unwrap()] {
        for axis in 0..spec.dim() {
            let r: Vec<GridSet> = (1..=6).map(|m| rademacher_sample(m, axis, &spec).unwrap()).collect();
            for mask in 0u32..64 {
                let size = mask.count_ones();
                if size > 4 {
                    continue;
                }
                let mut s = GridSet::full(&spec);
                for (i, ri) in r.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s = s.intersection(ri).unwrap();
                    }
                }
                subsets += 1;
                if s.measure() != DyadicRational::pow2_neg(size) {
                    failures.push(format!("digits mask {mask:#b} axis {axis}: {}", s.measure()));
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("hat counts n≤3 k≤4, {subsets} digit subsets; {failures:?}"))
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for k in 0..=4usize {
        for seed in 0..10u64 {
            runs += 1;
            let input = random_incomparables(&mut rng(900 + seed * 10 + k as u64), k, 12).unwrap();
            let r = match soria_chain(&input) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("k={k} seed={seed}: {e}"));
                    continue;
                }
            };
            let mut sorted = input.to_vec();
            sorted.sort_by_key(|r| std::cmp::Reverse(r.exponent(0)));
            let expected_chain: Vec<DyadicRectangle> =
                (0..=k).map(|j| DyadicRectangle::new(vec![sorted[j].exponent(0), sorted[2 * k - j].exponent(1)]).unwrap()).collect();
            let strict = r.chain.rects().windows(2).all(|w| (0..2).all(|a| w[0].exponent(a) > w[1].exponent(a)));
            let mut certs_ok = r.certificates.len() == (k + 1) * (k + 2) / 2;
            for c in &r.certificates {
                let top = &expected_chain[k];
                let g1 = &expected_chain[c.j1];
                let g2 = DyadicRectangle::new(vec![top.exponent(0), expected_chain[c.j2].exponent(1)]).unwrap();
                let meet = g1.intersection(&g2).unwrap();
                let closed = vec![sorted[c.j1].exponent(0), sorted[2 * k - c.j2].exponent(1)];
                certs_ok &= meet.exponents() == closed.as_slice() && c.intersection == closed && c.closed_form == closed;
            }
            if r.chain.rects() != expected_chain.as_slice() || !strict || !certs_ok {
                failures.push(format!("k={k} seed={seed}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{runs} reductions, k≤4; {failures:?}"))
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let bundle = cylinder_bundle(3, 3, &Limits::default()).unwrap();
    let mut g = rng(10);
    let one = DyadicRational::one();
    for t in 0..20 {
        let f = if t % 2 == 0 {
            random_sparse_function(&mut g, &bundle.spec, 1 << 12, 4, 0.02).unwrap()
        } else {
            random_function(&mut g, &bundle.spec, 64, 3, true).unwrap()
        };
        let r = guzman_instance_check(&bundle.family, &f, &one, GuzmanMode::Prop2, 8).unwrap();
        if !r.holds {
            failures.push(format!("instance {t}: hypotheses {} lhs {}", r.hypotheses_met, r.lhs));
        }
    }
    for k in 1..=4u32 {
        let cyl = cylinder_family(&hyperbolic_family(2, k, &DyadicRational::pow2_neg(2 * k)).unwrap()).unwrap();
        let c = property_c_check(&cyl, (1, 2), 8).unwrap();
        let witness_incomparable = c.witness.iter().enumerate().all(|(i, a)| c.witness[i + 1..].iter().all(|b| !a.is_subset_of(b) && !b.is_subset_of(a)));
        if c.largest != k as usize + 1 || !witness_incomparable {
            failures.push(format!("property (C) k={k}: witness size {}", c.largest));
        }
    }
    for n in 2..=3usize {
        let gens: Vec<(u32, RectangleFamily)> =
            (1..=6).map(|k| (k, hyperbolic_family(n, k, &DyadicRational::pow2_neg(n as u32 * k)).unwrap())).collect();
        let r = weak11_sweep(&gens, 1);
        if r.verdict != Verdict::Growing {
            failures.push(format!("n={n} widths {:?}", r.widths));
        }
    }
    outcome(failures.is_empty(), format!("20 instances, witnesses k=1..4, width sweeps n=2,3; {failures:?}"))
}

fn main() -> ExitCode {
    let mut shared = Shared { lemma1: Vec::new(), rademacher: Vec::new() };
    let mut all = true;
    let mut report = |id: u32, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict} [{:.2?}] {name}: {}", start.elapsed(), o.detail);
        all &= o.pass;
    };
    report(1, "union measure lower bound", &mut criterion_1);
    report(2, "hyperbolic bundle hypotheses", &mut || criterion_2(&mut shared));
    report(3, "Rademacher bundle hypotheses", &mut || criterion_3(&mut shared));
    report(4, "level-set inequality and divergence sweeps", &mut || criterion_4(&shared));
    report(5, "maximal operator oracle", &mut criterion_5);
    report(6, "width oracle and Dilworth certificate", &mut criterion_6);
    report(7, "chain lemma through x1xj projections", &mut criterion_7);
    report(8, "hat counts and digit independence", &mut criterion_8);
    report(9, "incomparable-to-chain reduction", &mut criterion_9);
    report(10, "instance checks, property (C), width growth", &mut criterion_10);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
