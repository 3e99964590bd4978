//! Level-set inequality per bundle and the divergence sweep.

use rectlab::constructions::lemma1_bundle;
use rectlab::orlicz::{divergence_sweep, kappa_check, Evaluated, OrliczFn};
use rectlab::{DyadicRational, Limits};

fn main() -> rectlab::Result<()> {
    let two = DyadicRational::from_integer(2);
    for (n, phis) in [(2usize, vec![OrliczFn::Phi(0)]), (3, vec![OrliczFn::Phi(0), OrliczFn::Phi(1)])] {
        let evaluated = (1..=4).map(|k| Evaluated::new(lemma1_bundle(n, k, &Limits::default())?)).collect::<rectlab::Result<Vec<_>>>()?;
        for ev in &evaluated {
            let r = kappa_check(ev)?;
            let rhs = r.rhs.as_ref().map(|e| e.interval.to_string()).unwrap_or_default();
            println!("n={n} k={} lhs={} rhs∈{rhs} passes={}", r.k, r.lhs.map(|l| l.to_string()).unwrap_or_default(), r.passes);
        }
        for phi in phis {
            let s = divergence_sweep(&evaluated, phi, &two)?;
            let ratios: Vec<String> = s.entries.iter().filter_map(|e| e.ratio).map(|r| format!("{:.4}", r.mid())).collect();
            println!("n={n} Φ={phi}: ratios {ratios:?} diverging={}", s.diverging);
        }
    }
    Ok(())
}
