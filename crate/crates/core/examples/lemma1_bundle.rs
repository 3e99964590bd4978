//! Hypotheses (i)-(iii) on the hyperbolic bundles.

use rectlab::constructions::lemma1_bundle;
use rectlab::Limits;

fn main() -> rectlab::Result<()> {
    let limits = Limits::default();
    for (n, kmax) in [(2usize, 5u32), (3, 4)] {
        for k in 1..=kmax {
            let b = lemma1_bundle(n, k, &limits)?;
            let m = b.measure()?;
            let h = b.check(&m)?;
            println!(
                "n={n} k={k} |Θ|={} |Y|={} minM={} A={} c′={} (i)={} (ii)={} (iii)={}",
                m.theta,
                m.y,
                m.min_m,
                m.a.map(|a| a.to_string()).unwrap_or_default(),
                m.c_prime,
                h.contained,
                h.ratio_ok,
                h.lower_bound_ok
            );
        }
    }
    Ok(())
}
