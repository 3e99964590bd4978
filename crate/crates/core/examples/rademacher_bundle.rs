//! Rademacher bundles on the default chain: measured constants next to the
//! claimed ones, and the nested-union inequality per prefix.

use rectlab::constructions::{default_chain, rademacher_bundle};
use rectlab::Limits;

fn main() -> rectlab::Result<()> {
    for n in 2..=3usize {
        for k in (2 * n as u32).saturating_sub(6)..=4 {
            let rb = rademacher_bundle(&default_chain(n - 1, k)?, k + 1, &Limits::default())?;
            let m = rb.bundle.measure()?;
            let h = rb.bundle.check(&m)?;
            let e_ok = rb.claim_e_check().iter().all(|e| e.holds());
            println!(
                "n={n} k={k} #J={} |Θ|={} |Y|={} minM={} A={} claimed c={} (ii)={} (iii)={} E={e_ok}",
                rb.y_j.len(),
                m.theta,
                m.y,
                m.min_m,
                m.a.map(|a| a.to_string()).unwrap_or("-".into()),
                rb.bundle.claimed_c,
                h.ratio_ok,
                h.lower_bound_ok
            );
        }
    }
    Ok(())
}
