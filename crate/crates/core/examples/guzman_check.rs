//! Single-instance weak `L log^{n-2} L` check on a cylinder family.

use rectlab::constructions::cylinder_bundle;
use rectlab::orlicz::{guzman_instance_check, GuzmanMode};
use rectlab::random::{random_sparse_function, rng};
use rectlab::{DyadicRational, Limits};

fn main() -> rectlab::Result<()> {
    let b = cylinder_bundle(3, 3, &Limits::default())?;
    let mut g = rng(3);
    for trial in 0..5 {
        let f = random_sparse_function(&mut g, &b.spec, 64, 3, 0.05)?;
        let r = guzman_instance_check(&b.family, &f, &DyadicRational::one(), GuzmanMode::Prop2, 8)?;
        let rhs = r.rhs.as_ref().map(|e| e.interval.to_string()).unwrap_or_default();
        println!("trial {trial}: (C) k={} |{{Mf>1}}|={} ≤ {rhs}: {}", r.hypothesis_value, r.lhs, r.holds);
    }
    Ok(())
}
