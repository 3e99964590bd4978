//! Weak-type ratio `|{M f > λ}| / ∫Φ(C|f|/λ)` for a point mass.

use rectlab::constructions::hyperbolic_family;
use rectlab::orlicz::{weak_type_ratio, OrliczFn};
use rectlab::{DyadicRational, GridFunction, GridSpec};

fn main() -> rectlab::Result<()> {
    let one = DyadicRational::one();
    for k in 1..=4u32 {
        let family = hyperbolic_family(2, k, &DyadicRational::pow2_neg(2 * k))?;
        let spec = GridSpec::new(family.max_exponents())?;
        let mut values = vec![DyadicRational::zero(); spec.cells()];
        values[0] = DyadicRational::pow2((4 * k) as i64);
        let f = GridFunction::from_values(&spec, &values)?;
        for phi in [OrliczFn::Power(1), OrliczFn::Phi(1)] {
            let r = weak_type_ratio(&family, &f, &one, &one, phi)?;
            println!("k={k} Φ={phi} level={} ratio∈{}", r.level_measure, r.ratio);
        }
    }
    Ok(())
}
