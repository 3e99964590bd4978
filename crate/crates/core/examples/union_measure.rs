//! Union measure of the hyperbolic family against the lower bound
//! `k^{n-1} α / (3·2^{n-2})`.

use num_rational::BigRational;
use rectlab::constructions::{hyperbolic_family, lemma1_constant};
use rectlab::rect::{total_measure, union_measure_anchored};
use rectlab::DyadicRational;

fn main() -> rectlab::Result<()> {
    for n in 2..=3usize {
        for k in 1..=6u32 {
            let alpha = DyadicRational::pow2_neg(n as u32 * k);
            let family = hyperbolic_family(n, k, &alpha)?;
            let union = union_measure_anchored(&family)?;
            let bound = lemma1_constant(n) * BigRational::from_integer(k.pow(n as u32 - 1).into()) * alpha.to_rational();
            println!(
                "n={n} k={k} |F|={:3} union={:>12} sum={:>12} bound={:>10} ok={}",
                family.len(),
                union.to_string(),
                total_measure(&family).to_string(),
                bound.to_string(),
                union.to_rational() >= bound
            );
        }
    }
    Ok(())
}
