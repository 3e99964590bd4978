//! Property (C) on cylinder families: witnesses grow with `k`.

use rectlab::constructions::{cylinder_family, hyperbolic_family};
use rectlab::poset::{project, property_c_check, width};
use rectlab::DyadicRational;

fn main() -> rectlab::Result<()> {
    for k in 1..=4 {
        let cyl = cylinder_family(&hyperbolic_family(2, k, &DyadicRational::pow2_neg(2 * k))?)?;
        let r = property_c_check(&cyl, (1, 2), 8)?;
        let w = width(&project(&cyl, (1, 2))?).width;
        println!("k={k} projection width {w} witness size {} property (C) k={}", r.largest, r.k);
    }
    Ok(())
}
