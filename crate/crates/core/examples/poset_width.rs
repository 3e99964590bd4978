//! Width with its Dilworth certificate, and the chain test through the
//! `x_1 x_j` projections.

use rectlab::constructions::hyperbolic_family;
use rectlab::poset::{is_chain, project, weak11_sweep, width};
use rectlab::random::{random_family, rng};
use rectlab::{DyadicRational, RectangleFamily};

fn main() -> rectlab::Result<()> {
    let f = random_family(&mut rng(5), 3, 10, 3)?;
    let w = width(&f);
    println!("width {} certified {}", w.width, w.is_certified());
    println!("antichain {:?}", w.antichain);
    for c in &w.chains {
        println!("chain {c:?}");
    }
    let chain = RectangleFamily::from_exponents(3, &[vec![3, 4, 2], vec![2, 2, 2], vec![0, 1, 1]])?;
    let projections = (1..3).map(|j| project(&chain, (0, j)).map(|p| is_chain(&p))).collect::<rectlab::Result<Vec<_>>>()?;
    println!("chain {} projections {projections:?}", is_chain(&chain));

    let sweep: Vec<_> = (1..=6).map(|k| Ok((k, hyperbolic_family(2, k, &DyadicRational::pow2_neg(2 * k))?))).collect::<rectlab::Result<_>>()?;
    let r = weak11_sweep(&sweep, 1);
    println!("hyperbolic widths {:?} → {:?}", r.widths, r.verdict);
    Ok(())
}
