//! The hat family of a strict chain has `C(k+n, n)` members.

use rectlab::constructions::{binomial, hat_family};
use rectlab::StrictChain;

fn main() -> rectlab::Result<()> {
    let chain = StrictChain::from_axis_exponents(&[vec![3, 2, 1], vec![3, 2, 1]])?;
    let hat = hat_family(&chain)?;
    for r in hat.iter() {
        println!("{r}");
    }
    println!("#hat = {} = C(4, 2) = {}", hat.len(), binomial(4, 2));
    Ok(())
}
