//! Separable maximal operator against the brute-force oracle on a seeded
//! random instance.

use rectlab::maximal::{maximal_function, maximal_function_bruteforce};
use rectlab::random::{random_family, random_function, rng};
use rectlab::GridSpec;

fn main() -> rectlab::Result<()> {
    let mut g = rng(2024);
    let spec = GridSpec::new(vec![4, 3, 2])?;
    let family = random_family(&mut g, 3, 5, 2)?;
    let f = random_function(&mut g, &spec, 15, 2, true)?;
    let fast = maximal_function(&f, &family)?;
    let slow = maximal_function_bruteforce(&f, &family)?;
    println!("family: {:?}", family.to_vec());
    println!("max M f = {}", fast.max_value());
    println!("engines agree: {}", fast == slow);
    Ok(())
}
