//! Strict chain extracted from `2k+1` pairwise incomparable rectangles.

use rectlab::constructions::soria_chain;
use rectlab::random::{random_incomparables, rng};

fn main() -> rectlab::Result<()> {
    let input = random_incomparables(&mut rng(11), 3, 10)?;
    println!("input: {:?}", input.to_vec());
    let r = soria_chain(&input)?;
    println!("chain: {:?}", r.chain.rects());
    for c in &r.certificates {
        println!("j1={} j2={} meet={:?} closed form={:?} ok={}", c.j1, c.j2, c.intersection, c.closed_form, c.holds());
    }
    Ok(())
}
