//! Sampled Rademacher functions: any `j` distinct digits intersect in
//! measure `2^-j`.

use rectlab::grid::rademacher_sample;
use rectlab::{GridSet, GridSpec};

fn main() -> rectlab::Result<()> {
    let spec = GridSpec::new(vec![6, 2])?;
    let r: Vec<GridSet> = (1..=6).map(|m| rademacher_sample(m, 0, &spec)).collect::<rectlab::Result<_>>()?;
    for subset in [vec![1], vec![1, 2], vec![2, 5], vec![1, 3, 6], vec![2, 3, 4, 5]] {
        let mut s = GridSet::full(&spec);
        for &m in &subset {
            s = s.intersection(&r[m - 1])?;
        }
        println!("digits {subset:?}: measure {}", s.measure());
    }
    Ok(())
}
