//! Writes a bundle to JSON, reads it back and re-measures it.

use rectlab::constructions::lemma1_bundle;
use rectlab::io::{to_json_string, BundleFile};
use rectlab::Limits;

fn main() -> rectlab::Result<()> {
    let limits = Limits::default();
    let b = lemma1_bundle(2, 2, &limits)?;
    let file = BundleFile::new(&b, &b.measure()?);
    let text = to_json_string(&file);
    println!("{text}");
    let back: BundleFile = serde_json::from_str(&text)?;
    println!("re-measured equal: {}", back.to_bundle(&limits)?.measure()? == b.measure()?);
    Ok(())
}
