//! Similarity classes of all forms over a small field, side by side with the
//! isomorphism classes of their algebras. Pass a ring descriptor to change
//! the field, e.g. `cargo run --example census -- F2k:2`.

use evenclifford::classify::orbit_census;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let desc = std::env::args().nth(1).unwrap_or_else(|| "Fp:2".into());
    let report = orbit_census(&RingSpec::parse(&desc)?)?;
    println!("{} forms over {}", report.form_count, report.ring);
    for o in &report.orbits {
        println!("  stratum {}  size {:>5}  algebra class {}  {}", o.stratum, o.size, o.algebra_class, o.representative);
    }
    println!(
        "{} similarity classes, {} algebra classes, bijection verified: {}",
        report.similarity_classes, report.algebra_classes, report.bijection_verified
    );
    Ok(())
}
