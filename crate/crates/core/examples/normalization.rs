//! Carrying a semiregular form to x1*x2 + x3^2 over a field where every
//! element is a square.

use evenclifford::classify::normalize_semiregular;
use evenclifford::cli::parse_form;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let f8 = RingSpec::binary_field(3)?;
    for text in ["x1^2 + x1*x2 + x3^2", "3*x1^2 + 5*x2^2 + x1*x2 + 6*x1*x3 + 2*x2*x3", "x1*x2 + x1*x3 + x2*x3"] {
        let q = parse_form(text, &f8)?;
        match normalize_semiregular(&q) {
            Ok(g) => println!("{q}\n  g =\n{g}  g·q = {}", q.act(&g)?),
            Err(e) => println!("{q}: {e}"),
        }
    }
    // in odd characteristic the construction needs square roots that may be missing
    let q = RingSpec::rationals();
    println!("{:?}", normalize_semiregular(&parse_form("x1^2 + x2^2 + x3^2", &q)?).err());
    Ok(())
}
