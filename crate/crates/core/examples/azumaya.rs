//! θ(q) is Azumaya exactly when q is semiregular, and over F2 and F4 all of
//! these algebras are isomorphic.

use evenclifford::classify::{azumaya_class_count, azumaya_uniqueness_check};
use evenclifford::clifford::{theta, ThetaPoint};
use evenclifford::forms::TernaryQuadraticForm;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let f3 = RingSpec::prime_field(3)?;
    let els = f3.elements()?;
    let (mut agree, mut total) = (0, 0);
    for code in 0..729usize {
        let c = std::array::from_fn(|i| els[code / 3usize.pow(i as u32) % 3].clone());
        let q = TernaryQuadraticForm::from_coeffs(c)?;
        let azumaya = theta(&ThetaPoint::untranslated(q.clone())).is_azumaya()?;
        agree += (azumaya == q.is_semiregular()) as usize;
        total += 1;
    }
    println!("F3: Azumaya iff semiregular on {agree} of {total} forms");
    for desc in ["Fp:2", "F2k:2"] {
        let r = RingSpec::parse(desc)?;
        println!("{desc}: one Azumaya algebra up to isomorphism: {}", azumaya_uniqueness_check(&r)?);
    }
    println!("F3: {} Azumaya classes", azumaya_class_count(&f3)?);
    Ok(())
}
