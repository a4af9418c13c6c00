//! θ(q, t): the algebra attached to a form and a translation vector, its
//! bilinear-form coordinates, and the opposite algebra.

use evenclifford::clifford::{act_stabw, bilinear_to_theta, theta, theta_to_bilinear, upsilon, StabWMap, ThetaPoint};
use evenclifford::cli::parse_form;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let r = RingSpec::prime_field(7)?;
    let q = parse_form("x1^2 + 3*x2*x3 + 2*x1*x2", &r)?;
    let t = [r.from_i64(1), r.from_i64(5), r.zero()];
    let p = ThetaPoint::new(q.clone(), t.clone())?;
    let a = theta(&p);
    let b = theta_to_bilinear(&p);
    println!("B(q, t) =\n{}", b.matrix());
    println!("θ(q, t) = Υ(B): {}", a == upsilon(&b));
    println!("coordinates recovered: {}", bilinear_to_theta(&b) == p);

    let shifted = act_stabw(&StabWMap::unipotent(&t)?, &theta(&ThetaPoint::untranslated(q)));
    println!("L(t) · θ(q, 0) = θ(q, t): {}", shifted == a);

    let opposite = upsilon(&b.transpose().neg());
    println!("opposite algebra is Υ(-Bᵗ): {}", a.opposite() == opposite);
    Ok(())
}
