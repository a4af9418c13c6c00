//! Every Υ(B) carries a standard involution, making it a quaternion algebra
//! whenever it is Azumaya.

use evenclifford::algebra4::{AlgElement, Algebra4};
use evenclifford::clifford::upsilon;
use evenclifford::forms::BilinearForm33;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let q = RingSpec::rationals();
    let b = BilinearForm33::from_i64(&q, [[1, 2, 0], [-1, 3, 1], [0, 4, -2]]);
    let a = upsilon(&b);
    let inv = a.standard_involution().expect("Υ(B) has a standard involution");
    println!("trace on the basis: {:?}", inv.trace_functional().iter().map(ToString::to_string).collect::<Vec<_>>());

    let x = AlgElement::from_i64(&q, [2, -1, 3, 5]);
    let (t, n) = (a.trace(&x)?, a.norm(&x)?);
    let w = AlgElement::basis(&q, 0);
    let cayley = a.mul(&x, &x).sub(&x.scale(&t)).add(&w.scale(&n));
    println!("x = {x:?}\nt(x) = {t}, n(x) = {n}, x² - t(x)x + n(x) = 0: {}", cayley.is_zero());
    println!("x σ(x) = {:?}", a.mul(&x, &inv.apply(&x)));

    // a commutative algebra of rank 4 with no standard involution
    let split = Algebra4::from_products(&q, |i, j| if i == j { AlgElement::basis(&q, i) } else { AlgElement::zero(&q) });
    println!("k^4 has a standard involution: {}", split.standard_involution().is_some());
    Ok(())
}
