//! The multiplication table Υ(B) of a bilinear form, checked against a direct
//! rewriting in the Clifford algebra.

use evenclifford::clifford::{clifford_product_oracle, upsilon};
use evenclifford::forms::BilinearForm33;
use evenclifford::linalg::Matrix;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let names: Vec<String> = (1..=3).flat_map(|i| (1..=3).map(move |j| format!("b{i}{j}"))).collect();
    let r = RingSpec::polynomials(&names)?;
    let b = BilinearForm33::new(Matrix::from_fn(&r, 3, 3, |i, j| r.variable(&names[3 * i + j]).unwrap()))?;
    let a = upsilon(&b);
    println!("{a:?}");
    println!("agrees with the Clifford relations: {}", a == clifford_product_oracle(&b));
    println!("associative: {}, unital: {}", a.is_associative(), a.is_unital());

    // a concrete form: the even Clifford algebra of x1^2 + x2^2 + x3^2 over Q
    let q = RingSpec::rationals();
    let a = upsilon(&BilinearForm33::identity(&q));
    println!("Azumaya over Q: {}", a.is_azumaya()?);
    println!("{}", serde_json::to_string_pretty(&a.to_json()).unwrap());
    Ok(())
}
