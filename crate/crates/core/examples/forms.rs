//! Parsing, evaluating and classifying ternary quadratic forms.

use evenclifford::classify::stratum;
use evenclifford::cli::parse_form;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let q = RingSpec::rationals();
    let f = parse_form("x1*x2 + x3^2 - 1/2*x1*x3", &q)?;
    let point = [q.from_i64(1), q.from_i64(2), q.from_i64(3)];
    println!("q = {f}");
    println!("q(1, 2, 3) = {}", f.evaluate(&point)?);
    println!("P3(q) = {}, semiregular: {}", f.half_discriminant(), f.is_semiregular());
    println!("polar matrix:\n{}", f.assoc_bilinear().matrix());

    // the same polynomial shape can change stratum with the field
    for ring in ["Fp:2", "Fp:3", "F2k:2"] {
        let r = RingSpec::parse(ring)?;
        for text in ["x1*x2 + x3^2", "x1*x2", "x1^2 + x2^2", "x1^2 + x1*x2 + x2^2"] {
            let f = parse_form(text, &r)?;
            println!("{ring:>6}  {text:<22} stratum {}", stratum(&f)?.index());
        }
    }

    // symbolic coefficients
    let z = RingSpec::polynomials(&["a", "b", "c"])?;
    let generic = parse_form("a*x1^2 + b*x2^2 + c*x3^2", &z)?;
    println!("P3 of a diagonal form: {}", generic.half_discriminant());
    Ok(())
}
