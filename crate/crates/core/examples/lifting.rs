//! From a similarity of forms to an algebra isomorphism and back again.

use evenclifford::cli::parse_form;
use evenclifford::lifting::{induced_iso, phi_lambda2, section_s_plus, section_s_prime, Similarity};
use evenclifford::linalg::Matrix;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let r = RingSpec::prime_field(7)?;
    let q = parse_form("x1*x2 + 2*x3^2 + x1*x3", &r)?;
    let g = Matrix::from_i64(&r, &[&[1, 2, 0], &[0, 1, 3], &[2, 0, 1]]);
    let l = r.from_i64(3);
    let q2 = q.act(&g)?.scale(&l)?;
    let s = Similarity::new(g, l)?;
    println!("q = {q}\nq' = {q2}");

    let h = induced_iso(&s, &q, &q2)?;
    println!("induced isomorphism h =\n{}", h.matrix());
    println!("det of its linear block: {}", phi_lambda2(&h).det());

    for k in -1..=1 {
        let lift = section_s_plus(&h, &q, &q2, k)?;
        println!("s+ with k = {k:>2}: l = {}, g =\n{}", lift.l, lift.g);
    }
    match section_s_prime(&h, &q, &q2) {
        Ok(lift) => println!("isometric lift:\n{}", lift.g),
        Err(e) => println!("no isometric lift: {e}"),
    }
    Ok(())
}
