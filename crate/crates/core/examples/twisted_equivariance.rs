//! Moving θ(q, t) by g: the block part Λ²(g) and the unipotent correction
//! that lands on θ(g·q, g·t).

use evenclifford::cli::parse_form;
use evenclifford::clifford::ThetaPoint;
use evenclifford::lifting::{act_translation, twisted_cocycle_check, twisted_equivariance_check, twisted_translation};
use evenclifford::linalg::Matrix;
use evenclifford::RingSpec;

fn main() -> evenclifford::Result<()> {
    let r = RingSpec::prime_field(5)?;
    let q = parse_form("x1^2 + 2*x2^2 + 3*x3^2 + 4*x1*x2 + x2*x3", &r)?;
    let g = Matrix::from_i64(&r, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
    let g2 = Matrix::from_i64(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 4, 1]]);
    let p = ThetaPoint::new(q.clone(), [r.one(), r.from_i64(3), r.zero()])?;

    let gt = act_translation(&g, &p.t)?;
    println!("g·q = {}\ng·t = ({}, {}, {})", q.act(&g)?, gt[0], gt[1], gt[2]);
    println!("correction h'l =\n{}", twisted_translation(&g, &p)?.matrix());
    println!("equivariance holds: {}", twisted_equivariance_check(&g, &p)?);
    println!("cocycle identity holds: {}", twisted_cocycle_check(&g, &g2, &q)?);
    Ok(())
}
