//! Strata of ternary forms over fields, normalization of semiregular forms,
//! and exhaustive orbit censuses over small fields.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::clifford::{theta, ThetaPoint};
use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::finite::{Form6, Mat9, SmallField, UnionFind};
use crate::forms::TernaryQuadraticForm;
use crate::linalg::{cross, Mat3, Matrix};

/// Largest field for which the census runs.
pub const CENSUS_LIMIT: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Stratum {
    Semiregular = 1,
    RankTwo = 2,
    PerfectSquare = 3,
    Zero = 4,
}

impl Stratum {
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn representative(self, ring: &RingSpec) -> TernaryQuadraticForm {
        let c = match self {
            Stratum::Semiregular => [0, 0, 1, 1, 0, 0],
            Stratum::RankTwo => [0, 0, 0, 1, 0, 0],
            Stratum::PerfectSquare => [0, 0, 1, 0, 0, 0],
            Stratum::Zero => [0; 6],
        };
        TernaryQuadraticForm::from_i64(ring, c)
    }
}

fn require_field(ring: &RingSpec) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(ring.to_string()))
    }
}

/// Whether `q` is a nonzero multiple of a square of a linear form: in
/// characteristic 2 the cross terms vanish; otherwise the polar matrix has rank 1.
fn is_perfect_square(q: &TernaryQuadraticForm) -> bool {
    if q.ring().characteristic() == 2 {
        return [q.l12(), q.l13(), q.l23()].iter().all(|c| c.is_zero());
    }
    let b = q.assoc_bilinear();
    let m = b.matrix();
    (0..3).all(|i| (0..3).all(|j| m.minor(i, j).is_zero()))
}

pub fn stratum(q: &TernaryQuadraticForm) -> Result<Stratum> {
    require_field(q.ring())?;
    Ok(if q.is_zero() {
        Stratum::Zero
    } else if is_perfect_square(q) {
        Stratum::PerfectSquare
    } else if !q.half_discriminant().is_zero() {
        Stratum::Semiregular
    } else {
        Stratum::RankTwo
    })
}

fn sqrt_or_err(x: &Scalar) -> Result<Scalar> {
    x.sqrt().ok_or_else(|| Error::NoSquareRoot(format!("{x} in {}", x.ring())))
}

fn unit_vector(ring: &RingSpec, i: usize) -> Vec<Scalar> {
    (0..3).map(|k| if k == i { ring.one() } else { ring.zero() }).collect()
}

fn from_columns(ring: &RingSpec, cols: &[Vec<Scalar>; 3]) -> Mat3 {
    Matrix::from_fn(ring, 3, 3, |i, j| cols[j][i].clone())
}

/// A basis `P` (as columns) with `q(P x) = λ1 x1² + λ2 x2² + λ3 x3² + x1 x2`.
fn reduce_basis(q: &TernaryQuadraticForm) -> Result<Mat3> {
    let r = q.ring().clone();
    let b = q.assoc_bilinear();
    let polar = |u: &[Scalar], v: &[Scalar]| b.evaluate(u, v);
    let (e1, e2, e3) = if r.characteristic() == 2 {
        // radical of the alternating polar form; q(radical) = P3
        let radical = vec![q.l23().clone(), q.l13().clone(), q.l12().clone()];
        let (a, c, lac) = [(0, 1, q.l12()), (0, 2, q.l13()), (1, 2, q.l23())]
            .into_iter()
            .find(|(_, _, l)| !l.is_zero())
            .ok_or(Error::NotSemiregular)?;
        let inv = lac.inverse()?;
        let ea: Vec<Scalar> = unit_vector(&r, a).iter().map(|x| x * &inv).collect();
        (ea, unit_vector(&r, c), radical)
    } else {
        let mut candidates: Vec<Vec<Scalar>> = (0..3).map(|i| unit_vector(&r, i)).collect();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            candidates.push((0..3).map(|k| &unit_vector(&r, i)[k] + &unit_vector(&r, j)[k]).collect());
        }
        let s = candidates
            .into_iter()
            .find(|v| q.evaluate(v).is_ok_and(|x| !x.is_zero()))
            .ok_or(Error::NotSemiregular)?;
        // the polar-orthogonal complement of s is the plane perpendicular to G s
        let gs = b.matrix().mul_vec(&s);
        let mut plane: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..3 {
            let v = cross(&gs, &unit_vector(&r, i)).to_vec();
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            let independent = match plane.first() {
                None => true,
                Some(u) => cross(u, &v).iter().any(|x| !x.is_zero()),
            };
            if independent {
                plane.push(v);
            }
            if plane.len() == 2 {
                break;
            }
        }
        if plane.len() < 2 {
            return Err(Error::NotSemiregular);
        }
        let (u1, mut u2) = (plane[0].clone(), plane[1].clone());
        let mut pairing = polar(&u1, &u2)?;
        if pairing.is_zero() {
            u2 = (0..3).map(|k| &u1[k] + &u2[k]).collect();
            pairing = polar(&u1, &u2)?;
        }
        let inv = pairing.inverse().map_err(|_| Error::NotSemiregular)?;
        let u2: Vec<Scalar> = u2.iter().map(|x| x * &inv).collect();
        (u1, u2, s)
    };
    let p = from_columns(&r, &[e1, e2, e3]);
    if !p.det().is_unit() {
        return Err(Error::Verification("reduced basis is singular".into()));
    }
    Ok(p)
}

/// Returns `g` with `act(g, q) = x1 x2 + x3²`. The result is verified.
pub fn normalize_semiregular(q: &TernaryQuadraticForm) -> Result<Mat3> {
    let r = q.ring().clone();
    require_field(&r)?;
    if !q.is_semiregular() {
        return Err(Error::NotSemiregular);
    }
    let q1 = TernaryQuadraticForm::q1(&r);
    if *q == q1 {
        return Ok(Matrix::identity(&r, 3));
    }
    let p = reduce_basis(q)?;
    let reduced = q.pullback(&p)?;
    let (l1, l2, l3) = (reduced.l1(), reduced.l2(), reduced.l3());
    let (one, two) = (r.one(), r.from_i64(2));
    // q'(x) = q1(g'' x) with the rows of g'' given by the u_ij below
    let u12 = one.clone();
    let u31 = sqrt_or_err(l1)?;
    let u32 = sqrt_or_err(l2)?;
    let t = &two * &(&u31 * &u32);
    let alpha = &one + &t;
    let beta = &one - &t;
    let u21 = &beta * &u12.inverse()?;
    let u33 = sqrt_or_err(&(&(&beta * l3) * &alpha.inverse().map_err(|_| Error::NotSemiregular)?))?;
    let binv = beta.inverse().map_err(|_| Error::NotSemiregular)?;
    let u13 = -&(&(&(&two * &u31) * &(&u33 * &u12)) * &binv);
    let u23 = -&(&(&two * &(&u32 * &u33)) * &u12.inverse()?);
    let z = r.zero();
    let g2 = Matrix::from_rows(&r, vec![vec![z.clone(), u12, u13], vec![u21, z, u23], vec![u31, u32, u33]])?;
    let g = g2.mul(&p.inverse()?);
    if q.act(&g)? != q1 {
        return Err(Error::Verification(format!("normalization of {q} failed")));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub representative: String,
    pub coefficients: Vec<String>,
    pub size: usize,
    pub stratum: u8,
    pub algebra_class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub ring: String,
    pub field_size: u64,
    pub form_count: usize,
    pub orbits: Vec<OrbitSummary>,
    /// Number of forms in each stratum, keyed by stratum index.
    pub stratum_sizes: BTreeMap<u8, usize>,
    pub similarity_classes: usize,
    pub algebra_classes: usize,
    pub stratum_constant_on_orbits: bool,
    /// Similar forms were found to have isomorphic algebras.
    pub well_defined: bool,
    pub bijection_verified: bool,
    pub two_perfect: bool,
    /// Over 2-perfect fields, whether there are exactly four classes.
    pub four_classes: Option<bool>,
}

/// Generators of GL3 (transvections and one diagonal family) in matrix form.
fn gl3_generators(f: &SmallField) -> Vec<Mat9> {
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for a in f.units() {
                let mut m = f.identity3();
                m[i * 3 + j] = a;
                gens.push(m);
            }
        }
    }
    for u in f.units() {
        let mut m = f.identity3();
        m[0] = u;
        gens.push(m);
    }
    gens
}

/// Similarity orbits of all forms under GL3 × units, as a union-find over
/// form indices.
fn similarity_orbits(f: &SmallField) -> UnionFind {
    let n = f.form_count();
    let gens = gl3_generators(f);
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        let form = f.form_at(x);
        for g in &gens {
            uf.union(x, f.form_index(&f.pullback_form(&form, g)));
        }
        for u in f.units() {
            uf.union(x, f.form_index(&f.scale_form(u, &form)));
        }
    }
    uf
}

fn theta_small(f: &SmallField, form: &Form6) -> Result<crate::finite::Consts> {
    let q = TernaryQuadraticForm::from_small(f, form);
    theta(&ThetaPoint::untranslated(q)).to_small(f)
}

/// Exhaustive census of similarity classes and of the algebra-isomorphism
/// classes of their even Clifford algebras.
pub fn orbit_census(field: &RingSpec) -> Result<CensusReport> {
    require_field(field)?;
    let size = field.size().ok_or_else(|| Error::NotFinite(field.to_string()))?;
    if size > CENSUS_LIMIT {
        return Err(Error::FieldTooLarge { ring: field.to_string(), size, limit: CENSUS_LIMIT });
    }
    let f = SmallField::new(field)?;
    let n = f.form_count();
    let mut uf = similarity_orbits(&f);

    // representative = smallest form index in the orbit
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        members.entry(uf.find(x)).or_default().push(x);
    }
    let mut orbits: Vec<Vec<usize>> = members.into_values().collect();
    orbits.sort_by_key(|m| m[0]);

    let mut stratum_sizes: BTreeMap<u8, usize> = BTreeMap::new();
    let mut stratum_constant = true;
    let mut rep_strata = Vec::new();
    for orbit in &orbits {
        let rep = stratum(&TernaryQuadraticForm::from_small(&f, &f.form_at(orbit[0])))?;
        for &x in orbit {
            let s = stratum(&TernaryQuadraticForm::from_small(&f, &f.form_at(x)))?;
            stratum_constant &= s == rep;
            *stratum_sizes.entry(s.index()).or_default() += 1;
        }
        rep_strata.push(rep);
    }

    // algebra classes among representatives
    let rep_algebras: Vec<_> = orbits.iter().map(|o| theta_small(&f, &f.form_at(o[0]))).collect::<Result<_>>()?;
    let mut class_of = vec![usize::MAX; orbits.len()];
    let mut classes = 0;
    for i in 0..orbits.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        class_of[i] = classes;
        for j in i + 1..orbits.len() {
            if class_of[j] == usize::MAX && !f.isomorphisms(&rep_algebras[i], &rep_algebras[j], true).is_empty() {
                class_of[j] = classes;
            }
        }
        classes += 1;
    }

    // every member's algebra is isomorphic to its representative's
    let mut well_defined = true;
    for (orbit, rep_alg) in orbits.iter().zip(&rep_algebras) {
        for &x in &orbit[1..] {
            let alg = theta_small(&f, &f.form_at(x))?;
            if f.isomorphisms(&alg, rep_alg, true).is_empty() {
                well_defined = false;
            }
        }
    }

    let summaries = orbits
        .iter()
        .zip(&rep_strata)
        .zip(&class_of)
        .map(|((o, s), &c)| {
            let q = TernaryQuadraticForm::from_small(&f, &f.form_at(o[0]));
            OrbitSummary {
                representative: q.to_string(),
                coefficients: q.coeffs().iter().map(ToString::to_string).collect(),
                size: o.len(),
                stratum: s.index(),
                algebra_class: c,
            }
        })
        .collect();
    let two_perfect = field.is_two_perfect();
    Ok(CensusReport {
        ring: field.to_string(),
        field_size: size,
        form_count: n,
        orbits: summaries,
        stratum_sizes,
        similarity_classes: orbits.len(),
        algebra_classes: classes,
        stratum_constant_on_orbits: stratum_constant,
        well_defined,
        bijection_verified: well_defined && classes == orbits.len(),
        two_perfect,
        four_classes: two_perfect.then_some(orbits.len() == 4),
    })
}

/// Over a 2-perfect field, whether all algebras `θ(q)` with `q` semiregular
/// are isomorphic to `θ(x1 x2 + x3²)`.
pub fn azumaya_uniqueness_check(field: &RingSpec) -> Result<bool> {
    require_field(field)?;
    if !field.is_two_perfect() {
        return Err(Error::NotApplicable(format!("{field} is not 2-perfect")));
    }
    let size = field.size().ok_or_else(|| Error::NotFinite(field.to_string()))?;
    if size > CENSUS_LIMIT {
        return Err(Error::FieldTooLarge { ring: field.to_string(), size, limit: CENSUS_LIMIT });
    }
    let f = SmallField::new(field)?;
    let base = theta_small(&f, &TernaryQuadraticForm::q1(field).to_small(&f)?)?;
    for x in 0..f.form_count() {
        let form = f.form_at(x);
        if !TernaryQuadraticForm::from_small(&f, &form).is_semiregular() {
            continue;
        }
        if f.isomorphisms(&theta_small(&f, &form)?, &base, true).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of isomorphism classes among the Azumaya algebras `θ(q)`,
/// informational over fields where uniqueness is not expected.
pub fn azumaya_class_count(field: &RingSpec) -> Result<usize> {
    let report = orbit_census(field)?;
    let mut classes: Vec<usize> = report.orbits.iter().filter(|o| o.stratum == 1).map(|o| o.algebra_class).collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(classes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(r: &RingSpec, c: [i64; 6]) -> TernaryQuadraticForm {
        TernaryQuadraticForm::from_i64(r, c)
    }

    #[test]
    fn representatives_have_their_strata() {
        for r in [RingSpec::rationals(), RingSpec::prime_field(2).unwrap(), RingSpec::prime_field(3).unwrap()] {
            for s in [Stratum::Semiregular, Stratum::RankTwo, Stratum::PerfectSquare, Stratum::Zero] {
                assert_eq!(stratum(&s.representative(&r)).unwrap(), s);
            }
        }
    }

    #[test]
    fn sum_of_squares_in_characteristic_two() {
        let f2 = RingSpec::prime_field(2).unwrap();
        assert_eq!(stratum(&form(&f2, [1, 1, 0, 0, 0, 0])).unwrap(), Stratum::PerfectSquare);
        assert!(stratum(&form(&RingSpec::integers(), [1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn normalization_examples() {
        let f2 = RingSpec::prime_field(2).unwrap();
        assert_eq!(normalize_semiregular(&TernaryQuadraticForm::q1(&f2)).unwrap(), Matrix::identity(&f2, 3));
        let q = form(&f2, [1, 0, 1, 1, 0, 0]);
        assert_eq!(q.half_discriminant(), f2.one());
        let g = normalize_semiregular(&q).unwrap();
        assert_eq!(q.act(&g).unwrap(), TernaryQuadraticForm::q1(&f2));
        assert_eq!(normalize_semiregular(&form(&f2, [0, 0, 1, 0, 0, 0])), Err(Error::NotSemiregular));
    }

    #[test]
    fn normalization_in_odd_characteristic() {
        let q = RingSpec::rationals();
        let f = form(&q, [0, 0, 4, 1, 0, 0]);
        let g = normalize_semiregular(&f).unwrap();
        assert_eq!(f.act(&g).unwrap(), TernaryQuadraticForm::q1(&q));
        let f7 = RingSpec::prime_field(7).unwrap();
        let mut normalized = 0;
        for a in 0..7 {
            for c in 1..7 {
                let f = form(&f7, [a, 1, c, 1, 2, 3]);
                match normalize_semiregular(&f) {
                    Ok(g) => {
                        assert_eq!(f.act(&g).unwrap(), TernaryQuadraticForm::q1(&f7));
                        normalized += 1;
                    }
                    Err(Error::NoSquareRoot(_) | Error::NotSemiregular) => {}
                    Err(e) => panic!("{f}: {e}"),
                }
            }
        }
        assert!(normalized > 0);
        // x1^2 + x2^2 + x3^2 over Q needs sqrt of a non-square somewhere
        assert!(matches!(normalize_semiregular(&form(&q, [1, 1, 1, 0, 0, 0])), Err(Error::NoSquareRoot(_))));
    }

    #[test]
    fn f2_census() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let report = orbit_census(&f2).unwrap();
        // x1*x2 and x1^2 + x1*x2 + x2^2 both sit in stratum 2 but are not similar
        assert_eq!(report.similarity_classes, 5);
        assert_eq!(report.algebra_classes, 5);
        assert!(report.bijection_verified && report.well_defined && report.stratum_constant_on_orbits);
        assert_eq!(report.stratum_sizes[&3], 7);
        assert_eq!(report.stratum_sizes[&4], 1);
        assert_eq!(report.stratum_sizes[&1], 28);
        assert_eq!(report.stratum_sizes[&2], 28);
        assert_eq!(report.orbits.iter().map(|o| o.size).sum::<usize>(), 64);
        let mut strata: Vec<u8> = report.orbits.iter().map(|o| o.stratum).collect();
        strata.sort_unstable();
        assert_eq!(strata, vec![1, 2, 2, 3, 4]);
        assert_eq!(report.four_classes, Some(false));
    }

    #[test]
    fn f3_census_counts_agree() {
        let report = orbit_census(&RingSpec::prime_field(3).unwrap()).unwrap();
        assert_eq!(report.similarity_classes, report.algebra_classes);
        assert!(report.bijection_verified);
        assert_eq!(report.orbits.iter().map(|o| o.size).sum::<usize>(), 729);
        assert_eq!(report.four_classes, None);
    }

    #[test]
    fn census_gate() {
        assert!(matches!(orbit_census(&RingSpec::prime_field(5).unwrap()), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(orbit_census(&RingSpec::rationals()), Err(Error::NotFinite(_))));
    }

    #[test]
    fn azumaya_uniqueness_over_f2() {
        assert!(azumaya_uniqueness_check(&RingSpec::prime_field(2).unwrap()).unwrap());
        assert!(matches!(
            azumaya_uniqueness_check(&RingSpec::prime_field(3).unwrap()),
            Err(Error::NotApplicable(_))
        ));
    }
}
