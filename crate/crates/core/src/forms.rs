//! Ternary quadratic forms and 3x3 bilinear forms.

use std::fmt;

use crate::coeff::{common_ring, RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::finite::{Form6, SmallField};
use crate::linalg::{Mat3, Matrix};

/// Largest field over which `similar_bruteforce` enumerates GL3.
pub const SIMILARITY_SEARCH_LIMIT: u64 = 5;

/// `Σ λi xi² + Σ_{i<j} λij xi xj`, stored as `(λ1, λ2, λ3, λ12, λ13, λ23)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryQuadraticForm {
    ring: RingSpec,
    c: [Scalar; 6],
}

impl fmt::Debug for TernaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.ring)
    }
}

const MONOMIALS: [&str; 6] = ["x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"];

impl fmt::Display for TernaryQuadraticForm {
    /// Renders in the input grammar, e.g. `x1*x2 + x3^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, mono) in self.c.iter().zip(MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let polynomial = c.as_poly().is_some_and(|p| p.as_constant().is_none());
            let (negative, magnitude) = if !polynomial && text.starts_with('-') {
                (true, (-c).to_string())
            } else {
                (false, text)
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if polynomial {
                write!(f, "({magnitude})*")?;
            } else if magnitude != "1" {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{mono}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl TernaryQuadraticForm {
    pub fn new(l1: Scalar, l2: Scalar, l3: Scalar, l12: Scalar, l13: Scalar, l23: Scalar) -> Result<Self> {
        Self::from_coeffs([l1, l2, l3, l12, l13, l23])
    }

    /// Coefficients in the order `(λ1, λ2, λ3, λ12, λ13, λ23)`.
    pub fn from_coeffs(c: [Scalar; 6]) -> Result<Self> {
        let ring = common_ring(&c)?;
        Ok(TernaryQuadraticForm { ring, c })
    }

    pub fn from_i64(ring: &RingSpec, c: [i64; 6]) -> Self {
        TernaryQuadraticForm { ring: ring.clone(), c: c.map(|x| ring.from_i64(x)) }
    }

    pub fn zero(ring: &RingSpec) -> Self {
        Self::from_i64(ring, [0; 6])
    }

    /// The normal form `x1 x2 + x3²`.
    pub fn q1(ring: &RingSpec) -> Self {
        Self::from_i64(ring, [0, 0, 1, 1, 0, 0])
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Scalar; 6] {
        &self.c
    }

    pub fn l1(&self) -> &Scalar {
        &self.c[0]
    }
    pub fn l2(&self) -> &Scalar {
        &self.c[1]
    }
    pub fn l3(&self) -> &Scalar {
        &self.c[2]
    }
    pub fn l12(&self) -> &Scalar {
        &self.c[3]
    }
    pub fn l13(&self) -> &Scalar {
        &self.c[4]
    }
    pub fn l23(&self) -> &Scalar {
        &self.c[5]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn evaluate(&self, v: &[Scalar]) -> Result<Scalar> {
        if v.len() != 3 {
            return Err(Error::Dimension(format!("expected 3 coordinates, got {}", v.len())));
        }
        for x in v {
            self.c[0].check_ring(x)?;
        }
        let [l1, l2, l3, l12, l13, l23] = &self.c;
        let (x1, x2, x3) = (&v[0], &v[1], &v[2]);
        let terms = [
            l1 * &(x1 * x1),
            l2 * &(x2 * x2),
            l3 * &(x3 * x3),
            l12 * &(x1 * x2),
            l13 * &(x1 * x3),
            l23 * &(x2 * x3),
        ];
        Ok(terms.iter().fold(self.ring.zero(), |acc, t| &acc + t))
    }

    /// The polar form `q(v+v') - q(v) - q(v')`: diagonal 2λi, off-diagonal λij.
    pub fn assoc_bilinear(&self) -> BilinearForm33 {
        let [l1, l2, l3, l12, l13, l23] = &self.c;
        let two = |x: &Scalar| x + x;
        let rows = vec![
            vec![two(l1), l12.clone(), l13.clone()],
            vec![l12.clone(), two(l2), l23.clone()],
            vec![l13.clone(), l23.clone(), two(l3)],
        ];
        BilinearForm33 { m: Matrix::from_rows(&self.ring, rows).expect("3x3") }
    }

    /// Diagonal λi with b21 = λ12, b32 = λ23, b13 = λ13 and zeros elsewhere.
    pub fn canonical_lift(&self) -> BilinearForm33 {
        let [l1, l2, l3, l12, l13, l23] = &self.c;
        let z = self.ring.zero();
        let rows = vec![
            vec![l1.clone(), z.clone(), l13.clone()],
            vec![l12.clone(), l2.clone(), z.clone()],
            vec![z.clone(), l23.clone(), l3.clone()],
        ];
        BilinearForm33 { m: Matrix::from_rows(&self.ring, rows).expect("3x3") }
    }

    /// `P3 = 4λ1λ2λ3 + λ12λ13λ23 - (λ1λ23² + λ2λ13² + λ3λ12²)`.
    pub fn half_discriminant(&self) -> Scalar {
        let [l1, l2, l3, l12, l13, l23] = &self.c;
        let four = self.ring.from_i64(4);
        let positive = &(&four * &(&(l1 * l2) * l3)) + &(&(l12 * l13) * l23);
        let negative = &(&(l1 * &(l23 * l23)) + &(l2 * &(l13 * l13))) + &(l3 * &(l12 * l12));
        &positive - &negative
    }

    pub fn is_semiregular(&self) -> bool {
        self.half_discriminant().is_unit()
    }

    /// Coefficients of `x -> q(g x)`.
    pub fn pullback(&self, g: &Mat3) -> Result<Self> {
        check_mat3(g, &self.ring)?;
        let col = |j: usize| g.col(j);
        let cols = [col(0), col(1), col(2)];
        let b = self.assoc_bilinear();
        let diag = [self.evaluate(&cols[0])?, self.evaluate(&cols[1])?, self.evaluate(&cols[2])?];
        let [d1, d2, d3] = diag;
        Ok(TernaryQuadraticForm {
            ring: self.ring.clone(),
            c: [
                d1,
                d2,
                d3,
                b.evaluate(&cols[0], &cols[1])?,
                b.evaluate(&cols[0], &cols[2])?,
                b.evaluate(&cols[1], &cols[2])?,
            ],
        })
    }

    /// `(g.q)(v) = q(g⁻¹ v)`; `g` must have unit determinant.
    pub fn act(&self, g: &Mat3) -> Result<Self> {
        check_mat3(g, &self.ring)?;
        self.pullback(&g.inverse()?)
    }

    pub fn scale(&self, u: &Scalar) -> Result<Self> {
        self.c[0].check_ring(u)?;
        if !u.is_unit() {
            return Err(Error::NotAUnit(u.to_string()));
        }
        Ok(self.scale_unchecked(u))
    }

    /// Multiplies every coefficient by `s`, unit or not.
    pub fn scale_unchecked(&self, s: &Scalar) -> Self {
        TernaryQuadraticForm { ring: self.ring.clone(), c: self.c.clone().map(|x| s * &x) }
    }

    pub fn neg(&self) -> Self {
        TernaryQuadraticForm { ring: self.ring.clone(), c: self.c.clone().map(|x| -&x) }
    }

    pub fn to_small(&self, f: &SmallField) -> Result<Form6> {
        let mut out = [0u8; 6];
        for (slot, c) in out.iter_mut().zip(&self.c) {
            *slot = f.index(c)?;
        }
        Ok(out)
    }

    pub fn from_small(f: &SmallField, c: &Form6) -> Self {
        TernaryQuadraticForm { ring: f.ring().clone(), c: c.map(|x| f.scalar(x).clone()) }
    }
}

pub(crate) fn check_mat3(g: &Mat3, ring: &RingSpec) -> Result<()> {
    if g.rows() != 3 || g.cols() != 3 {
        return Err(Error::Dimension(format!("expected a 3x3 matrix, got {}x{}", g.rows(), g.cols())));
    }
    if g.ring() != ring {
        return Err(Error::RingMismatch { left: g.ring().to_string(), right: ring.to_string() });
    }
    Ok(())
}

/// `b(x, x') = Σ bij xi x'j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm33 {
    m: Mat3,
}

impl BilinearForm33 {
    pub fn new(m: Mat3) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::Dimension(format!("expected a 3x3 matrix, got {}x{}", m.rows(), m.cols())));
        }
        Ok(BilinearForm33 { m })
    }

    pub fn from_i64(ring: &RingSpec, rows: [[i64; 3]; 3]) -> Self {
        BilinearForm33 { m: Matrix::from_fn(ring, 3, 3, |i, j| ring.from_i64(rows[i][j])) }
    }

    pub fn zero(ring: &RingSpec) -> Self {
        BilinearForm33 { m: Matrix::zeros(ring, 3, 3) }
    }

    pub fn identity(ring: &RingSpec) -> Self {
        BilinearForm33 { m: Matrix::identity(ring, 3) }
    }

    pub fn ring(&self) -> &RingSpec {
        self.m.ring()
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    /// Entry `b_ij` with 1-based indices, as in the usual notation.
    pub fn b(&self, i: usize, j: usize) -> &Scalar {
        &self.m[(i - 1, j - 1)]
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        if x.len() != 3 || y.len() != 3 {
            return Err(Error::Dimension("bilinear form takes two 3-vectors".into()));
        }
        let ring = self.ring();
        let mut acc = ring.zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc.try_add(&self.m[(i, j)].try_mul(&x[i])?.try_mul(&y[j])?)?;
            }
        }
        Ok(acc)
    }

    /// `v -> b(v, v)`: λi = bii, λij = bij + bji.
    pub fn induced_quadratic(&self) -> TernaryQuadraticForm {
        let b = |i, j| self.b(i, j).clone();
        TernaryQuadraticForm {
            ring: self.ring().clone(),
            c: [b(1, 1), b(2, 2), b(3, 3), &b(1, 2) + &b(2, 1), &b(1, 3) + &b(3, 1), &b(2, 3) + &b(3, 2)],
        }
    }

    pub fn transpose(&self) -> Self {
        BilinearForm33 { m: self.m.transpose() }
    }

    pub fn neg(&self) -> Self {
        BilinearForm33 { m: self.m.neg() }
    }

    pub fn add(&self, other: &Self) -> Self {
        BilinearForm33 { m: self.m.add(&other.m) }
    }
}

/// Exhaustive search for `(g, u)` with `act(g, q) = u⁻¹ q'`, scanning GL3 in
/// row-major lexicographic order and units in increasing order. Equal forms
/// return `(I, 1)` immediately.
pub fn similar_bruteforce(
    q: &TernaryQuadraticForm,
    q2: &TernaryQuadraticForm,
    field: &RingSpec,
) -> Result<Option<(Mat3, Scalar)>> {
    let f = SmallField::new(field)?;
    let size = field.size().unwrap_or(0);
    if size > SIMILARITY_SEARCH_LIMIT {
        return Err(Error::FieldTooLarge { ring: field.to_string(), size, limit: SIMILARITY_SEARCH_LIMIT });
    }
    if q == q2 {
        return Ok(Some((Matrix::identity(field, 3), field.one())));
    }
    let a = q.to_small(&f)?;
    let b = q2.to_small(&f)?;
    // act(g, q) = u⁻¹ q'  <=>  q'(g y) = u q(y)
    for g in f.gl3() {
        let pulled = f.pullback_form(&b, &g);
        for u in f.units() {
            if pulled == f.scale_form(u, &a) {
                let m = Matrix::from_fn(field, 3, 3, |i, j| f.scalar(g[i * 3 + j]).clone());
                return Ok(Some((m, f.scalar(u).clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    #[test]
    fn evaluation_examples() {
        let r = q();
        let one = r.one();
        assert_eq!(TernaryQuadraticForm::q1(&r).evaluate(&[one.clone(), one.clone(), one]).unwrap(), r.from_i64(2));
        let p = RingSpec::polynomials(&["a", "b", "c"]).unwrap();
        let v = ["a", "b", "c"].map(|n| p.variable(n).unwrap());
        let sq = TernaryQuadraticForm::from_i64(&p, [1, 0, 0, 0, 0, 0]);
        assert_eq!(sq.evaluate(&v).unwrap(), &v[0] * &v[0]);
        assert!(TernaryQuadraticForm::zero(&p).evaluate(&v).unwrap().is_zero());
    }

    #[test]
    fn polar_form_of_q1() {
        let r = q();
        assert_eq!(
            TernaryQuadraticForm::q1(&r).assoc_bilinear(),
            BilinearForm33::from_i64(&r, [[0, 1, 0], [1, 0, 0], [0, 0, 2]])
        );
        let f2 = RingSpec::prime_field(2).unwrap();
        let b = TernaryQuadraticForm::from_i64(&f2, [1, 1, 1, 1, 0, 1]).assoc_bilinear();
        assert!((1..=3).all(|i| b.b(i, i).is_zero()));
    }

    #[test]
    fn induced_quadratic_examples() {
        let r = q();
        let id = BilinearForm33::identity(&r);
        assert_eq!(id.induced_quadratic(), TernaryQuadraticForm::from_i64(&r, [1, 1, 1, 0, 0, 0]));
        let b21 = BilinearForm33::from_i64(&r, [[0, 0, 0], [1, 0, 0], [0, 0, 0]]);
        assert_eq!(b21.induced_quadratic(), TernaryQuadraticForm::from_i64(&r, [0, 0, 0, 1, 0, 0]));
        assert_eq!(id.transpose().neg().induced_quadratic(), TernaryQuadraticForm::from_i64(&r, [-1, -1, -1, 0, 0, 0]));
    }

    #[test]
    fn canonical_lift_placement() {
        let r = q();
        assert_eq!(
            TernaryQuadraticForm::q1(&r).canonical_lift(),
            BilinearForm33::from_i64(&r, [[0, 0, 0], [1, 0, 0], [0, 0, 1]])
        );
        let names = ["l1", "l2", "l3", "l12", "l13", "l23"];
        let p = RingSpec::polynomials(&names).unwrap();
        let v = names.map(|n| p.variable(n).unwrap());
        let form = TernaryQuadraticForm::from_coeffs(v.clone()).unwrap();
        let b = form.canonical_lift();
        assert_eq!(b.b(2, 1), &v[3]);
        assert_eq!(b.b(1, 3), &v[4]);
        assert_eq!(b.b(3, 2), &v[5]);
        assert!(b.b(1, 2).is_zero() && b.b(2, 3).is_zero() && b.b(3, 1).is_zero());
        assert_eq!(b.induced_quadratic(), form);
        let c = b.matrix();
        assert_eq!(form.assoc_bilinear().matrix(), &c.add(&c.transpose()));
    }

    #[test]
    fn half_discriminant_examples() {
        let r = q();
        let q1 = TernaryQuadraticForm::q1(&r);
        assert_eq!(q1.half_discriminant(), r.from_i64(-1));
        assert!(q1.is_semiregular());
        let sum = TernaryQuadraticForm::from_i64(&r, [1, 1, 1, 0, 0, 0]);
        assert_eq!(sum.half_discriminant(), r.from_i64(4));
        assert!(sum.is_semiregular());
        let f2 = RingSpec::prime_field(2).unwrap();
        assert!(!TernaryQuadraticForm::from_i64(&f2, [1, 1, 1, 0, 0, 0]).is_semiregular());
        assert!(!TernaryQuadraticForm::zero(&r).is_semiregular());
    }

    #[test]
    fn action_examples() {
        let r = q();
        let x1x2 = TernaryQuadraticForm::from_i64(&r, [0, 0, 0, 1, 0, 0]);
        let g = Matrix::from_i64(&r, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        assert_eq!(x1x2.act(&g).unwrap(), x1x2);
        let swap = Matrix::from_i64(&r, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let x1sq = TernaryQuadraticForm::from_i64(&r, [1, 0, 0, 0, 0, 0]);
        assert_eq!(x1sq.act(&swap).unwrap(), TernaryQuadraticForm::from_i64(&r, [0, 0, 1, 0, 0, 0]));
        assert_eq!(x1sq.act(&Matrix::identity(&r, 3)).unwrap(), x1sq);
        let singular = Matrix::from_i64(&r, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert_eq!(x1sq.act(&singular), Err(Error::Singular));
    }

    #[test]
    fn scaling() {
        let r = q();
        let q1 = TernaryQuadraticForm::q1(&r);
        assert_eq!(q1.scale(&r.one()).unwrap(), q1);
        assert_eq!(q1.scale(&r.from_i64(-1)).unwrap(), TernaryQuadraticForm::from_i64(&r, [0, 0, -1, -1, 0, 0]));
        assert!(q1.scale(&r.zero()).is_err());
    }

    #[test]
    fn brute_force_similarity() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let q1 = TernaryQuadraticForm::q1(&f2);
        let (g, u) = similar_bruteforce(&q1, &q1, &f2).unwrap().unwrap();
        assert_eq!(g, Matrix::identity(&f2, 3));
        assert!(u.is_one());
        let x3sq = TernaryQuadraticForm::from_i64(&f2, [0, 0, 1, 0, 0, 0]);
        assert!(similar_bruteforce(&q1, &x3sq, &f2).unwrap().is_none());
        let x1sq = TernaryQuadraticForm::from_i64(&f2, [1, 0, 0, 0, 0, 0]);
        let (g, u) = similar_bruteforce(&x1sq, &x3sq, &f2).unwrap().unwrap();
        assert_eq!(x1sq.act(&g).unwrap(), x3sq.scale(&u.inverse().unwrap()).unwrap());
        assert!(similar_bruteforce(&q1, &q1, &RingSpec::rationals()).is_err());
    }

    #[test]
    fn display_round_trips_through_rendering() {
        let r = q();
        assert_eq!(TernaryQuadraticForm::q1(&r).to_string(), "x3^2 + x1*x2");
        assert_eq!(TernaryQuadraticForm::from_i64(&r, [-1, 0, 2, 0, 0, -3]).to_string(), "-x1^2 + 2*x3^2 - 3*x2*x3");
        assert_eq!(TernaryQuadraticForm::zero(&r).to_string(), "0");
    }

    fn f7_form() -> impl Strategy<Value = TernaryQuadraticForm> {
        proptest::array::uniform6(0i64..7).prop_map(|c| TernaryQuadraticForm::from_i64(&RingSpec::prime_field(7).unwrap(), c))
    }

    fn f7_invertible() -> impl Strategy<Value = Mat3> {
        proptest::array::uniform9(0i64..7)
            .prop_map(|e| {
                let r = RingSpec::prime_field(7).unwrap();
                Matrix::from_fn(&r, 3, 3, |i, j| r.from_i64(e[i * 3 + j]))
            })
            .prop_filter("invertible", |g| !g.det().is_zero())
    }

    proptest! {
        #[test]
        fn coefficients_recoverable_from_values(form in f7_form()) {
            let r = form.ring().clone();
            let e = |i: usize| -> Vec<Scalar> { (0..3).map(|k| if k == i { r.one() } else { r.zero() }).collect() };
            for i in 0..3 {
                prop_assert_eq!(&form.evaluate(&e(i)).unwrap(), &form.coeffs()[i]);
            }
            for (idx, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                let s: Vec<Scalar> = (0..3).map(|k| &e(i)[k] + &e(j)[k]).collect();
                let cross = &(&form.evaluate(&s).unwrap() - &form.coeffs()[i]) - &form.coeffs()[j];
                prop_assert_eq!(&cross, &form.coeffs()[3 + idx]);
            }
        }

        #[test]
        fn discriminant_transforms_by_det_squared(form in f7_form(), g in f7_invertible()) {
            let d = g.det();
            let lhs = form.act(&g).unwrap().half_discriminant();
            let rhs = &d.pow(-2).unwrap() * &form.half_discriminant();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn action_is_a_left_action(form in f7_form(), g in f7_invertible(), h in f7_invertible()) {
            prop_assert_eq!(form.act(&g.mul(&h)).unwrap(), form.act(&h).unwrap().act(&g).unwrap());
        }

        #[test]
        fn scaling_discriminant(form in f7_form(), u in 1i64..7) {
            let r = form.ring().clone();
            let u = r.from_i64(u);
            let scaled = form.scale(&u).unwrap();
            prop_assert_eq!(scaled.half_discriminant(), &u.pow_u(3) * &form.half_discriminant());
            prop_assert_eq!(scaled.is_semiregular(), form.is_semiregular());
        }

        #[test]
        fn lift_then_induce_is_identity(form in f7_form()) {
            prop_assert_eq!(form.canonical_lift().induced_quadratic(), form.clone());
            let c = form.canonical_lift();
            prop_assert_eq!(form.assoc_bilinear(), c.add(&c.transpose()));
        }
    }
}
