//! Even Clifford algebras in explicit coordinates.
//!
//! The basis is `(w, ε1, ε2, ε3)` with `ε1 = e1∧e2`, `ε2 = e2∧e3`,
//! `ε3 = e3∧e1`. Two multiplication tables are provided: `upsilon`, indexed by
//! a bilinear form, and `theta`, indexed by a quadratic form and a translation
//! vector. `clifford_product_oracle` rebuilds the former from the Clifford
//! relations.

use std::collections::BTreeMap;

use crate::algebra4::{AlgElement, Algebra4};
use crate::coeff::{common_ring, RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::forms::{BilinearForm33, TernaryQuadraticForm};
use crate::linalg::{Mat3, Matrix};

/// An invertible 4x4 map fixing `w`: `[[1, p], [0, B]]`, acting on column
/// vectors (column j is the image of basis vector j).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabWMap {
    m: Matrix,
}

impl StabWMap {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Dimension(format!("expected a 4x4 matrix, got {}x{}", m.rows(), m.cols())));
        }
        if !m[(0, 0)].is_one() || (1..4).any(|i| !m[(i, 0)].is_zero()) {
            return Err(Error::NotUnitFixing(format!("first column must be (1,0,0,0), got {:?}", m.col(0))));
        }
        if !m.det().is_unit() {
            return Err(Error::Singular);
        }
        Ok(StabWMap { m })
    }

    pub fn identity(ring: &RingSpec) -> Self {
        StabWMap { m: Matrix::identity(ring, 4) }
    }

    /// `[[1, p], [0, b]]`.
    pub fn from_blocks(p: &[Scalar], b: &Mat3) -> Result<Self> {
        if p.len() != 3 || b.rows() != 3 || b.cols() != 3 {
            return Err(Error::Dimension("expected a 3-vector and a 3x3 block".into()));
        }
        let ring = b.ring().clone();
        let m = Matrix::from_fn(&ring, 4, 4, |i, j| match (i, j) {
            (0, 0) => ring.one(),
            (0, j) => p[j - 1].clone(),
            (_, 0) => ring.zero(),
            (i, j) => b[(i - 1, j - 1)].clone(),
        });
        Self::new(m)
    }

    /// `t(εi) = ti w + εi`: first row `(1, t1, t2, t3)`, identity elsewhere.
    pub fn unipotent(t: &[Scalar]) -> Result<Self> {
        let ring = common_ring(t)?;
        Self::from_blocks(t, &Matrix::identity(&ring, 3))
    }

    /// `block(1, b)`.
    pub fn block(b: &Mat3) -> Result<Self> {
        let z = b.ring().zero();
        Self::from_blocks(&[z.clone(), z.clone(), z], b)
    }

    pub fn ring(&self) -> &RingSpec {
        self.m.ring()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// First-row tail `p`.
    pub fn translation(&self) -> [Scalar; 3] {
        std::array::from_fn(|j| self.m[(0, j + 1)].clone())
    }

    /// Lower-right 3x3 block.
    pub fn linear_part(&self) -> Mat3 {
        self.m.submatrix(1..4, 1..4)
    }

    pub fn compose(&self, other: &StabWMap) -> StabWMap {
        StabWMap { m: self.m.mul(&other.m) }
    }

    pub fn inverse(&self) -> StabWMap {
        StabWMap { m: self.m.inverse().expect("group elements are invertible") }
    }

    pub fn det(&self) -> Scalar {
        self.m.det()
    }

    pub fn apply(&self, x: &AlgElement) -> AlgElement {
        AlgElement::apply(&self.m, x)
    }

    pub fn is_unipotent(&self) -> bool {
        self.linear_part() == Matrix::identity(self.ring(), 3)
    }

    /// `h = hs · hl` with `hs = block(1, B)` and `hl` unipotent with row `p`.
    pub fn decompose(&self) -> (StabWMap, StabWMap) {
        let hs = StabWMap::block(&self.linear_part()).expect("invertible block");
        let hl = StabWMap::unipotent(&self.translation()).expect("unipotent");
        (hs, hl)
    }

    /// `h = hl' · hs` with `hl'` unipotent with row `p B⁻¹`.
    pub fn decompose_left(&self) -> (StabWMap, StabWMap) {
        let b = self.linear_part();
        let binv = b.inverse().expect("invertible block");
        let p = Matrix::from_rows(self.ring(), vec![self.translation().to_vec()]).expect("row");
        let row = p.mul(&binv).row(0);
        (StabWMap::unipotent(&row).expect("unipotent"), StabWMap::block(&b).expect("invertible block"))
    }
}

/// Transport of structure: `(h·A)(x, y) = h(A(h⁻¹x, h⁻¹y))`.
pub fn act_stabw(h: &StabWMap, a: &Algebra4) -> Algebra4 {
    let hinv = h.inverse();
    let ring = a.ring().clone();
    let pre: Vec<AlgElement> = (0..4).map(|i| hinv.apply(&AlgElement::basis(&ring, i))).collect();
    Algebra4::from_products(&ring, |i, j| h.apply(&a.mul(&pre[i], &pre[j])))
}

/// Whether `h(A(u, v)) = A'(h u, h v)` on all basis pairs.
pub fn is_isomorphism(h: &StabWMap, a: &Algebra4, a2: &Algebra4) -> bool {
    let ring = a.ring();
    let img: Vec<AlgElement> = (0..4).map(|i| h.apply(&AlgElement::basis(ring, i))).collect();
    (0..4).all(|i| (0..4).all(|j| h.apply(&a.basis_product(i, j)) == a2.mul(&img[i], &img[j])))
}

/// A quadratic form together with a translation vector `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoint {
    pub q: TernaryQuadraticForm,
    pub t: [Scalar; 3],
}

impl ThetaPoint {
    pub fn new(q: TernaryQuadraticForm, t: [Scalar; 3]) -> Result<Self> {
        for s in &t {
            q.l1().check_ring(s)?;
        }
        Ok(ThetaPoint { q, t })
    }

    pub fn untranslated(q: TernaryQuadraticForm) -> Self {
        let z = q.ring().zero();
        ThetaPoint { q, t: [z.clone(), z.clone(), z] }
    }

    pub fn ring(&self) -> &RingSpec {
        self.q.ring()
    }
}

fn elt(w: Scalar, e1: Scalar, e2: Scalar, e3: Scalar) -> AlgElement {
    AlgElement::new([w, e1, e2, e3]).expect("shared ring")
}

/// The multiplication table indexed by a bilinear form `B`. `M(i, j)` is the
/// unsigned 2x2 minor of `B` with row i and column j deleted.
pub fn upsilon(b: &BilinearForm33) -> Algebra4 {
    let ring = b.ring().clone();
    let mat = b.matrix();
    let x = |i: usize, j: usize| b.b(i, j).clone();
    let m = |i: usize, j: usize| mat.minor(i - 1, j - 1);
    Algebra4::from_products(&ring, |i, j| match (i, j) {
        (1, 1) => elt(-m(3, 3), &x(2, 1) - &x(1, 2), ring.zero(), ring.zero()),
        (2, 2) => elt(-m(1, 1), ring.zero(), &x(3, 2) - &x(2, 3), ring.zero()),
        (3, 3) => elt(-m(2, 2), ring.zero(), ring.zero(), &x(1, 3) - &x(3, 1)),
        (1, 2) => elt(-m(3, 1), -x(2, 3), -x(1, 2), -x(2, 2)),
        (2, 3) => elt(m(1, 2), -x(3, 3), -x(3, 1), -x(2, 3)),
        (3, 1) => elt(m(2, 3), -x(3, 1), -x(1, 1), -x(1, 2)),
        (1, 3) => elt(m(3, 2), x(1, 3), x(1, 1), x(2, 1)),
        (2, 1) => elt(-m(1, 3), x(3, 2), x(2, 1), x(2, 2)),
        // +M21: the sign forced by the Clifford relations and by associativity
        (3, 2) => elt(m(2, 1), x(3, 3), x(1, 3), x(3, 2)),
        _ => unreachable!(),
    })
}

/// Recovers `B` with `upsilon(B) = A`, if there is one.
pub fn upsilon_inverse(a: &Algebra4) -> Option<BilinearForm33> {
    let c = |i, j, k| a.constant(i, j, k).clone();
    let rows = vec![
        vec![-c(3, 1, 2), -c(1, 2, 2), c(1, 3, 1)],
        vec![c(1, 3, 3), -c(1, 2, 3), -c(1, 2, 1)],
        vec![-c(2, 3, 2), c(2, 1, 1), -c(2, 3, 1)],
    ];
    let b = BilinearForm33::new(Matrix::from_rows(a.ring(), rows).ok()?).ok()?;
    (upsilon(&b) == *a).then_some(b)
}

/// The multiplication table indexed by `(q, t)`.
pub fn theta(p: &ThetaPoint) -> Algebra4 {
    let ring = p.ring().clone();
    let [l1, l2, l3, l12, l13, l23] = p.q.coeffs();
    let [t1, t2, t3] = &p.t;
    let z = || ring.zero();
    let two = ring.from_i64(2);
    Algebra4::from_products(&ring, |i, j| match (i, j) {
        (1, 1) => elt(&(&(t1 * l12) - &(l1 * l2)) - &(t1 * t1), l12 - &(&two * t1), z(), z()),
        (2, 2) => elt(&(&(t2 * l23) - &(l2 * l3)) - &(t2 * t2), z(), l23 - &(&two * t2), z()),
        (3, 3) => elt(&(&(t3 * l13) - &(l1 * l3)) - &(t3 * t3), z(), z(), l13 - &(&two * t3)),
        (1, 2) => elt(&(&(l2 * l13) - &(l2 * t3)) - &(t1 * t2), -t2, -t1, -l2),
        (2, 3) => elt(&(&(l3 * l12) - &(l3 * t1)) - &(t2 * t3), -l3, -t3, -t2),
        (3, 1) => elt(&(&(l1 * l23) - &(l1 * t2)) - &(t1 * t3), -t3, -l1, -t1),
        (2, 1) => elt(&(l2 * t3) - &(&(l12 - t1) * &(l23 - t2)), l23 - t2, l12 - t1, l2.clone()),
        (3, 2) => elt(&(l3 * t1) - &(&(l13 - t3) * &(l23 - t2)), l3.clone(), l13 - t3, l23 - t2),
        (1, 3) => elt(&(l1 * t2) - &(&(l12 - t1) * &(l13 - t3)), l13 - t3, l1.clone(), l12 - t1),
        _ => unreachable!(),
    })
}

/// `[[λ1, t1, λ13 - t3], [λ12 - t1, λ2, t2], [t3, λ23 - t2, λ3]]`.
pub fn theta_to_bilinear(p: &ThetaPoint) -> BilinearForm33 {
    let [l1, l2, l3, l12, l13, l23] = p.q.coeffs();
    let [t1, t2, t3] = &p.t;
    let rows = vec![
        vec![l1.clone(), t1.clone(), l13 - t3],
        vec![l12 - t1, l2.clone(), t2.clone()],
        vec![t3.clone(), l23 - t2, l3.clone()],
    ];
    BilinearForm33::new(Matrix::from_rows(p.ring(), rows).expect("3x3")).expect("3x3")
}

/// Inverse of [`theta_to_bilinear`].
pub fn bilinear_to_theta(b: &BilinearForm33) -> ThetaPoint {
    let x = |i, j| b.b(i, j).clone();
    ThetaPoint { q: b.induced_quadratic(), t: [x(1, 2), x(2, 3), x(3, 1)] }
}

/// The involution `B ↦ -Bᵗ` realizes the opposite algebra; in `(q, t)`
/// coordinates it reads `(q, t) ↦ (-q, (t1 - λ12, t2 - λ23, t3 - λ13))`.
pub fn opposite_involution_check(b: &BilinearForm33) -> bool {
    let minus_bt = b.transpose().neg();
    if upsilon(b).opposite() != upsilon(&minus_bt) {
        return false;
    }
    let p = bilinear_to_theta(b);
    let t = [&p.t[0] - p.q.l12(), &p.t[1] - p.q.l23(), &p.t[2] - p.q.l13()];
    let p2 = ThetaPoint { q: p.q.neg(), t };
    theta_to_bilinear(&p2) == minus_bt && theta(&p).opposite() == theta(&p2)
}

/// Element of the 8-dimensional Clifford algebra as a map from increasing
/// index words to coefficients.
type CliffordElement = BTreeMap<Vec<u8>, Scalar>;

struct CliffordRewriter<'a> {
    b: &'a BilinearForm33,
}

impl CliffordRewriter<'_> {
    fn add_term(&self, out: &mut CliffordElement, word: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = out.entry(word).or_insert_with(|| c.ring().zero());
        *slot = &*slot + &c;
    }

    /// Normal-orders `c · e_word` by `ei ei -> q(ei)` and, for `i > j`,
    /// `ei ej -> b_q(ei, ej) - ej ei`.
    fn reduce(&self, word: Vec<u8>, c: Scalar, out: &mut CliffordElement) {
        let Some(pos) = word.windows(2).position(|p| p[0] >= p[1]) else {
            self.add_term(out, word, c);
            return;
        };
        let (i, j) = (word[pos] as usize, word[pos + 1] as usize);
        let mut shorter = word[..pos].to_vec();
        shorter.extend_from_slice(&word[pos + 2..]);
        if i == j {
            let v = &c * self.b.b(i, i);
            self.reduce(shorter, v, out);
        } else {
            let polar = self.b.b(i, j) + self.b.b(j, i);
            self.reduce(shorter, &c * &polar, out);
            let mut swapped = word.clone();
            swapped.swap(pos, pos + 1);
            self.reduce(swapped, -&c, out);
        }
    }

    fn mul(&self, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::new();
        for (wx, cx) in x {
            for (wy, cy) in y {
                let mut word = wx.clone();
                word.extend_from_slice(wy);
                self.reduce(word, cx * cy, &mut out);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Builds the even Clifford algebra of `q_b` by normal-ordering in the full
/// Clifford algebra and changing basis by
/// `ψ_b(c0 + c12 e1e2 + c13 e1e3 + c23 e2e3) = (c0 + c12 b12 + c13 b13 + c23 b23) w + c12 ε1 + c23 ε2 - c13 ε3`.
pub fn clifford_product_oracle(b: &BilinearForm33) -> Algebra4 {
    let ring = b.ring().clone();
    let rw = CliffordRewriter { b };
    let term = |word: &[u8], c: Scalar| -> CliffordElement {
        let mut e = CliffordElement::new();
        if !c.is_zero() {
            e.insert(word.to_vec(), c);
        }
        e
    };
    let merge = |mut x: CliffordElement, y: CliffordElement| {
        for (w, c) in y {
            rw.add_term(&mut x, w, c);
        }
        x.retain(|_, c| !c.is_zero());
        x
    };
    let one = ring.one();
    // ψ⁻¹(ε1) = e1e2 - b12, ψ⁻¹(ε2) = e2e3 - b23, ψ⁻¹(ε3) = -e1e3 + b13
    let pre = [
        merge(term(&[1, 2], one.clone()), term(&[], -b.b(1, 2))),
        merge(term(&[2, 3], one.clone()), term(&[], -b.b(2, 3))),
        merge(term(&[1, 3], -&one), term(&[], b.b(1, 3).clone())),
    ];
    let psi = |x: &CliffordElement| -> AlgElement {
        let get = |w: &[u8]| x.get(w).cloned().unwrap_or_else(|| ring.zero());
        for word in x.keys() {
            assert!(word.len() % 2 == 0 && word.len() <= 2, "product left the even part: {word:?}");
        }
        let (c0, c12, c13, c23) = (get(&[]), get(&[1, 2]), get(&[1, 3]), get(&[2, 3]));
        let w = &(&(&c0 + &(&c12 * b.b(1, 2))) + &(&c13 * b.b(1, 3))) + &(&c23 * b.b(2, 3));
        elt(w, c12, c23, -&c13)
    };
    Algebra4::from_products(&ring, |i, j| psi(&rw.mul(&pre[i - 1], &pre[j - 1])))
}
