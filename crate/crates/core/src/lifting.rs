//! Similarities, the algebra isomorphisms they induce, and the sections
//! lifting algebra isomorphisms back to similarities.

use crate::algebra4::automorphisms;
use crate::clifford::{act_stabw, bilinear_to_theta, theta, upsilon_inverse, StabWMap, ThetaPoint};
use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::finite::SmallField;
use crate::forms::{check_mat3, TernaryQuadraticForm};
use crate::linalg::{Mat3, Matrix};

/// `(g, l)` with `g` invertible and `l` a unit; valid for `(q, q')` when
/// `g.q = l⁻¹ q'`, i.e. `q'(g x) = l q(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Similarity {
    pub g: Mat3,
    pub l: Scalar,
}

impl Similarity {
    pub fn new(g: Mat3, l: Scalar) -> Result<Self> {
        check_mat3(&g, l.ring())?;
        if !g.det().is_unit() {
            return Err(Error::Singular);
        }
        if !l.is_unit() {
            return Err(Error::NotAUnit(l.to_string()));
        }
        Ok(Similarity { g, l })
    }

    pub fn identity(ring: &RingSpec) -> Self {
        Similarity { g: Matrix::identity(ring, 3), l: ring.one() }
    }

    pub fn is_valid_for(&self, q: &TernaryQuadraticForm, q2: &TernaryQuadraticForm) -> bool {
        match (q.act(&self.g), self.l.inverse()) {
            (Ok(moved), Ok(linv)) => moved == q2.scale_unchecked(&linv),
            _ => false,
        }
    }

    /// `self ∘ other`: if `other` carries q to q' and `self` carries q' to q'',
    /// the result carries q to q''.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity { g: self.g.mul(&other.g), l: &self.l * &other.l }
    }
}

pub fn e12(ring: &RingSpec) -> Mat3 {
    Matrix::from_i64(ring, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])
}

pub fn e23(ring: &RingSpec) -> Mat3 {
    Matrix::from_i64(ring, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
}

/// `Λ²(g) = det(g) · E12 E23 (g⁻¹)ᵗ E23 E12`, the action of `g` on
/// `(e1∧e2, e2∧e3, e3∧e1)`.
pub fn lambda2(g: &Mat3) -> Result<Mat3> {
    check_mat3(g, g.ring())?;
    let r = g.ring();
    let (a, b) = (e12(r), e23(r));
    let ginv_t = g.inverse()?.transpose();
    Ok(a.mul(&b).mul(&ginv_t).mul(&b).mul(&a).scale(&g.det()))
}

fn unit_vector(ring: &RingSpec, i: usize) -> Vec<Scalar> {
    (0..3).map(|k| if k == i { ring.one() } else { ring.zero() }).collect()
}

const WEDGE_PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

/// The induced isomorphism `θ(q) -> θ(q')`: lower-right block `l⁻¹Λ²(g)` and
/// first-row entries `l⁻¹ b(q')(g ea, g eb) - b(q)(ea, eb)` for
/// `(a, b) = (1,2), (2,3), (3,1)`, where `b` is the canonical lift.
pub fn induced_iso(s: &Similarity, q: &TernaryQuadraticForm, q2: &TernaryQuadraticForm) -> Result<StabWMap> {
    if !s.is_valid_for(q, q2) {
        return Err(Error::InvalidSimilarity(format!("(g, l) does not carry {q} to {q2}")));
    }
    let ring = q.ring();
    let linv = s.l.inverse()?;
    let block = lambda2(&s.g)?.scale(&linv);
    let (b, b2) = (q.canonical_lift(), q2.canonical_lift());
    let mut p = Vec::with_capacity(3);
    for (a, c) in WEDGE_PAIRS {
        let (ea, ec) = (unit_vector(ring, a), unit_vector(ring, c));
        let moved = b2.evaluate(&s.g.mul_vec(&ea), &s.g.mul_vec(&ec))?;
        p.push(&(&linv * &moved) - &b.evaluate(&ea, &ec)?);
    }
    StabWMap::from_blocks(&p, &block)
}

/// The linear block of `h = block(1, B) · hl`.
pub fn phi_lambda2(h: &StabWMap) -> Mat3 {
    h.linear_part()
}

fn check_isomorphism(h: &StabWMap, q: &TernaryQuadraticForm, q2: &TernaryQuadraticForm) -> Result<()> {
    let (a, a2) = (theta(&ThetaPoint::untranslated(q.clone())), theta(&ThetaPoint::untranslated(q2.clone())));
    if act_stabw(h, &a) != a2 {
        return Err(Error::NotAnIsomorphism(format!("h does not carry θ({q}) to θ({q2})")));
    }
    Ok(())
}

/// `E23 E12 (Bᵗ)⁻¹ E12 E23`.
fn conjugated_inverse_transpose(b: &Mat3) -> Result<Mat3> {
    let r = b.ring();
    let (a, c) = (e12(r), e23(r));
    Ok(c.mul(&a).mul(&b.transpose().inverse()?).mul(&a).mul(&c))
}

fn verified_section(s: Similarity, h: &StabWMap, q: &TernaryQuadraticForm, q2: &TernaryQuadraticForm) -> Result<Similarity> {
    if induced_iso(&s, q, q2)? != *h {
        return Err(Error::Verification("section does not reproduce h".into()));
    }
    Ok(s)
}

/// Lifts an isomorphism `h: θ(q) -> θ(q')` to `(g, l)` with
/// `g = det(B)^(k+1) E23 E12 (Bᵗ)⁻¹ E12 E23` and `l = det(B)^(2k+1)`, where
/// `B` is the linear block of `h`.
pub fn section_s_plus(h: &StabWMap, q: &TernaryQuadraticForm, q2: &TernaryQuadraticForm, k: i64) -> Result<Similarity> {
    check_isomorphism(h, q, q2)?;
    let b = phi_lambda2(h);
    let d = b.det();
    if !d.is_unit() {
        return Err(Error::NotAUnit(format!("det of the linear block, {d}")));
    }
    let g = conjugated_inverse_transpose(&b)?.scale(&d.pow(k + 1)?);
    let l = d.pow(2 * k + 1)?;
    verified_section(Similarity::new(g, l)?, h, q, q2)
}

/// Lifts `h` to an isometry `(g, 1)` with `det²(g) = det(B)`, using a square
/// root of `det(B)`.
pub fn section_s_prime(h: &StabWMap, q: &TernaryQuadraticForm, q2: &TernaryQuadraticForm) -> Result<Similarity> {
    check_isomorphism(h, q, q2)?;
    let b = phi_lambda2(h);
    let d = b.det();
    if !d.is_unit() {
        return Err(Error::NotAUnit(format!("det of the linear block, {d}")));
    }
    let root = d.sqrt().ok_or_else(|| Error::NoSquareRoot(format!("{d} in {}", d.ring())))?;
    let g = conjugated_inverse_transpose(&b)?.scale(&root);
    verified_section(Similarity::new(g, d.ring().one())?, h, q, q2)
}

/// Whether every unit-fixing automorphism of `θ(q)` has determinant 1.
/// Requires a semiregular `q`.
pub fn automorphism_determinant_check(q: &TernaryQuadraticForm, field: &RingSpec) -> Result<bool> {
    if !q.is_semiregular() {
        return Err(Error::NotApplicable(format!("{q} is not semiregular")));
    }
    let a = theta(&ThetaPoint::untranslated(q.clone()));
    Ok(automorphisms(&a, field)?.iter().all(|h| h.det().is_one()))
}

/// If `s` induces the identity on `θ(q)`, then `g = l⁻¹ det(g) Id`, and
/// `det²(g) = 1` when additionally `l = 1`. Returns whether that holds.
pub fn kernel_check(s: &Similarity, q: &TernaryQuadraticForm) -> Result<bool> {
    let h = induced_iso(s, q, q)?;
    if h != StabWMap::identity(q.ring()) {
        return Ok(true);
    }
    let ring = q.ring();
    let det = s.g.det();
    let scalar = Matrix::identity(ring, 3).scale(&(&s.l.inverse()? * &det));
    let mut holds = s.g == scalar;
    if s.l.is_one() {
        holds &= (&det * &det).is_one();
    }
    Ok(holds)
}

/// Counts for the correspondence between special isometries of `q` and
/// automorphisms of `θ(q)` with determinant-1 linear block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialIsometryReport {
    pub special_isometries: usize,
    pub special_automorphisms: usize,
    pub injective: bool,
    pub bijective: bool,
}

/// Exhaustively compares `{g : g.q = q, det g = 1}` with the automorphisms of
/// `θ(q)` whose linear block has determinant 1, via `g ↦ induced_iso(g, 1)`.
pub fn special_isometry_correspondence(q: &TernaryQuadraticForm, field: &RingSpec) -> Result<SpecialIsometryReport> {
    let f = SmallField::new(field)?;
    let a = theta(&ThetaPoint::untranslated(q.clone()));
    let mut special: Vec<StabWMap> = automorphisms(&a, field)?
        .into_iter()
        .filter(|h| phi_lambda2(h).det().is_one())
        .collect();
    special.sort_by(cmp_maps);
    let small = q.to_small(&f)?;
    let mut images = Vec::new();
    for g in f.gl3() {
        if f.det3(&g) != 1 || f.pullback_form(&small, &g) != small {
            continue;
        }
        let g = Matrix::from_fn(field, 3, 3, |i, j| f.scalar(g[i * 3 + j]).clone());
        images.push(induced_iso(&Similarity::new(g, field.one())?, q, q)?);
    }
    let count = images.len();
    images.sort_by(cmp_maps);
    images.dedup();
    let injective = images.len() == count;
    Ok(SpecialIsometryReport {
        special_isometries: count,
        special_automorphisms: special.len(),
        injective,
        bijective: injective && images == special,
    })
}

fn cmp_maps(x: &StabWMap, y: &StabWMap) -> std::cmp::Ordering {
    let (a, b) = (x.matrix().entries(), y.matrix().entries());
    a.iter().zip(b).map(|(s, t)| s.canonical_cmp(t)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

/// `hs(g) = block(1, Λ²(g))`.
pub fn block_lambda2(g: &Mat3) -> Result<StabWMap> {
    StabWMap::block(&lambda2(g)?)
}

/// `g.t`: the row of `hs(g) L(t) hs(g)⁻¹`, namely `t Λ²(g)⁻¹`.
pub fn act_translation(g: &Mat3, t: &[Scalar; 3]) -> Result<[Scalar; 3]> {
    let row = Matrix::from_rows(g.ring(), vec![t.to_vec()])?;
    let v = row.mul(&lambda2(g)?.inverse()?).row(0);
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

/// The unipotent `h'l(g, q)` carrying `hs(g)·Θ(q, t)` to `Θ(g.q, g.t)`,
/// computed from the pair `p = (q, t)` by reading off coordinates.
pub fn twisted_translation(g: &Mat3, p: &ThetaPoint) -> Result<StabWMap> {
    let hs = block_lambda2(g)?;
    let moved = act_stabw(&hs, &theta(p));
    let coords = upsilon_inverse(&moved)
        .map(|b| bilinear_to_theta(&b))
        .ok_or_else(|| Error::Verification("transported algebra has no Θ coordinates".into()))?;
    let gq = p.q.act(g)?;
    if coords.q != gq {
        return Err(Error::Verification("transported algebra has the wrong form".into()));
    }
    let gt = act_translation(g, &p.t)?;
    let s: Vec<Scalar> = (0..3).map(|i| &gt[i] - &coords.t[i]).collect();
    StabWMap::unipotent(&s)
}

/// Existence, uniqueness and independence of `t` for `h'l(g, q)`, plus
/// agreement with `induced_iso((g, 1), q, g.q) · hs(g)⁻¹`.
pub fn twisted_equivariance_check(g: &Mat3, p: &ThetaPoint) -> Result<bool> {
    check_mat3(g, p.ring())?;
    if !g.det().is_unit() {
        return Err(Error::Singular);
    }
    let hl = twisted_translation(g, p)?;
    let gq = p.q.act(g)?;
    let target = theta(&ThetaPoint::new(gq.clone(), act_translation(g, &p.t)?)?);
    let moved = act_stabw(&block_lambda2(g)?, &theta(p));
    // existence
    let exists = act_stabw(&hl, &moved) == target;
    // uniqueness: Θ is injective in t (Θ -> B is inverted by upsilon_inverse),
    // so only one unipotent can reach the target
    let unique = upsilon_inverse(&target).map(|b| bilinear_to_theta(&b))
        == Some(ThetaPoint::new(gq.clone(), act_translation(g, &p.t)?)?);
    let independent = twisted_translation(g, &ThetaPoint::untranslated(p.q.clone()))? == hl;
    let h = induced_iso(&Similarity::new(g.clone(), p.ring().one())?, &p.q, &gq)?;
    let agrees = h.compose(&block_lambda2(g)?.inverse()) == hl;
    Ok(exists && unique && independent && agrees)
}

/// `h'l(g g', q) = h'l(g, g'.q) · (hs(g) h'l(g', q) hs(g)⁻¹)`.
pub fn twisted_cocycle_check(g: &Mat3, g2: &Mat3, q: &TernaryQuadraticForm) -> Result<bool> {
    let p = ThetaPoint::untranslated(q.clone());
    let lhs = twisted_translation(&g.mul(g2), &p)?;
    let moved = ThetaPoint::untranslated(q.act(g2)?);
    let hs = block_lambda2(g)?;
    let conj = hs.compose(&twisted_translation(g2, &p)?).compose(&hs.inverse());
    Ok(lhs == twisted_translation(g, &moved)?.compose(&conj))
}
