//! Unital rank-4 algebras given by structure constants on the basis
//! `(w, ε1, ε2, ε3)`, with `w` the unit.

use std::fmt;

use serde_json::{json, Value};

use crate::clifford::StabWMap;
use crate::coeff::{common_ring, RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::finite::{Consts, SmallField};
use crate::linalg::Matrix;

/// Largest field accepted by the isomorphism and automorphism searches.
pub const ISOMORPHISM_SEARCH_LIMIT: u64 = 16;

pub const BASIS_NAMES: [&str; 4] = ["w", "e1", "e2", "e3"];

/// Coordinates over `(w, ε1, ε2, ε3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElement {
    coords: [Scalar; 4],
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "({a})w + ({b})e1 + ({c})e2 + ({d})e3")
    }
}

impl AlgElement {
    pub fn new(coords: [Scalar; 4]) -> Result<Self> {
        common_ring(&coords)?;
        Ok(AlgElement { coords })
    }

    pub fn from_i64(ring: &RingSpec, c: [i64; 4]) -> Self {
        AlgElement { coords: c.map(|x| ring.from_i64(x)) }
    }

    pub fn zero(ring: &RingSpec) -> Self {
        Self::from_i64(ring, [0; 4])
    }

    pub fn basis(ring: &RingSpec, i: usize) -> Self {
        let mut c = [0; 4];
        c[i] = 1;
        Self::from_i64(ring, c)
    }

    pub fn ring(&self) -> &RingSpec {
        self.coords[0].ring()
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgElement { coords: std::array::from_fn(|i| &self.coords[i] + &other.coords[i]) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgElement { coords: std::array::from_fn(|i| &self.coords[i] - &other.coords[i]) }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        AlgElement { coords: std::array::from_fn(|i| s * &self.coords[i]) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// True when the element lies in `ring · w`.
    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(Scalar::is_zero)
    }

    pub fn apply(m: &Matrix, x: &AlgElement) -> AlgElement {
        let v = m.mul_vec(&x.coords);
        AlgElement { coords: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra4 {
    ring: RingSpec,
    c: Vec<Scalar>,
}

impl fmt::Debug for Algebra4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Algebra4 over {}", self.ring)?;
        for i in 1..4 {
            for j in 1..4 {
                writeln!(f, "  {}*{} = {:?}", BASIS_NAMES[i], BASIS_NAMES[j], self.basis_product(i, j))?;
            }
        }
        Ok(())
    }
}

impl Algebra4 {
    /// Structure constants `c[i][j][k]` flattened as `(i * 4 + j) * 4 + k`.
    pub fn new(ring: &RingSpec, c: Vec<Scalar>) -> Result<Self> {
        if c.len() != 64 {
            return Err(Error::Dimension(format!("expected 64 structure constants, got {}", c.len())));
        }
        if common_ring(&c)? != *ring {
            return Err(Error::RingMismatch { left: c[0].ring().to_string(), right: ring.to_string() });
        }
        Ok(Algebra4 { ring: ring.clone(), c })
    }

    /// Builds the unital algebra whose products `εi·εj` (i, j in 1..=3) are
    /// given by `products(i, j)`; products involving `w` follow from unitality.
    pub fn from_products(ring: &RingSpec, mut products: impl FnMut(usize, usize) -> AlgElement) -> Self {
        let mut c = vec![ring.zero(); 64];
        for i in 0..4 {
            for j in 0..4 {
                let v = if i == 0 {
                    AlgElement::basis(ring, j)
                } else if j == 0 {
                    AlgElement::basis(ring, i)
                } else {
                    products(i, j)
                };
                for (k, s) in v.coords.into_iter().enumerate() {
                    c[(i * 4 + j) * 4 + k] = s;
                }
            }
        }
        Algebra4 { ring: ring.clone(), c }
    }

    /// All products of basis vectors other than `w` vanish.
    pub fn even_exterior(ring: &RingSpec) -> Self {
        Self::from_products(ring, |_, _| AlgElement::zero(ring))
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * 4 + j) * 4 + k]
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn basis_product(&self, i: usize, j: usize) -> AlgElement {
        AlgElement { coords: std::array::from_fn(|k| self.constant(i, j, k).clone()) }
    }

    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        for s in x.coords.iter().chain(&y.coords) {
            if s.ring() != &self.ring {
                return Err(Error::RingMismatch { left: s.ring().to_string(), right: self.ring.to_string() });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Product without ring checks; panics on mismatch.
    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out: [Scalar; 4] = std::array::from_fn(|_| self.ring.zero());
        for i in 0..4 {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if y.coords[j].is_zero() {
                    continue;
                }
                let s = &x.coords[i] * &y.coords[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot = &*slot + &(&s * c);
                    }
                }
            }
        }
        AlgElement { coords: out }
    }

    pub fn is_unital(&self) -> bool {
        (0..4).all(|j| {
            let e = AlgElement::basis(&self.ring, j);
            self.basis_product(0, j) == e && self.basis_product(j, 0) == e
        })
    }

    /// Associativity on all basis triples not involving the unit.
    pub fn is_associative(&self) -> bool {
        self.associativity_defects().is_empty()
    }

    /// Basis triples `(i, j, k)` with `(ei ej) ek != ei (ej ek)`.
    pub fn associativity_defects(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let start = if self.is_unital() { 1 } else { 0 };
        for i in start..4 {
            for j in start..4 {
                let ij = self.basis_product(i, j);
                for k in start..4 {
                    let left = self.mul(&ij, &AlgElement::basis(&self.ring, k));
                    let right = self.mul(&AlgElement::basis(&self.ring, i), &self.basis_product(j, k));
                    if left != right {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `A ⊗ A^op -> End(A)`, `a ⊗ b ↦ (x ↦ a x b)`. Column `4a + b`
    /// is the image of `ea ⊗ eb`; row `4k + l` is the `ek`-coefficient of the
    /// image of `el`.
    pub fn sandwich_matrix(&self) -> Result<Matrix> {
        if !self.is_unital() || !self.is_associative() {
            return Err(Error::NotAssociative);
        }
        let e = |i| AlgElement::basis(&self.ring, i);
        let mut m = Matrix::zeros(&self.ring, 16, 16);
        for a in 0..4 {
            for b in 0..4 {
                for l in 0..4 {
                    let img = self.mul(&self.basis_product(a, l), &e(b));
                    for (k, s) in img.coords.into_iter().enumerate() {
                        m.set(4 * k + l, 4 * a + b, s);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn is_azumaya(&self) -> Result<bool> {
        Ok(self.sandwich_matrix()?.det().is_unit())
    }

    pub fn opposite(&self) -> Self {
        let c = (0..64)
            .map(|n| {
                let (i, j, k) = (n / 16, (n / 4) % 4, n % 4);
                self.constant(j, i, k).clone()
            })
            .collect();
        Algebra4 { ring: self.ring.clone(), c }
    }

    /// Solves for the trace functional of a standard involution
    /// `σ(x) = t(x) w - x` and verifies it. `x σ(x)` scalar on the basis
    /// forces `t(εi)` to be the εi-coefficient of `εi²`, so such a `t` is
    /// unique when it exists.
    pub fn standard_involution(&self) -> Option<StandardInvolution> {
        if !self.is_unital() {
            return None;
        }
        let r = &self.ring;
        let mut t = vec![r.from_i64(2)];
        for i in 1..4 {
            t.push(self.constant(i, i, i).clone());
        }
        let trace: [Scalar; 4] = [t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone()];
        let sigma = Matrix::from_fn(r, 4, 4, |i, j| {
            let from_trace = if i == 0 { trace[j].clone() } else { r.zero() };
            if i == j {
                &from_trace - &r.one()
            } else {
                from_trace
            }
        });
        let inv = StandardInvolution { trace, sigma };
        let e = |i| AlgElement::basis(r, i);
        for i in 0..4 {
            if !self.mul(&e(i), &inv.apply(&e(i))).is_scalar() {
                return None;
            }
            for j in i + 1..4 {
                let s = e(i).add(&e(j));
                if !self.mul(&s, &inv.apply(&s)).is_scalar() {
                    return None;
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let lhs = inv.apply(&self.basis_product(i, j));
                let rhs = self.mul(&inv.apply(&e(j)), &inv.apply(&e(i)));
                if lhs != rhs {
                    return None;
                }
            }
        }
        Some(inv)
    }

    pub fn trace(&self, x: &AlgElement) -> Result<Scalar> {
        Ok(self.standard_involution().ok_or(Error::NoStandardInvolution)?.trace(x))
    }

    pub fn norm(&self, x: &AlgElement) -> Result<Scalar> {
        let inv = self.standard_involution().ok_or(Error::NoStandardInvolution)?;
        Ok(inv.norm(self, x))
    }

    pub fn to_small(&self, f: &SmallField) -> Result<Consts> {
        let mut out = [0u8; 64];
        for (slot, s) in out.iter_mut().zip(&self.c) {
            *slot = f.index(s)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let c: Vec<Vec<Vec<String>>> = (0..4)
            .map(|i| (0..4).map(|j| (0..4).map(|k| self.constant(i, j, k).to_string()).collect()).collect())
            .collect();
        json!({ "ring": self.ring.to_string(), "basis": BASIS_NAMES, "c": c })
    }
}

/// `σ(x) = t(x) w - x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardInvolution {
    trace: [Scalar; 4],
    sigma: Matrix,
}

impl StandardInvolution {
    pub fn trace_functional(&self) -> &[Scalar; 4] {
        &self.trace
    }

    pub fn matrix(&self) -> &Matrix {
        &self.sigma
    }

    pub fn apply(&self, x: &AlgElement) -> AlgElement {
        AlgElement::apply(&self.sigma, x)
    }

    pub fn trace(&self, x: &AlgElement) -> Scalar {
        crate::linalg::dot(&self.trace, &x.coords)
    }

    /// `n(x)` with `x σ(x) = n(x) w`.
    pub fn norm(&self, a: &Algebra4, x: &AlgElement) -> Scalar {
        let p = a.mul(x, &self.apply(x));
        debug_assert!(p.is_scalar());
        p.coords[0].clone()
    }
}

fn search_field(a: &Algebra4, field: &RingSpec) -> Result<SmallField> {
    let f = SmallField::new(field)?;
    let size = field.size().unwrap_or(0);
    if size > ISOMORPHISM_SEARCH_LIMIT {
        return Err(Error::FieldTooLarge { ring: field.to_string(), size, limit: ISOMORPHISM_SEARCH_LIMIT });
    }
    if a.ring() != field {
        return Err(Error::RingMismatch { left: a.ring().to_string(), right: field.to_string() });
    }
    if !a.is_unital() || !a.is_associative() {
        return Err(Error::NotAssociative);
    }
    Ok(f)
}

fn map_from_small(f: &SmallField, h: &[u8; 16]) -> StabWMap {
    let m = Matrix::from_fn(f.ring(), 4, 4, |i, j| f.scalar(h[i * 4 + j]).clone());
    StabWMap::new(m).expect("search yields unit-fixing invertible maps")
}

/// First unit-fixing isomorphism `h: A -> A'` (so `h(xy) = h(x) h(y)`),
/// searching images of ε1, ε2, ε3 in turn, each in lexicographic order.
pub fn isomorphic_bruteforce(a: &Algebra4, a2: &Algebra4, field: &RingSpec) -> Result<Option<StabWMap>> {
    let f = search_field(a, field)?;
    search_field(a2, field)?;
    if a == a2 {
        return Ok(Some(StabWMap::identity(field)));
    }
    let found = f.isomorphisms(&a.to_small(&f)?, &a2.to_small(&f)?, true);
    Ok(found.first().map(|h| map_from_small(&f, h)))
}

/// Every unit-fixing automorphism of `a`, in search order.
pub fn automorphisms(a: &Algebra4, field: &RingSpec) -> Result<Vec<StabWMap>> {
    let f = search_field(a, field)?;
    let c = a.to_small(&f)?;
    Ok(f.isomorphisms(&c, &c, false).iter().map(|h| map_from_small(&f, h)).collect())
}
