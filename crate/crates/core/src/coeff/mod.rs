//! Exact coefficient rings.
//!
//! Every [`Scalar`] carries its [`RingSpec`]; arithmetic between scalars of
//! different rings is an error (`try_*` methods) or a panic (operators).

pub mod gf2k;
pub mod modp;
pub mod poly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField { p: u64 },
    /// GF(2^k); `modulus` is the fixed irreducible reduction polynomial as a bit-vector.
    BinaryField { k: u32, modulus: u64 },
    /// Z[v1, ..., vn] with variables in declaration order.
    Polynomials { variables: Vec<String> },
}

/// Descriptor of a coefficient ring. Cheap to clone.
#[derive(Clone)]
pub struct RingSpec(Arc<RingKind>);

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for RingSpec {}

impl Hash for RingSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({self})")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField { p } => write!(f, "Fp:{p}"),
            RingKind::BinaryField { k, .. } => write!(f, "F2k:{k}"),
            RingKind::Polynomials { variables } => write!(f, "ZPoly:{}", variables.join(",")),
        }
    }
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec(Arc::new(RingKind::Integers))
    }

    pub fn rationals() -> Self {
        RingSpec(Arc::new(RingKind::Rationals))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !modp::is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(RingSpec(Arc::new(RingKind::PrimeField { p })))
    }

    pub fn binary_field(k: u32) -> Result<Self> {
        let modulus = gf2k::reduction_polynomial(k).ok_or_else(|| {
            Error::InvalidRing(format!("binary field degree must be in 1..={}, got {k}", gf2k::MAX_DEGREE))
        })?;
        Ok(RingSpec(Arc::new(RingKind::BinaryField { k, modulus })))
    }

    pub fn polynomials<S: AsRef<str>>(variables: &[S]) -> Result<Self> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in variables.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("invalid variable name {v:?}")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        Ok(RingSpec(Arc::new(RingKind::Polynomials { variables })))
    }

    /// Parses "Z", "Q", "Fp:<p>", "F2k:<k>" or "ZPoly:<v1,v2,...>".
    pub fn parse(descriptor: &str) -> Result<Self> {
        let d = descriptor.trim();
        let bad = || Error::InvalidRing(descriptor.to_string());
        match d {
            "Z" => return Ok(Self::integers()),
            "Q" => return Ok(Self::rationals()),
            _ => {}
        }
        let (head, tail) = d.split_once(':').ok_or_else(bad)?;
        match head {
            "Fp" => Self::prime_field(tail.trim().parse().map_err(|_| bad())?),
            "F2k" => Self::binary_field(tail.trim().parse().map_err(|_| bad())?),
            "ZPoly" => {
                let vars: Vec<&str> = tail.split(',').collect();
                Self::polynomials(&vars)
            }
            _ => Err(bad()),
        }
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn is_field(&self) -> bool {
        matches!(&*self.0, RingKind::Rationals | RingKind::PrimeField { .. } | RingKind::BinaryField { .. })
    }

    /// Squaring is a bijection. True for every binary field, including the
    /// prime field with two elements.
    pub fn is_two_perfect(&self) -> bool {
        matches!(&*self.0, RingKind::BinaryField { .. } | RingKind::PrimeField { p: 2 })
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            RingKind::PrimeField { p } => *p,
            RingKind::BinaryField { .. } => 2,
            _ => 0,
        }
    }

    /// Number of elements of a finite ring.
    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            RingKind::PrimeField { p } => Some(*p),
            RingKind::BinaryField { k, .. } => 1u64.checked_shl(*k),
            _ => None,
        }
    }

    pub fn variables(&self) -> &[String] {
        match &*self.0 {
            RingKind::Polynomials { variables } => variables,
            _ => &[],
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the canonical map Z -> ring.
    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let value = match &*self.0 {
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            RingKind::PrimeField { p } => {
                let r = n.mod_floor(&BigInt::from(*p));
                Value::Res(r.to_u64().expect("residue fits"))
            }
            RingKind::BinaryField { .. } => Value::Bits(if n.is_odd() { 1 } else { 0 }),
            RingKind::Polynomials { variables } => Value::Poly(Poly::constant(n.clone(), variables.len())),
        };
        Scalar { ring: self.clone(), value }
    }

    pub fn rational(&self, numer: i64, denom: i64) -> Result<Scalar> {
        let n = self.from_i64(numer);
        let d = self.from_i64(denom);
        Ok(&n * &d.inverse()?)
    }

    /// GF(2^k) element from its coefficient bit-vector.
    pub fn binary_element(&self, bits: u64) -> Result<Scalar> {
        match &*self.0 {
            RingKind::BinaryField { k, .. } if bits >> k == 0 => {
                Ok(Scalar { ring: self.clone(), value: Value::Bits(bits) })
            }
            _ => Err(Error::InvalidLiteral { literal: bits.to_string(), ring: self.to_string() }),
        }
    }

    pub fn variable(&self, name: &str) -> Result<Scalar> {
        let vars = self.variables();
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidLiteral { literal: name.to_string(), ring: self.to_string() })?;
        Ok(Scalar { ring: self.clone(), value: Value::Poly(Poly::variable(idx, vars.len())) })
    }

    pub fn from_poly(&self, p: Poly) -> Result<Scalar> {
        match &*self.0 {
            RingKind::Polynomials { variables } if variables.len() == p.nvars() => {
                Ok(Scalar { ring: self.clone(), value: Value::Poly(p) })
            }
            _ => Err(Error::InvalidRing(format!("{self} is not a polynomial ring of matching arity"))),
        }
    }

    /// All elements of a finite ring in canonical order (residues or bit-vectors ascending).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match &*self.0 {
            RingKind::PrimeField { p } => {
                Ok((0..*p).map(|r| Scalar { ring: self.clone(), value: Value::Res(r) }).collect())
            }
            RingKind::BinaryField { k, .. } => {
                Ok((0..(1u64 << k)).map(|b| Scalar { ring: self.clone(), value: Value::Bits(b) }).collect())
            }
            _ => Err(Error::NotFinite(self.to_string())),
        }
    }

    /// Parses an element in the ring's literal syntax: decimal integers for Z
    /// and prime fields, `n/d` for Q, a bit-vector (decimal, `0b...` or `0x...`)
    /// for binary fields, and a polynomial expression for ZPoly.
    pub fn parse_scalar(&self, literal: &str) -> Result<Scalar> {
        let text = literal.trim();
        let bad = || Error::InvalidLiteral { literal: literal.to_string(), ring: self.to_string() };
        match &*self.0 {
            RingKind::Integers | RingKind::PrimeField { .. } => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
            RingKind::Rationals => {
                let value = match text.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
                };
                Ok(Scalar { ring: self.clone(), value: Value::Rat(value) })
            }
            RingKind::BinaryField { .. } => {
                let bits = if let Some(b) = text.strip_prefix("0b") {
                    u64::from_str_radix(b, 2)
                } else if let Some(h) = text.strip_prefix("0x") {
                    u64::from_str_radix(h, 16)
                } else {
                    text.parse::<u64>()
                }
                .map_err(|_| bad())?;
                self.binary_element(bits).map_err(|_| bad())
            }
            RingKind::Polynomials { .. } => parse_polynomial(self, text).map_err(|_| bad()),
        }
    }
}

/// Polynomial literal: sums and differences of products of integers and
/// variables (optionally raised to a non-negative power), with parentheses.
fn parse_polynomial(ring: &RingSpec, text: &str) -> Result<Scalar> {
    struct P<'a> {
        ring: &'a RingSpec,
        s: &'a [u8],
        pos: usize,
    }
    impl<'a> P<'a> {
        fn err(&self) -> Error {
            Error::Syntax { position: self.pos, message: "invalid polynomial literal".into() }
        }
        fn skip(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn peek(&mut self) -> Option<u8> {
            self.skip();
            self.s.get(self.pos).copied()
        }
        fn expr(&mut self) -> Result<Scalar> {
            let mut acc = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    -&self.term()?
                }
                Some(b'+') => {
                    self.pos += 1;
                    self.term()?
                }
                _ => self.term()?,
            };
            loop {
                match self.peek() {
                    Some(b'+') => {
                        self.pos += 1;
                        acc = &acc + &self.term()?;
                    }
                    Some(b'-') => {
                        self.pos += 1;
                        acc = &acc - &self.term()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }
        fn term(&mut self) -> Result<Scalar> {
            let mut acc = self.power()?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.power()?;
            }
            Ok(acc)
        }
        fn power(&mut self) -> Result<Scalar> {
            let base = self.atom()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip();
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                    .ok()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| self.err())?;
                return Ok(base.pow_u(e));
            }
            Ok(base)
        }
        fn atom(&mut self) -> Result<Scalar> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let v = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.err());
                    }
                    self.pos += 1;
                    Ok(v)
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                    Ok(self.ring.from_bigint(&n))
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                    self.ring.variable(name)
                }
                _ => Err(self.err()),
            }
        }
    }
    let mut p = P { ring, s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err());
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    Bits(u64),
    Poly(Poly),
}

/// An element of one of the supported exact rings, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: RingSpec,
    value: Value,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.ring)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Res(r) | Value::Bits(r) => write!(f, "{r}"),
            Value::Poly(p) => write!(f, "{}", p.render(self.ring.variables())),
        }
    }
}

fn mismatch(a: &RingSpec, b: &RingSpec) -> Error {
    Error::RingMismatch { left: a.to_string(), right: b.to_string() }
}

impl Scalar {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    fn with(&self, value: Value) -> Scalar {
        Scalar { ring: self.ring.clone(), value }
    }

    pub fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(mismatch(&self.ring, &other.ring))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&other.negate()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.value, &other.value, self.ring.kind()) {
            (Value::Int(a), Value::Int(b), _) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(a + b),
            (Value::Res(a), Value::Res(b), RingKind::PrimeField { p }) => Value::Res(modp::add(*a, *b, *p)),
            (Value::Bits(a), Value::Bits(b), _) => Value::Bits(a ^ b),
            (Value::Poly(a), Value::Poly(b), _) => Value::Poly(a.add(b)),
            _ => unreachable!("values agree with their ring"),
        };
        self.with(value)
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.value, &other.value, self.ring.kind()) {
            (Value::Int(a), Value::Int(b), _) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(a * b),
            (Value::Res(a), Value::Res(b), RingKind::PrimeField { p }) => Value::Res(modp::mul(*a, *b, *p)),
            (Value::Bits(a), Value::Bits(b), RingKind::BinaryField { modulus, .. }) => {
                Value::Bits(gf2k::mul(*a, *b, *modulus))
            }
            (Value::Poly(a), Value::Poly(b), _) => Value::Poly(a.mul(b)),
            _ => unreachable!("values agree with their ring"),
        };
        self.with(value)
    }

    pub fn negate(&self) -> Scalar {
        let value = match (&self.value, self.ring.kind()) {
            (Value::Int(a), _) => Value::Int(-a),
            (Value::Rat(a), _) => Value::Rat(-a),
            (Value::Res(a), RingKind::PrimeField { p }) => Value::Res(modp::neg(*a, *p)),
            (Value::Bits(a), _) => Value::Bits(*a),
            (Value::Poly(a), _) => Value::Poly(a.neg()),
            _ => unreachable!("values agree with their ring"),
        };
        self.with(value)
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(a) => a.is_zero(),
            Value::Rat(a) => a.is_zero(),
            Value::Res(a) | Value::Bits(a) => *a == 0,
            Value::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// Units: +-1 over Z and Z[vars], nonzero elements over fields.
    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value::Int(a) => a.abs().is_one(),
            Value::Poly(p) => p.as_constant().is_some_and(|c| c.abs().is_one()),
            _ => !self.is_zero(),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(format!("{self} in {}", self.ring)));
        }
        let value = match (&self.value, self.ring.kind()) {
            (Value::Int(a), _) => Value::Int(a.clone()),
            (Value::Poly(p), _) => Value::Poly(p.clone()),
            (Value::Rat(a), _) => Value::Rat(a.recip()),
            (Value::Res(a), RingKind::PrimeField { p }) => Value::Res(modp::inverse(*a, *p)),
            (Value::Bits(a), RingKind::BinaryField { k, modulus }) => Value::Bits(gf2k::inverse(*a, *k, *modulus)),
            _ => unreachable!("values agree with their ring"),
        };
        Ok(self.with(value))
    }

    pub fn pow_u(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let magnitude = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::Dimension(format!("exponent {e} out of range")))?;
        if e >= 0 {
            Ok(self.pow_u(magnitude))
        } else {
            Ok(self.inverse()?.pow_u(magnitude))
        }
    }

    /// A square root, if the ring's decision procedure finds one. Among
    /// `{s, -s}` the canonical choice is returned: the non-negative root over
    /// Z and Q, the smaller residue over prime fields, the root with positive
    /// leading coefficient over Z[vars]. Binary fields have a unique root.
    pub fn sqrt(&self) -> Option<Scalar> {
        let value = match (&self.value, self.ring.kind()) {
            (Value::Int(a), _) => {
                if a.is_negative() {
                    return None;
                }
                let s = a.sqrt();
                if &(&s * &s) != a {
                    return None;
                }
                Value::Int(s)
            }
            (Value::Rat(a), _) => {
                if a.is_negative() {
                    return None;
                }
                let n = a.numer().sqrt();
                let d = a.denom().sqrt();
                if &(&n * &n) != a.numer() || &(&d * &d) != a.denom() {
                    return None;
                }
                Value::Rat(BigRational::new(n, d))
            }
            (Value::Res(a), RingKind::PrimeField { p }) => {
                let s = modp::sqrt(*a, *p)?;
                Value::Res(s.min(modp::neg(s, *p)))
            }
            (Value::Bits(a), RingKind::BinaryField { k, modulus }) => Value::Bits(gf2k::sqrt(*a, *k, *modulus)),
            (Value::Poly(p), _) => Value::Poly(p.sqrt()?),
            _ => unreachable!("values agree with their ring"),
        };
        Some(self.with(value))
    }

    /// Total order on canonical representations (numeric for numbers,
    /// residues and bit-vectors; term-wise for polynomials).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            (Value::Res(a), Value::Res(b)) | (Value::Bits(a), Value::Bits(b)) => a.cmp(b),
            (Value::Poly(a), Value::Poly(b)) => a.canonical_cmp(b),
            _ => self.ring.to_string().cmp(&other.ring.to_string()),
        }
    }

    /// Index of a finite-field element in [`RingSpec::elements`] order.
    pub fn finite_index(&self) -> Option<usize> {
        match &self.value {
            Value::Res(a) | Value::Bits(a) => Some(*a as usize),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.value {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Evaluates a polynomial at an assignment of its variables. The image
    /// ring is `target`; every assigned value must lie in it.
    pub fn substitute(&self, assignment: &HashMap<String, Scalar>, target: &RingSpec) -> Result<Scalar> {
        let Value::Poly(p) = &self.value else {
            return Err(Error::InvalidRing(format!("substitute needs a polynomial, got element of {}", self.ring)));
        };
        let names = self.ring.variables();
        let mut values = Vec::with_capacity(names.len());
        for name in names {
            let v = assignment.get(name).ok_or_else(|| Error::MissingVariable(name.clone()))?;
            if v.ring != *target {
                return Err(mismatch(&v.ring, target));
            }
            values.push(v);
        }
        let mut acc = target.zero();
        for (exp, c) in p.terms() {
            let mut term = target.from_bigint(c);
            for (v, &e) in values.iter().zip(exp) {
                if e > 0 {
                    term = &term * &v.pow_u(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

/// Checks that all scalars share one ring and returns it.
pub fn common_ring<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Result<RingSpec> {
    let mut iter = items.into_iter();
    let first = iter.next().ok_or_else(|| Error::Dimension("empty scalar list".into()))?;
    for s in iter {
        first.check_ring(s)?;
    }
    Ok(first.ring.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        let q = RingSpec::rationals();
        let s = &q.rational(1, 2).unwrap() + &q.rational(1, 3).unwrap();
        assert_eq!(s, q.rational(5, 6).unwrap());
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn prime_field_product() {
        let f5 = RingSpec::prime_field(5).unwrap();
        assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
    }

    #[test]
    fn symbolic_determinant_expression() {
        let r = RingSpec::polynomials(&["b11", "b12", "b21", "b22"]).unwrap();
        let v = |n: &str| r.variable(n).unwrap();
        let det = &(&v("b11") * &v("b22")) - &(&v("b12") * &v("b21"));
        assert_eq!(det.to_string(), "b11*b22 - b12*b21");
        assert_eq!(r.parse_scalar("b11*b22 - b12*b21").unwrap(), det);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = RingSpec::integers().one();
        let b = RingSpec::rationals().one();
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn units() {
        let z = RingSpec::integers();
        assert!(z.from_i64(-1).is_unit());
        assert!(!z.from_i64(4).is_unit());
        assert!(z.from_i64(4).inverse().is_err());
        let p = RingSpec::polynomials(&["a"]).unwrap();
        assert!(p.from_i64(-1).is_unit());
        assert!(!p.variable("a").unwrap().is_unit());
        assert!(!RingSpec::rationals().zero().is_unit());
    }

    #[test]
    fn gf8_inverse_of_generator() {
        let f8 = RingSpec::binary_field(3).unwrap();
        let x = f8.binary_element(0b10).unwrap();
        assert_eq!(x.inverse().unwrap(), f8.binary_element(0b101).unwrap());
    }

    #[test]
    fn square_roots() {
        let z = RingSpec::integers();
        assert!(z.from_i64(2).sqrt().is_none());
        assert_eq!(z.from_i64(9).sqrt().unwrap(), z.from_i64(3));
        let f7 = RingSpec::prime_field(7).unwrap();
        // 3^2 = 4^2 = 2 in F7; the smaller residue wins
        assert_eq!(f7.from_i64(2).sqrt().unwrap(), f7.from_i64(3));
        assert!(f7.from_i64(3).sqrt().is_none());
        let q = RingSpec::rationals();
        assert_eq!(q.rational(4, 9).unwrap().sqrt().unwrap(), q.rational(2, 3).unwrap());
        assert!(q.rational(2, 9).unwrap().sqrt().is_none());
    }

    #[test]
    fn gf4_sqrt_of_generator() {
        let f4 = RingSpec::binary_field(2).unwrap();
        let x = f4.binary_element(0b10).unwrap();
        let s = x.sqrt().unwrap();
        assert_eq!(s, x.pow_u(2));
        assert_eq!(&s * &s, x);
    }

    #[test]
    fn descriptors_round_trip() {
        for d in ["Z", "Q", "Fp:7", "F2k:3", "ZPoly:a,b,c"] {
            assert_eq!(RingSpec::parse(d).unwrap().to_string(), d);
        }
        assert!(RingSpec::parse("Fp:6").is_err());
        assert!(RingSpec::parse("F2k:0").is_err());
        assert!(RingSpec::parse("Zmod:4").is_err());
        assert!(RingSpec::parse("ZPoly:a,a").is_err());
    }

    #[test]
    fn capability_flags() {
        assert!(!RingSpec::integers().is_field());
        assert!(RingSpec::rationals().is_field());
        assert!(RingSpec::binary_field(2).unwrap().is_two_perfect());
        assert!(!RingSpec::prime_field(3).unwrap().is_two_perfect());
        assert_eq!(RingSpec::binary_field(4).unwrap().characteristic(), 2);
        assert_eq!(RingSpec::prime_field(7).unwrap().characteristic(), 7);
        assert_eq!(RingSpec::rationals().characteristic(), 0);
    }

    #[test]
    fn substitution() {
        let r = RingSpec::polynomials(&["b11", "b12", "b21", "b22"]).unwrap();
        let det = r.parse_scalar("b11*b22 - b12*b21").unwrap();
        let z = RingSpec::integers();
        let id: HashMap<String, Scalar> = [("b11", 1), ("b12", 0), ("b21", 0), ("b22", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), z.from_i64(v)))
            .collect();
        assert_eq!(det.substitute(&id, &z).unwrap(), z.one());
        assert_eq!(r.zero().substitute(&id, &z).unwrap(), z.zero());
        let mut partial = id.clone();
        partial.remove("b22");
        assert!(matches!(det.substitute(&partial, &z), Err(Error::MissingVariable(_))));
        let mut mixed = id.clone();
        mixed.insert("b22".into(), RingSpec::rationals().one());
        assert!(matches!(det.substitute(&mixed, &z), Err(Error::RingMismatch { .. })));
    }

    /// Inverse in GF(2^k) by the extended Euclidean algorithm on bit-vectors
    /// over GF(2)[x], independent of the field's own inversion.
    fn euclid_inverse(a: u64, modulus: u64) -> u64 {
        let deg = |x: u64| 63 - x.leading_zeros() as i64;
        let clmul = |mut x: u64, mut y: u64| {
            let mut acc = 0;
            while y != 0 {
                if y & 1 == 1 {
                    acc ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            acc
        };
        let (mut r0, mut r1, mut s0, mut s1) = (modulus, a, 0u64, 1u64);
        while r1 != 0 {
            let (mut q, mut r) = (0u64, r0);
            while r != 0 && deg(r) >= deg(r1) {
                let shift = deg(r) - deg(r1);
                q ^= 1 << shift;
                r ^= r1 << shift;
            }
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s0 ^ clmul(q, s1));
        }
        assert_eq!(r0, 1);
        s0
    }

    #[test]
    fn gf8_inverses_match_euclid() {
        let f8 = RingSpec::binary_field(3).unwrap();
        let modulus = match f8.kind() {
            RingKind::BinaryField { modulus, .. } => *modulus,
            _ => unreachable!(),
        };
        for a in 1..8u64 {
            let x = f8.binary_element(a).unwrap();
            assert_eq!(x.inverse().unwrap(), f8.binary_element(euclid_inverse(a, modulus)).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn binary_square_roots_are_exhaustive() {
        for k in 1..=4 {
            let r = RingSpec::binary_field(k).unwrap();
            for x in r.elements().unwrap() {
                let s = x.sqrt().expect("every element of GF(2^k) is a square");
                assert_eq!(&s * &s, x);
            }
        }
    }

    #[test]
    fn half_discriminant_of_q1_by_substitution() {
        let names = ["l1", "l2", "l3", "l12", "l13", "l23"];
        let r = RingSpec::polynomials(&names).unwrap();
        let p3 = r
            .parse_scalar("4*l1*l2*l3 + l12*l13*l23 - l1*l23^2 - l2*l13^2 - l3*l12^2")
            .unwrap();
        let z = RingSpec::integers();
        let at: HashMap<String, Scalar> =
            names.iter().zip([0, 0, 1, 1, 0, 0]).map(|(n, v)| (n.to_string(), z.from_i64(v))).collect();
        assert_eq!(p3.substitute(&at, &z).unwrap(), z.from_i64(-1));
    }

    fn sample_rings() -> Vec<RingSpec> {
        vec![
            RingSpec::integers(),
            RingSpec::rationals(),
            RingSpec::prime_field(7).unwrap(),
            RingSpec::binary_field(4).unwrap(),
            RingSpec::polynomials(&["a", "b"]).unwrap(),
        ]
    }

    /// A small element of `r` built from three integers.
    fn sample(r: &RingSpec, n: [i64; 3]) -> Scalar {
        match r.kind() {
            RingKind::Rationals => r.rational(n[0], n[1].abs() + 1).unwrap(),
            RingKind::BinaryField { .. } => r.binary_element(n[0].rem_euclid(16) as u64).unwrap(),
            RingKind::Polynomials { .. } => {
                let (a, b) = (r.variable("a").unwrap(), r.variable("b").unwrap());
                &(&r.from_i64(n[0]) + &(&r.from_i64(n[1]) * &a)) + &(&r.from_i64(n[2]) * &(&a * &b))
            }
            _ => r.from_i64(n[0] * 7 + n[1]),
        }
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn ring_axioms(which in 0usize..5, x in prop::array::uniform3(-9i64..9), y in prop::array::uniform3(-9i64..9), z in prop::array::uniform3(-9i64..9)) {
            let r = &sample_rings()[which];
            let (a, b, c) = (sample(r, x), sample(r, y), sample(r, z));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &r.zero(), a.clone());
            prop_assert_eq!(&a * &r.one(), a.clone());
            prop_assert!((&a + &(-&a)).is_zero());
            if a.is_unit() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
            prop_assert_eq!(r.parse_scalar(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn substitution_is_a_homomorphism(x in prop::array::uniform3(-9i64..9), y in prop::array::uniform3(-9i64..9), va in -5i64..5, vb in -5i64..5) {
            let r = RingSpec::polynomials(&["a", "b"]).unwrap();
            let f7 = RingSpec::prime_field(7).unwrap();
            let at: HashMap<String, Scalar> = [("a".to_string(), f7.from_i64(va)), ("b".to_string(), f7.from_i64(vb))].into();
            let (p, q) = (sample(&r, x), sample(&r, y));
            let ev = |s: &Scalar| s.substitute(&at, &f7).unwrap();
            prop_assert_eq!(ev(&(&p + &q)), &ev(&p) + &ev(&q));
            prop_assert_eq!(ev(&(&p * &q)), &ev(&p) * &ev(&q));
        }
    }
}
