//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are kept sorted in decreasing graded-lexicographic order with no
//! zero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Exponents = Vec<u32>;

/// Graded lexicographic comparison: total degree first, then the exponent of
/// the earliest variable.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(c: BigInt, nvars: usize) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((vec![0; nvars], c));
        }
        p
    }

    pub fn variable(index: usize, nvars: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[index] = 1;
        Poly { nvars, terms: vec![(exp, BigInt::one())] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut raw: Vec<(Exponents, BigInt)> = terms.into_iter().collect();
        raw.sort_by(|a, b| grlex(&b.0, &a.0));
        let mut out: Vec<(Exponents, BigInt)> = Vec::with_capacity(raw.len());
        for (exp, c) in raw {
            debug_assert_eq!(exp.len(), nvars);
            match out.last_mut() {
                Some((last, acc)) if *last == exp => *acc += c,
                _ => out.push((exp, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(exp, c)] if exp.iter().all(|&e| e == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Exponents, BigInt)> {
        self.terms.first()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match grlex(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                raw.push((exp, ca * cb));
            }
        }
        Poly::from_terms(self.nvars, raw)
    }

    fn mul_term(&self, exp: &[u32], c: &BigInt) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.iter().zip(exp).map(|(x, y)| x + y).collect(), k * c))
                .collect(),
        }
    }

    /// Exact square root by leading-term extraction. Returns the root with
    /// positive leading coefficient, or `None` when `self` is not a square.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some((lead_exp, lead_c)) = self.leading() else {
            return Some(self.clone());
        };
        if lead_c.is_negative() || lead_exp.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let root_c = lead_c.sqrt();
        if &(&root_c * &root_c) != lead_c {
            return None;
        }
        let root_exp: Exponents = lead_exp.iter().map(|e| e / 2).collect();
        let twice_lead = BigInt::from(2) * &root_c;
        let mut root = Poly { nvars: self.nvars, terms: vec![(root_exp.clone(), root_c)] };
        let mut rest = self.sub(&root.mul(&root));
        // Each new term t satisfies lt(rest) = 2 * lt(root) * t, and the leading
        // monomial of `rest` strictly decreases, so the loop terminates.
        while let Some((exp, c)) = rest.leading().cloned() {
            if exp.iter().zip(&root_exp).any(|(a, b)| a < b) {
                return None;
            }
            if !(&c % &twice_lead).is_zero() {
                return None;
            }
            let t_exp: Exponents = exp.iter().zip(&root_exp).map(|(a, b)| a - b).collect();
            if grlex(&t_exp, &root_exp) != Ordering::Less {
                return None;
            }
            let t_c = &c / &twice_lead;
            // rest -= 2*root*t + t^2
            let t = Poly { nvars: self.nvars, terms: vec![(t_exp.clone(), t_c.clone())] };
            let correction = root.mul_term(&t_exp, &(BigInt::from(2) * &t_c)).add(&t.mul(&t));
            rest = rest.sub(&correction);
            root = root.add(&t);
        }
        Some(root)
    }

    /// Renders the polynomial with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exp, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_constant = exp.iter().all(|&e| e == 0);
            if !magnitude.is_one() || is_constant {
                factors.push(magnitude.to_string());
            }
            for (name, &e) in names.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Lexicographic comparison of term lists (monomial, then coefficient).
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = grlex(&a.0, &b.0).reverse().then_with(|| a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}
