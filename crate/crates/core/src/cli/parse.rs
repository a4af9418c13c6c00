//! Text syntax for forms and scalar lists.

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::forms::TernaryQuadraticForm;

/// Index of a monomial `x_i x_j` (0-based, `i <= j`) in the coefficient order
/// `(λ1, λ2, λ3, λ12, λ13, λ23)`.
fn monomial_slot(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (a, b) if a == b => a,
        (0, 1) => 3,
        (0, 2) => 4,
        _ => 5,
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

enum Factor {
    Variable(usize, u32),
    Coefficient(Scalar),
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_space(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_space();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
        &self.text[start..self.pos]
    }

    fn exponent(&mut self) -> Result<Option<u32>> {
        if !self.eat('^') {
            return Ok(None);
        }
        self.skip_space();
        let at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map(Some).map_err(|_| syntax(at, "expected an exponent"))
    }

    fn factor(&mut self, ring: &RingSpec) -> Result<Factor> {
        self.skip_space();
        let at = self.pos;
        match self.peek() {
            Some('(') => {
                let mut depth = 0usize;
                let start = self.pos + 1;
                loop {
                    match self.peek() {
                        None => return Err(syntax(at, "unbalanced parenthesis")),
                        Some('(') => depth += 1,
                        Some(')') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    self.pos += self.peek().map_or(0, char::len_utf8);
                }
                let inner = &self.text[start..self.pos];
                self.pos += 1;
                let mut c = ring.parse_scalar(inner)?;
                if let Some(e) = self.exponent()? {
                    c = c.pow_u(e);
                }
                Ok(Factor::Coefficient(c))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '/');
                let exponent = self.exponent()?;
                if let Some(d) = word.strip_prefix('x').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())) {
                    let index = match d {
                        "1" => 0,
                        "2" => 1,
                        "3" => 2,
                        _ => return Err(syntax(at, format!("unknown variable {word}"))),
                    };
                    return Ok(Factor::Variable(index, exponent.unwrap_or(1)));
                }
                let mut c = ring.parse_scalar(word)?;
                if let Some(e) = exponent {
                    c = c.pow_u(e);
                }
                Ok(Factor::Coefficient(c))
            }
            Some(c) => Err(syntax(at, format!("unexpected '{c}'"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses expressions like `x1*x2 + x3^2` or `2*x1^2 - (a+b)*x2*x3`.
/// Repeated monomials accumulate; terms must be quadratic.
pub fn parse_form(text: &str, ring: &RingSpec) -> Result<TernaryQuadraticForm> {
    let mut coeffs: [Scalar; 6] = std::array::from_fn(|_| ring.zero());
    let mut lx = Lexer { text, pos: 0 };
    lx.skip_space();
    if lx.pos == text.len() {
        return Err(syntax(0, "empty form"));
    }
    if lx.text[lx.pos..].trim() == "0" {
        return Ok(TernaryQuadraticForm::zero(ring));
    }
    let mut negative = lx.eat('-');
    loop {
        let term_start = {
            lx.skip_space();
            lx.pos
        };
        let mut coefficient = ring.one();
        let mut variables = Vec::new();
        loop {
            match lx.factor(ring)? {
                Factor::Coefficient(c) => coefficient = coefficient.try_mul(&c)?,
                Factor::Variable(i, e) => variables.extend(std::iter::repeat_n(i, e as usize)),
            }
            if !lx.eat('*') {
                break;
            }
        }
        let slot = match variables[..] {
            [i, j] => monomial_slot(i, j),
            _ => return Err(syntax(term_start, "term is not quadratic in x1, x2, x3")),
        };
        if negative {
            coefficient = -&coefficient;
        }
        coeffs[slot] = coeffs[slot].try_add(&coefficient)?;
        lx.skip_space();
        if lx.pos == text.len() {
            break;
        }
        negative = match lx.peek() {
            Some('+') => false,
            Some('-') => true,
            Some(c) => return Err(syntax(lx.pos, format!("expected '+' or '-', found '{c}'"))),
            None => unreachable!(),
        };
        lx.pos += 1;
    }
    TernaryQuadraticForm::from_coeffs(coeffs)
}

/// Parses `n` scalars separated by commas or whitespace.
pub fn parse_scalars(text: &str, ring: &RingSpec, n: usize) -> Result<Vec<Scalar>> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c == ';' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if parts.len() != n {
        return Err(Error::Dimension(format!("expected {n} scalars, found {}", parts.len())));
    }
    parts.into_iter().map(|p| ring.parse_scalar(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let q = RingSpec::rationals();
        assert_eq!(parse_form("x1*x2 + x3^2", &q).unwrap(), TernaryQuadraticForm::q1(&q));
        let z = RingSpec::integers();
        let f = parse_form("2*x1^2 + x1*x2 + x1*x2", &z).unwrap();
        assert_eq!(f, TernaryQuadraticForm::from_i64(&z, [2, 0, 0, 2, 0, 0]));
        assert_eq!(parse_form("x3*x1 - x2*x1 + 3*x1*x1", &z).unwrap(), TernaryQuadraticForm::from_i64(&z, [3, 0, 0, -1, 1, 0]));
        assert_eq!(parse_form("-1/2*x2^2", &q).unwrap().l2(), &q.rational(-1, 2).unwrap());
        assert!(parse_form("0", &z).unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        let z = RingSpec::integers();
        assert!(matches!(parse_form("x4^2", &z), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_form("x1^2 + x1", &z), Err(Error::Syntax { position: 7, .. })));
        assert!(matches!(parse_form("x1^2 + 3", &z), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("x1^2 x2", &z), Err(Error::Syntax { position: 5, .. })));
        assert!(matches!(parse_form("1/2*x1^2", &z), Err(Error::InvalidLiteral { .. })));
        assert!(matches!(parse_form("", &z), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("(1+x1^2", &z), Err(Error::Syntax { .. })));
    }

    #[test]
    fn polynomial_and_binary_coefficients() {
        let r = RingSpec::polynomials(&["a", "b"]).unwrap();
        let f = parse_form("(a + b)*x1^2 + a^2*x2*x3 - b*x1*x3", &r).unwrap();
        assert_eq!(f.l1(), &r.parse_scalar("a+b").unwrap());
        assert_eq!(f.l23(), &r.parse_scalar("a^2").unwrap());
        assert_eq!(parse_form(&f.to_string(), &r).unwrap(), f);
        let f4 = RingSpec::binary_field(2).unwrap();
        let g = parse_form("0b11*x1^2 + 2*x1*x2", &f4).unwrap();
        assert_eq!(g.l1(), &f4.binary_element(3).unwrap());
        assert_eq!(parse_form(&g.to_string(), &f4).unwrap(), g);
    }

    #[test]
    fn scalar_lists() {
        let f5 = RingSpec::prime_field(5).unwrap();
        assert_eq!(parse_scalars("1, 2 3", &f5, 3).unwrap(), vec![f5.one(), f5.from_i64(2), f5.from_i64(3)]);
        assert!(matches!(parse_scalars("1,2", &f5, 3), Err(Error::Dimension(_))));
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(c in prop::array::uniform6(-20i64..20), d in 1i64..5) {
            let q = RingSpec::rationals();
            let coeffs = c.map(|n| q.rational(n, d).unwrap());
            let f = TernaryQuadraticForm::from_coeffs(coeffs).unwrap();
            prop_assert_eq!(parse_form(&f.to_string(), &q).unwrap(), f);
        }

        #[test]
        fn print_then_parse_over_f7(c in prop::array::uniform6(0i64..7)) {
            let r = RingSpec::prime_field(7).unwrap();
            let f = TernaryQuadraticForm::from_i64(&r, c);
            prop_assert_eq!(parse_form(&f.to_string(), &r).unwrap(), f);
        }
    }
}
