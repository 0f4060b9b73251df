//! Exact parser for polynomial strings such as `"x*z - y^2"` or `"3/2*x^2*y + 1"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let err = |m: String| Error::parse("polynomial", m);
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '.' => return Err(err(format!("floating-point literal in {s:?}"))),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && matches!(chars[i], '.' | 'e' | 'E') {
                    return Err(err(format!("floating-point literal in {s:?}")));
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(err(format!("unexpected character {other:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::parse("polynomial", format!("{m} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let n = self.names.len();
        let mut acc = Polynomial::zero(n);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -Scalar::one()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                Scalar::one()
            }
            _ => Scalar::one(),
        };
        loop {
            let (m, c) = self.term()?;
            acc = &acc + &Polynomial::term(m, c * &sign);
            match self.next() {
                None => return Ok(acc),
                Some(Tok::Plus) => sign = Scalar::one(),
                Some(Tok::Minus) => sign = -Scalar::one(),
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let n = self.names.len();
        let mut exps = vec![0u32; n];
        let mut coeff = Scalar::one();
        loop {
            match self.next() {
                Some(Tok::Num(a)) => {
                    let mut value = BigRational::from_integer(a);
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(b)) if b != BigInt::from(0) => {
                                value /= BigRational::from_integer(b);
                            }
                            _ => return Err(self.err("bad denominator")),
                        }
                    }
                    coeff *= value;
                }
                Some(Tok::Ident(name)) => {
                    let Some(i) = self.names.iter().position(|v| *v == name) else {
                        return Err(self.err(&format!("unknown variable {name:?}")));
                    };
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(k)) => {
                                e = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
                            }
                            _ => return Err(self.err("expected exponent")),
                        }
                    }
                    exps[i] += e;
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((Monomial::new(exps), coeff));
            }
        }
    }
}

/// Parses a polynomial over the named variables. Coefficients are integers or
/// `p/q` fractions; floating-point literals are rejected.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::parse("polynomial", "empty string"));
    }
    Parser {
        toks,
        pos: 0,
        names,
        src,
    }
    .expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qf};

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn parses_terms() {
        let p = parse_polynomial("x*z - y^2", &names()).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 0, 1])), q(1));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 2, 0])), q(-1));
        assert_eq!(p.len(), 2);

        let p = parse_polynomial("-3/2*x^2*y + 2*x*x*y + 1", &names()).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 1, 0])), qf(1, 2));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 0, 0])), q(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_polynomial("0.5*x", &names()).is_err());
        assert!(parse_polynomial("1e3*x", &names()).is_err());
        assert!(parse_polynomial("x + w", &names()).is_err());
        assert!(parse_polynomial("x +", &names()).is_err());
        assert!(parse_polynomial("", &names()).is_err());
        assert!(parse_polynomial("x/0", &names()).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x*z - y^2", "x^3 + y^3 + z^3", "1/3*x - 7/2*y*z"] {
            let p = parse_polynomial(s, &names()).unwrap();
            let again = parse_polynomial(&p.display_with(&names()), &names()).unwrap();
            assert_eq!(p, again);
        }
    }
}
