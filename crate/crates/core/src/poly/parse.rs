//! Text grammar for polynomials.
//!
//! ```text
//! rational ::= int | int "/" int
//! atom     ::= rational | var | "(" expr ")"
//! power    ::= atom ["^" uint]
//! term     ::= power {"*" power}
//! expr     ::= ["+"|"-"] term {("+"|"-") term}
//! ```
//!
//! ASCII whitespace between tokens is ignored. There is no implicit
//! multiplication. Variable names may end in apostrophes (`x'`).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational, Signature};
use crate::error::{Error, Result};

/// Largest weighted degree the parser will build, for any subexpression.
pub const MAX_PARSE_DEGREE: u32 = 64;

pub fn parse_poly(text: &str, sig: &Arc<Signature>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        sig,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Arc<Signature>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let start = self.pos;
            let rhs = self.power()?;
            let degree = acc.degree().unwrap_or(0) as u64 + rhs.degree().unwrap_or(0) as u64;
            self.check_degree(degree, start)?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.src.get(self.pos) == Some(&b'-') {
            return Err(Error::NegativeExponent { offset: start });
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.syntax("expected exponent"));
        }
        let e: u64 = digits.parse().unwrap_or(u64::MAX);
        let degree = e.saturating_mul(base.degree().unwrap_or(0) as u64);
        self.check_degree(degree, start)?;
        if e > u32::MAX as u64 {
            // Only reachable for a constant base.
            return Err(Error::DegreeTooLarge {
                degree: e,
                limit: MAX_PARSE_DEGREE,
                offset: start,
            });
        }
        if base.degree() == Some(0) && e > MAX_PARSE_DEGREE as u64 {
            // Guard against huge rational powers.
            return Err(Error::DegreeTooLarge {
                degree: e,
                limit: MAX_PARSE_DEGREE,
                offset: start,
            });
        }
        Ok(base.pow(e as u32))
    }

    fn check_degree(&self, degree: u64, offset: usize) -> Result<()> {
        if degree > MAX_PARSE_DEGREE as u64 {
            Err(Error::DegreeTooLarge {
                degree,
                limit: MAX_PARSE_DEGREE,
                offset,
            })
        } else {
            Ok(())
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        // Only ASCII digits were consumed.
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.syntax("expected denominator"));
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            offset: at,
                            message: "zero denominator".into(),
                        });
                    }
                    Ok(Polynomial::constant(self.sig, Rational::new(num, den)))
                } else {
                    Ok(Polynomial::constant(self.sig, Rational::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                while self.pos < self.src.len() && self.src[self.pos] == b'\'' {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.sig.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.sig, i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        offset: start,
                    }),
                }
            }
            Some(_) => Err(self.syntax("expected number, variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in canonical order, explicit `*`, no spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let sig = self.signature();
        for (i, (m, c)) in self.terms().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if m.is_one() {
                write_rational(f, &a)?;
                continue;
            }
            let mut first = true;
            if !a.is_one() {
                write_rational(f, &a)?;
                first = false;
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(sig.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1() -> Arc<Signature> {
        Signature::heisenberg(1)
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &h1()).unwrap()
    }

    #[test]
    fn eta_squared_has_three_terms() {
        let eta = p("x^2+y^2+4*t");
        assert_eq!(eta.len(), 3);
        assert_eq!(eta.to_string(), "x^2+y^2+4*t");
    }

    #[test]
    fn zero_and_difference_of_squares() {
        assert!(p("0").is_zero());
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("(x+y)*(x-y)"), p("x^2-y^2"));
        assert_eq!(p("(x + t) * (x - t)").to_string(), "-t^2+x^2");
    }

    #[test]
    fn rationals_and_signs() {
        assert_eq!(p("-3/2*x*y^2 + 1/2").to_string(), "-3/2*x*y^2+1/2");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("+2*x1*y1").to_string(), "2*x*y");
        assert_eq!(p("(x)^0").to_string(), "1");
        assert_eq!(p("2/4*x").to_string(), "1/2*x");
    }

    #[test]
    fn errors_carry_offsets() {
        let sig = h1();
        assert_eq!(
            parse_poly("x+z", &sig),
            Err(Error::UnknownVariable {
                name: "z".into(),
                offset: 2
            })
        );
        assert_eq!(
            parse_poly("x^-2", &sig),
            Err(Error::NegativeExponent { offset: 2 })
        );
        assert!(matches!(parse_poly("x*", &sig), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("2x", &sig), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_poly("x^2^3", &sig), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_poly("1/0", &sig), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("(x", &sig), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("", &sig), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(
            parse_poly("t^40", &sig),
            Err(Error::DegreeTooLarge { degree: 80, .. })
        ));
    }

    #[test]
    fn print_parse_is_idempotent() {
        for s in ["x^3-3*x*y^2", "2*x^3+3*y*t", "-4*t", "x^2*y^2*t^3-1/7"] {
            let once = p(s).to_string();
            assert_eq!(p(&once).to_string(), once);
        }
    }

    #[test]
    fn primed_names() {
        let sig = h1().primed();
        let law = parse_poly("t+t'+2*(x'*y-x*y')", &sig).unwrap();
        assert_eq!(law.to_string(), "-2*x*y'+2*y*x'+t+t'");
    }
}
