//! Parser for polynomial text. Accepts everything `Display` produces plus
//! parentheses, powers of groups and division by nonzero constants.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' uint]
//! atom   := uint | ident | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, RingError, Var};

pub(super) fn parse(input: &str) -> Result<Polynomial, RingError> {
    let mut p = Parser { src: input, chars: input.char_indices().peekable() };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(RingError::Parse("empty input".into()));
    }
    let out = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(out),
        Some(c) => Err(p.error(&format!("unexpected `{c}`"))),
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> RingError {
        RingError::Parse(format!("{msg} in `{}`", self.src))
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, RingError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut out = if neg { -first } else { first };
        loop {
            if self.eat('+') {
                out += &self.term()?;
            } else if self.eat('-') {
                out -= &self.term()?;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, RingError> {
        let mut out = self.factor()?;
        loop {
            if self.eat('*') {
                out = &out * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => out = out.scale(&c.recip()),
                    _ => return Err(self.error("division by a zero or non-constant factor")),
                }
            } else {
                return Ok(out);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, RingError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let exp: u32 = digits.parse().map_err(|_| self.error("bad exponent"))?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, RingError> {
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("missing `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.error("bad number"))?;
                Ok(Polynomial::from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                Ok(Polynomial::var(Var::parse(&name)?))
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end")),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.chars.next();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("x").is_err());
        assert!(parse("a^").is_err());
        assert!(parse("a**b").is_err());
        assert!(parse("3/0").is_err());
        assert!(parse("a +").is_err());
        assert!(parse("(a + b").is_err());
        assert!(parse("a / b").is_err());
        assert!(parse("a b").is_err());
    }

    #[test]
    fn accepts_loose_spacing_and_repeated_terms() {
        assert_eq!(parse("a + a").unwrap(), parse("2*a").unwrap());
        assert_eq!(parse("a*a*b").unwrap(), parse("a^2*b").unwrap());
        assert_eq!(parse(" - 1/2 * q ").unwrap().to_string(), "-1/2*q");
    }

    #[test]
    fn groups_and_powers() {
        assert_eq!(parse("(t + 1)^2").unwrap(), parse("t^2 + 2*t + 1").unwrap());
        assert_eq!(parse("a*(b - c)/2").unwrap(), parse("1/2*a*b - 1/2*a*c").unwrap());
        assert_eq!(parse("-(q + 1)").unwrap(), parse("-q - 1").unwrap());
        let want = &Polynomial::var(Var::Alpha(12)) * &Polynomial::var(Var::Beta(3)).pow(2);
        assert_eq!(parse("alpha12*beta3^2").unwrap(), want);
    }
}
