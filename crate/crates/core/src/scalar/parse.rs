//! Parser for the canonical text form of scalars.
//!
//! Grammar: sums and differences of products and quotients of powers of
//! integers, the indeterminate, `z` (the root of unity) and parenthesized
//! subexpressions.

use super::cyclo::Cyclo;
use super::ratfunc::RatFunc;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, Error> {
    let mut out = vec![];
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[start..i].iter().collect();
            let v = text.parse().map_err(|_| Error::Parse(format!("integer too large: {text}")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    var: &'a str,
    e: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).ok_or_else(|| Error::Parse("division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, Error> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k = if neg { -k } else { k };
                    if k < 0 && base.is_zero() {
                        return Err(Error::Parse("negative power of zero".into()));
                    }
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, Error> {
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(RatFunc::from_int(k))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == self.var {
                    Ok(RatFunc::x())
                } else if name == "z" {
                    if self.e < 2 {
                        return Err(Error::Parse("'z' needs a cyclotomic field".into()));
                    }
                    Ok(RatFunc::constant(Cyclo::zeta(self.e)))
                } else {
                    Err(Error::Parse(format!("unknown symbol '{name}'")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a scalar written in the indeterminate `var`; `z` denotes a
/// primitive `e`-th root of unity.
pub fn parse_scalar(text: &str, var: &str, e: u32) -> Result<RatFunc, Error> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut p = Parser { toks, pos: 0, var, e };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{text}'")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        let f = parse_scalar("(2*t^2-1)/(t+1)", "t", 0).unwrap();
        assert_eq!(f.render("t"), "(2*t^2-1)/(t+1)");
        let g = parse_scalar("((z+1)*x^2-z)/(x+z)", "x", 3).unwrap();
        assert_eq!(parse_scalar(&g.render("x"), "x", 3).unwrap(), g);
        assert_eq!(parse_scalar("t^-2", "t", 0).unwrap(), RatFunc::x().pow(-2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("1/0", "t", 0).is_err());
        assert!(parse_scalar("t+", "t", 0).is_err());
        assert!(parse_scalar("y", "t", 0).is_err());
        assert!(parse_scalar("z", "t", 0).is_err());
    }
}
