//! Parser for polynomial expressions over a [`Ring`]: variables, integer
//! literals, `+ - * ^` and parentheses.

use super::polynomial::Polynomial;
use super::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            let v = lit
                .parse::<u64>()
                .map_err(|_| format!("integer literal '{lit}' out of range"))?;
            out.push(Tok::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.unary()?;
        while self.eat_op('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, String> {
        if self.eat_op('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, String> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let e = match self.peek() {
                Some(Tok::Num(n)) => *n,
                _ => return Err("expected a non-negative integer exponent after '^'".into()),
            };
            self.pos += 1;
            if e > u16::MAX as u64 {
                return Err(format!("exponent {e} too large"));
            }
            let mut acc = Polynomial::one(self.ring);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self.ring.field().from_u64(n);
                Ok(Polynomial::monomial(
                    self.ring,
                    super::monomial::Monomial::one(self.ring.nvars()),
                    c,
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(format!("unknown variable '{name}'")),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err("missing ')'".into());
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(format!("unexpected '{c}'")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

/// Parse `src` as a polynomial in `ring`.
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial, String> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after position {}", p.pos));
    }
    Ok(out)
}

impl Ring {
    /// Parse a polynomial; panics on malformed input. Meant for tests and
    /// examples where the expression is a literal.
    pub fn poly(&self, src: &str) -> Polynomial {
        parse_polynomial(self, src).unwrap_or_else(|e| panic!("bad polynomial '{src}': {e}"))
    }

    pub fn polys(&self, srcs: &[&str]) -> Vec<Polynomial> {
        srcs.iter().map(|s| self.poly(s)).collect()
    }
}
