//! Polynomial expressions over a Lie algebra's basis names.
//!
//! Grammar (whitespace insignificant, `*` optional between factors):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ['-'] factor ('*'? factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'z' | name | '(' expr ')'
//! ```
//!
//! `z` is reserved for the deformation parameter.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::rational::{PolyZ, Rational};
use crate::sym::SymElement;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a LieAlgebra,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SymElement> {
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

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<SymElement> {
        let negate = self.eat('-');
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.sym_mul(&self.factor()?)?;
            } else if self.starts_factor() {
                acc = acc.sym_mul(&self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn factor(&mut self) -> Result<SymElement> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let k: usize = n.try_into().map_err(|_| Error::Parse { pos: self.pos(), msg: "exponent too large".into() })?;
                    Ok(base.pow(k))
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SymElement> {
        let dim = self.alg.dim();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let mut r = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Sym('/')) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != 0.into() => {
                            self.at += 1;
                            r /= Rational::from_integer(d);
                        }
                        _ => return self.err("expected nonzero denominator"),
                    }
                }
                Ok(SymElement::constant(dim, r))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "z" {
                    return Ok(SymElement::term(crate::sym::Monomial::one(dim), PolyZ::z()));
                }
                match self.alg.basis_index(&name) {
                    Some(i) => Ok(SymElement::basis(dim, i)),
                    None => {
                        self.at -= 1;
                        self.err(format!("unknown basis element {name:?}"))
                    }
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression over the basis names of `alg`.
pub fn parse(alg: &LieAlgebra, src: &str) -> Result<SymElement> {
    if alg.basis_index("z").is_some() {
        return Err(Error::Parse { pos: 0, msg: "basis name `z` clashes with the deformation parameter".into() });
    }
    let toks = lex(src)?;
    let mut p = Parser { alg, toks, at: 0, end: src.len() };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let x = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(x)
}

/// Parses a degree-one expression into a coordinate vector.
pub fn parse_vector(alg: &LieAlgebra, src: &str) -> Result<Vec<Rational>> {
    let x = parse(alg, src)?;
    if !x.is_z_constant() || x.terms().any(|(m, _)| m.degree() != 1) {
        return Err(Error::Parse { pos: 0, msg: format!("{src:?} is not a linear combination of basis elements") });
    }
    Ok(x.linear_part())
}

/// Canonical rendering, inverse to [`parse`].
pub fn render(alg: &LieAlgebra, x: &SymElement) -> String {
    x.display_with(alg.basis_names()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::sym::Monomial;

    fn h() -> LieAlgebra {
        LieAlgebra::heisenberg()
    }

    #[test]
    fn parses_products_and_powers() {
        let x = parse(&h(), "P^2 Q - 3/2*E").unwrap();
        let expected = &SymElement::monomial(Monomial::new(vec![2, 1, 0]))
            - &SymElement::basis(3, 2).scale(&rat(3, 2));
        assert_eq!(x, expected);
        assert_eq!(parse(&h(), "(P+Q)^2").unwrap(), parse(&h(), "P^2 + 2 P*Q + Q^2").unwrap());
        assert_eq!(parse(&h(), "-(1/2)z E").unwrap().coeff(&Monomial::basis(3, 2)), PolyZ::monomial(rat(-1, 2), 1));
        assert_eq!(parse(&h(), "1").unwrap(), SymElement::one(3));
    }

    #[test]
    fn round_trips() {
        for src in ["P*Q + (1/2)z E", "Q^3", "-2 Q^3 + (-1 + z) E + 5", "0", "P^2*E - z^2"] {
            let x = parse(&h(), src).unwrap();
            assert_eq!(render(&h(), &x), src);
        }
    }

    #[test]
    fn reports_positions() {
        match parse(&h(), "P + X") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse(&h(), "P +"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse(&h(), "P $"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse(&h(), "1/0").is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector(&h(), "P - 2E").unwrap(), vec![int(1), int(0), int(-2)]);
        assert!(parse_vector(&h(), "P^2").is_err());
    }
}
