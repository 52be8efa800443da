//! Expressions over the generators `T(i)`, `Tinv(i)`, `X(i,k)`, `a(name,slot)`.
//!
//! Two input forms are accepted: infix text such as `2*T(1)*X(2,1) - a("c",1)`
//! and a JSON tree such as `{"product":[{"T":1},{"X":[2,1]}]}`. A JSON array
//! of element terms is read as that element, so evaluation output parses back.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine::{AffineContext, AffineElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::serial::{affine_from_json, TermJson};

/// Expression tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    #[serde(rename = "T")]
    T(usize),
    #[serde(rename = "Tinv")]
    Tinv(usize),
    #[serde(rename = "X")]
    X(usize, i32),
    A(String, usize),
    Scalar(Scalar),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Terms(Vec<TermJson>),
}

impl Expr {
    /// Reads a JSON tree, a JSON term list, or infix text.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('[') {
            let terms: Vec<TermJson> = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(Expr::Terms(terms));
        }
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
        }
        Parser::new(t).parse_all()
    }

    pub fn eval(&self, ctx: &Arc<AffineContext>) -> Result<AffineElement> {
        match self {
            Expr::T(i) => AffineElement::t(ctx, *i),
            Expr::Tinv(i) => AffineElement::t_inv(ctx, *i),
            Expr::X(i, k) => AffineElement::x(ctx, *i, *k),
            Expr::A(name, slot) => {
                let k = ctx
                    .algebra()
                    .index_of(name)
                    .ok_or_else(|| Error::Unknown { kind: "basis element", name: name.clone() })?;
                AffineElement::a_in_slot(ctx, k, *slot)
            }
            Expr::Scalar(c) => Ok(AffineElement::one(ctx).scaled(c)),
            Expr::Sum(items) => {
                let mut acc = AffineElement::zero(ctx);
                for e in items {
                    acc = acc.try_add(&e.eval(ctx)?)?;
                }
                Ok(acc)
            }
            Expr::Product(items) => {
                let mut acc = AffineElement::one(ctx);
                for e in items {
                    acc = acc.mul(&e.eval(ctx)?)?;
                }
                Ok(acc)
            }
            Expr::Neg(e) => Ok(e.eval(ctx)?.scaled(&-Scalar::one())),
            Expr::Pow(e, k) if *k >= 0 => e.eval(ctx)?.pow(*k as u32),
            Expr::Pow(e, k) => e.inverse()?.eval(ctx)?.pow(k.unsigned_abs()),
            Expr::Terms(terms) => affine_from_json(ctx, terms),
        }
    }

    /// Inverse of a unit generator, used for negative powers.
    fn inverse(&self) -> Result<Expr> {
        match self {
            Expr::T(i) => Ok(Expr::Tinv(*i)),
            Expr::Tinv(i) => Ok(Expr::T(*i)),
            Expr::X(i, k) => Ok(Expr::X(*i, -k)),
            Expr::Scalar(c) => c.inv().map(Expr::Scalar).ok_or(Error::NotInvertible),
            Expr::Neg(e) => Ok(Expr::Neg(Box::new(e.inverse()?))),
            Expr::Pow(e, k) => Ok(Expr::Pow(Box::new(e.inverse()?), *k)),
            Expr::Product(items) => Ok(Expr::Product(items.iter().rev().map(Expr::inverse).collect::<Result<_>>()?)),
            _ => Err(Error::Parse("negative powers need a product of T, X or scalars".into())),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn parse_all(&mut self) -> Result<Expr> {
        let e = self.sum()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut items = vec![self.product()?];
        loop {
            if self.eat('+') {
                items.push(self.product()?);
            } else if self.eat('-') {
                items.push(Expr::Neg(Box::new(self.product()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Sum(items) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut items = vec![self.unary()?];
        while self.eat('*') {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Product(items) })
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.integer()?;
            let k = i32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("expected an integer"))
    }

    fn index(&mut self) -> Result<usize> {
        let k = self.integer()?;
        usize::try_from(k).map_err(|_| self.err("expected a nonnegative index"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.pos += self.peek_raw().map_or(0, char::len_utf8);
        }
        self.src[start..self.pos].to_string()
    }

    fn name(&mut self) -> Result<String> {
        if self.eat('"') {
            let start = self.pos;
            let end = self.src[start..].find('"').ok_or_else(|| self.err("unterminated string"))?;
            self.pos = start + end + 1;
            return Ok(self.src[start..start + end].to_string());
        }
        let id = self.ident();
        if id.is_empty() {
            return Err(self.err("expected a basis element name"));
        }
        Ok(id)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit() || c == '/') {
                    self.pos += 1;
                }
                Ok(Expr::Scalar(self.src[start..self.pos].parse()?))
            }
            Some(_) => {
                let id = self.ident();
                self.expect('(')?;
                let e = match id.as_str() {
                    "T" => Expr::T(self.index()?),
                    "Tinv" => Expr::Tinv(self.index()?),
                    "X" => {
                        let i = self.index()?;
                        let k = if self.eat(',') { self.integer()? } else { 1 };
                        Expr::X(i, i32::try_from(k).map_err(|_| self.err("exponent too large"))?)
                    }
                    "a" => {
                        let name = self.name()?;
                        self.expect(',')?;
                        Expr::A(name, self.index()?)
                    }
                    _ => return Err(Error::Unknown { kind: "generator", name: id }),
                };
                self.expect(')')?;
                Ok(e)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::serial::affine_to_json;
    use crate::superalgebra::presets;

    fn ctx(preset: &str, n: usize, z: &str) -> Arc<AffineContext> {
        AffineContext::new(Arc::new(presets::load(preset).unwrap()), n, z.parse().unwrap()).unwrap()
    }

    #[test]
    fn infix_and_tree_agree() {
        let c = ctx("trivial", 2, "1");
        let infix = Expr::parse("T(1)*T(1)").unwrap();
        let tree = Expr::parse(r#"{"product":[{"T":1},{"T":1}]}"#).unwrap();
        assert_eq!(infix, tree);
        assert_eq!(infix.eval(&c).unwrap().to_text(), "1 + T_1");
    }

    #[test]
    fn grammar() {
        let c = ctx("dual", 2, "1/2");
        let e = Expr::parse("2*X(2)^2 - a(\"c\", 1) * (T(1) + 1/2) + Tinv(1)*T(1)").unwrap();
        let x = e.eval(&c).unwrap();
        let x2 = AffineElement::x(&c, 2, 2).unwrap().scaled(&Scalar::from_int(2));
        let cc = AffineElement::a_in_slot(&c, 1, 1).unwrap();
        let t = AffineElement::t(&c, 1).unwrap();
        let half = AffineElement::one(&c).scaled(&"1/2".parse().unwrap());
        let expect = &(&x2 - &(&cc * &(&t + &half))) + &AffineElement::one(&c);
        assert_eq!(x, expect);
        assert_eq!(Expr::parse("T(1)^-2").unwrap().eval(&c).unwrap(), AffineElement::t_inv(&c, 1).unwrap().pow(2).unwrap());
        assert_eq!(Expr::parse("a(c,2)").unwrap(), Expr::A("c".into(), 2));
    }

    #[test]
    fn errors() {
        let c = ctx("dual", 2, "1");
        assert!(matches!(Expr::parse("Q(1)"), Err(Error::Unknown { .. })));
        assert!(matches!(Expr::parse("a(\"zz\",1)").unwrap().eval(&c), Err(Error::Unknown { .. })));
        assert!(Expr::parse("T(3)").unwrap().eval(&c).is_err());
        assert!(Expr::parse("T(1) +").is_err());
        assert!(Expr::parse("1/0").is_err());
        assert!(Expr::parse("(T(1)+1)^-1").is_err() || Expr::parse("(T(1)+1)^-1").unwrap().eval(&c).is_err());
    }

    #[test]
    fn output_parses_back() {
        let c = ctx("ext2", 2, "2/3");
        let x = Expr::parse("a(t1,1)*T(1)*X(1,-1) + X(2,1)*a(t2,2)").unwrap().eval(&c).unwrap();
        let text = serde_json::to_string(&affine_to_json(&x)).unwrap();
        let y = Expr::parse(&text).unwrap().eval(&c).unwrap();
        assert_eq!(x, y);
    }
}
