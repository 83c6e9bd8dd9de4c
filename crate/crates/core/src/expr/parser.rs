use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{Atom, Letter, OperatorExpr};
use crate::algebra::{upoly_const, Poly, Ring, Scalar, UPoly, WPoly, ZPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Num(n), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if b"+-*/^(){}".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(ParseError { offset: i, message: format!("unexpected character '{ch}'") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// What a sub-expression evaluates to while parsing.
#[derive(Debug)]
enum Val {
    /// Scalar-valued: a polynomial in the free symbol (u or z) over w.
    Poly(UPoly),
    Op(OperatorExpr),
}

#[derive(Clone, Copy)]
struct Mode {
    /// Name of the polynomial variable accepted in this context, if any.
    var: Option<&'static str>,
    allow_w: bool,
    allow_ops: bool,
}

const OPERATOR_MODE: Mode = Mode { var: None, allow_w: true, allow_ops: true };
const UPOLY_MODE: Mode = Mode { var: Some("u"), allow_w: true, allow_ops: false };
const ZPOLY_MODE: Mode = Mode { var: Some("z"), allow_w: false, allow_ops: false };
const SCALAR_MODE: Mode = Mode { var: None, allow_w: false, allow_ops: false };

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn nat(&mut self, what: &str) -> Result<u32, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let v: u32 = n
                    .try_into()
                    .map_err(|_| ParseError { offset: at, message: format!("{what} too large") })?;
                if v == 0 {
                    return Err(ParseError { offset: at, message: format!("{what} must be at least 1") });
                }
                Ok(v)
            }
            _ => Err(ParseError { offset: at, message: format!("expected a positive integer {what}") }),
        }
    }

    fn expr(&mut self, mode: Mode) -> Result<Val, ParseError> {
        let start = self.offset();
        let mut negate = false;
        if self.eat_sym('-') {
            negate = true;
        } else {
            self.eat_sym('+');
        }
        let mut terms = vec![(self.term(mode, negate)?, start)];
        loop {
            let at = self.offset();
            let negate = if self.eat_sym('+') {
                false
            } else if self.eat_sym('-') {
                true
            } else {
                break;
            };
            terms.push((self.term(mode, negate)?, at));
        }
        if terms.len() == 1 {
            return Ok(terms.pop().unwrap().0);
        }
        let any_op = terms.iter().any(|(t, _)| matches!(t, Val::Op(_)));
        if !any_op {
            let sum = terms.into_iter().fold(UPoly::zero(), |acc, (t, _)| match t {
                Val::Poly(p) => acc.add(&p),
                Val::Op(_) => unreachable!(),
            });
            return Ok(Val::Poly(sum));
        }
        let mut ops = Vec::with_capacity(terms.len());
        for (t, at) in terms {
            match t {
                Val::Op(o) => ops.push(o),
                Val::Poly(_) => {
                    return Err(ParseError {
                        offset: at,
                        message: "cannot add a scalar to an operator (the algebra has no identity)".into(),
                    })
                }
            }
        }
        Ok(Val::Op(OperatorExpr::Sum(ops)))
    }

    fn term(&mut self, mode: Mode, negate: bool) -> Result<Val, ParseError> {
        let mut coef = UPoly::one();
        let mut saw_scalar = false;
        let mut ops: Vec<OperatorExpr> = Vec::new();
        let mut divide = false;
        loop {
            let at = self.offset();
            let f = self.factor(mode)?;
            match f {
                Val::Poly(p) if divide => {
                    let c = as_constant(&p)
                        .filter(|c| !Ring::is_zero(c))
                        .ok_or_else(|| ParseError {
                            offset: at,
                            message: "divisor must be a nonzero numeric constant".into(),
                        })?;
                    coef = coef.scale(&Poly::constant(c.inv().unwrap()));
                    saw_scalar = true;
                }
                Val::Poly(p) => {
                    coef = coef.mul(&p);
                    saw_scalar = true;
                }
                Val::Op(_) if divide => {
                    return Err(ParseError { offset: at, message: "cannot divide by an operator".into() })
                }
                Val::Op(o) => ops.push(o),
            }
            divide = if self.eat_sym('*') {
                false
            } else if self.eat_sym('/') {
                true
            } else {
                break;
            };
        }
        if negate {
            coef = coef.neg();
        }
        if ops.is_empty() {
            return Ok(Val::Poly(coef));
        }
        let op = OperatorExpr::product(ops);
        if saw_scalar || negate {
            let c = scalar_part(&coef).expect("operator mode forbids the free variable");
            Ok(Val::Op(OperatorExpr::ScalarMul(c, Box::new(op))))
        } else {
            Ok(Val::Op(op))
        }
    }

    fn factor(&mut self, mode: Mode) -> Result<Val, ParseError> {
        let base = self.primary(mode)?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let n = self.nat("exponent")?;
        Ok(match base {
            Val::Poly(p) => Val::Poly(p.pow(n)),
            Val::Op(o) => Val::Op(OperatorExpr::Power(Box::new(o), n)),
        })
    }

    fn primary(&mut self, mode: Mode) -> Result<Val, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(Val::Poly(upoly_const(Scalar::real(BigRational::from_integer(n))))),
            Tok::Sym('(') => {
                let v = self.expr(mode)?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(name) => self.ident(&name, at, mode),
            Tok::End => Err(ParseError { offset: at, message: "unexpected end of input".into() }),
            Tok::Sym(c) => Err(ParseError { offset: at, message: format!("unexpected '{c}'") }),
        }
    }

    fn ident(&mut self, name: &str, at: usize, mode: Mode) -> Result<Val, ParseError> {
        let letter = match name {
            "M" => Some(Letter::M),
            "S" => Some(Letter::S),
            "T" => Some(Letter::T),
            _ => None,
        };
        if let Some(letter) = letter {
            if !mode.allow_ops {
                return Err(ParseError { offset: at, message: format!("operator '{name}' not allowed here") });
            }
            let m = self.gpow()?;
            return Ok(Val::Op(OperatorExpr::Atom(Atom::letter(letter, m))));
        }
        match name {
            "d0" => {
                if !mode.allow_ops {
                    return Err(ParseError { offset: at, message: "'d0' not allowed here".into() });
                }
                let payload = if self.eat_sym('{') {
                    let inner_at = self.offset();
                    match self.expr(UPOLY_MODE)? {
                        Val::Poly(p) => {
                            self.expect_sym('}')?;
                            p
                        }
                        Val::Op(_) => {
                            return Err(ParseError { offset: inner_at, message: "d0 payload must be a polynomial".into() })
                        }
                    }
                } else {
                    UPoly::one()
                };
                Ok(Val::Op(OperatorExpr::Atom(Atom::Delta(payload))))
            }
            "i" => Ok(Val::Poly(upoly_const(Scalar::i()))),
            "w" if mode.allow_w => Ok(Val::Poly(Poly::constant(crate::algebra::w()))),
            v if Some(v) == mode.var => Ok(Val::Poly(crate::algebra::u())),
            "u" => Err(ParseError { offset: at, message: "'u' is only allowed inside d0{...}".into() }),
            _ => Err(ParseError { offset: at, message: format!("unknown identifier '{name}'") }),
        }
    }

    /// Optional `(g^m)` suffix of a letter; defaults to `m = 1`.
    fn gpow(&mut self) -> Result<u32, ParseError> {
        if *self.peek() != Tok::Sym('(') {
            return Ok(1);
        }
        // Only `(g...)` is a symbol power; anything else is left for the caller.
        if self.toks.get(self.pos + 1).map(|t| &t.0) != Some(&Tok::Ident("g".into())) {
            return self.err("expected '(g^m)' after operator letter");
        }
        self.bump();
        self.bump();
        let m = if self.eat_sym('^') { self.nat("symbol power")? } else { 1 };
        self.expect_sym(')')?;
        Ok(m)
    }
}

fn as_constant(p: &UPoly) -> Option<Scalar> {
    if p.degree().unwrap_or(0) > 0 {
        return None;
    }
    let c = p.constant_term();
    if c.degree().unwrap_or(0) > 0 {
        return None;
    }
    Some(c.constant_term())
}

fn scalar_part(p: &UPoly) -> Option<WPoly> {
    if p.degree().unwrap_or(0) > 0 {
        return None;
    }
    Some(p.constant_term())
}

fn run(text: &str, mode: Mode) -> Result<Val, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return p.err("empty expression");
    }
    let v = p.expr(mode)?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parses an operator expression.
pub fn parse(text: &str) -> Result<OperatorExpr, ParseError> {
    match run(text, OPERATOR_MODE)? {
        Val::Op(o) => Ok(o),
        Val::Poly(_) => Err(ParseError { offset: 0, message: "expression contains no operator".into() }),
    }
}

/// Parses a polynomial in `u` and `w`, the syntax of `d0{...}` payloads.
pub fn parse_upoly(text: &str) -> Result<UPoly, ParseError> {
    match run(text, UPOLY_MODE)? {
        Val::Poly(p) => Ok(p),
        Val::Op(_) => unreachable!(),
    }
}

/// Parses a polynomial in `z` with ℚ(i) coefficients.
pub fn parse_zpoly(text: &str) -> Result<ZPoly, ParseError> {
    match run(text, ZPOLY_MODE)? {
        Val::Poly(p) => Ok(p.map(|c| c.constant_term())),
        Val::Op(_) => unreachable!(),
    }
}

/// Parses a numeric ℚ(i) literal such as `3/2` or `-1/3*i`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    match run(text, SCALAR_MODE)? {
        Val::Poly(p) => as_constant(&p).ok_or(ParseError { offset: 0, message: "not a constant".into() }),
        Val::Op(_) => unreachable!(),
    }
}

impl Scalar {
    pub fn parse(text: &str) -> Result<Scalar, ParseError> {
        parse_scalar(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{u, w};

    fn neg1() -> WPoly {
        Poly::constant(Scalar::from_int(-1))
    }

    #[test]
    fn sum_of_products() {
        let e = parse("S*T - T^2").unwrap();
        let expected = OperatorExpr::Sum(vec![
            OperatorExpr::Product(vec![OperatorExpr::s(), OperatorExpr::t()]),
            OperatorExpr::ScalarMul(neg1(), Box::new(OperatorExpr::Power(Box::new(OperatorExpr::t()), 2))),
        ]);
        assert_eq!(e, expected);
    }

    #[test]
    fn generalized_atom() {
        assert_eq!(parse("T(g^3)").unwrap(), OperatorExpr::Atom(Atom::T(3)));
        assert_eq!(parse("M(g)").unwrap(), OperatorExpr::Atom(Atom::M(1)));
    }

    #[test]
    fn delta_atoms() {
        let e = parse("d0{-w*u}").unwrap();
        let payload = u().scale(&w()).neg();
        assert_eq!(e, OperatorExpr::delta(payload));
        assert_eq!(parse("d0").unwrap(), OperatorExpr::delta(UPoly::one()));
        assert_eq!(parse("d0{w}").unwrap(), OperatorExpr::delta(Poly::constant(w())));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("3/2").unwrap(), Scalar::ratio(3, 2));
        assert_eq!(parse_scalar("-1/3*i").unwrap(), Scalar::ratio(-1, 3) * Scalar::i());
        let e = parse("(1+i)*w^2*T").unwrap();
        match e {
            OperatorExpr::ScalarMul(c, _) => {
                assert_eq!(c, Poly::monomial(Scalar::from_int(1) + Scalar::i(), 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zpoly() {
        let p = parse_zpoly("1 + z^2/2").unwrap();
        assert_eq!(p, Poly::new(vec![Scalar::from_int(1), Scalar::from_int(0), Scalar::ratio(1, 2)]));
        assert!(parse_zpoly("w*z").is_err());
    }

    #[test]
    fn diagnostics() {
        let e = parse("T^0").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("exponent"));
        assert!(parse("T(g^0)").unwrap_err().message.contains("symbol power"));
        assert!(parse("").is_err());
        assert!(parse("()").is_err());
        assert!(parse("S*").is_err());
        assert!(parse("S + 1").unwrap_err().message.contains("identity"));
        assert!(parse("3/2").is_err());
        assert!(parse("u*T").is_err());
        assert!(parse("S/T").is_err());
        assert!(parse("T/0").is_err());
        assert!(parse("T $").unwrap_err().offset == 2);
        assert!(parse("d0{T}").is_err());
        assert!(parse("X").is_err());
    }
}
