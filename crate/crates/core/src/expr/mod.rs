//! Operator expressions over the algebra generated by `M_g`, `S_g`, `T_g`.
//!
//! Products are written left to right and applied right to left: `S*T` is
//! `S_g ∘ T_g`, so `T_g` acts first. With this convention the identity
//! `T_g S_g = S_g T_g − T_g² − g(0)(g − g(0))δ₀` reads
//! `T*S = S*T - T^2 - d0{w*u}`.

mod format;
mod parser;

use crate::algebra::{UPoly, WPoly};

pub use format::{format, format_upoly, format_wpoly, format_zpoly, to_json, Style};
pub use parser::{parse, parse_scalar, parse_upoly, parse_zpoly, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    M,
    S,
    T,
}

impl Letter {
    pub fn as_str(self) -> &'static str {
        match self {
            Letter::M => "M",
            Letter::S => "S",
            Letter::T => "T",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `M_{g^m}`
    M(u32),
    /// `S_{g^m}`
    S(u32),
    /// `T_{g^m}`
    T(u32),
    /// `f ↦ P(g − g(0))·f(0)` with `w ↦ g(0)`.
    Delta(UPoly),
}

impl Atom {
    pub fn letter(letter: Letter, m: u32) -> Atom {
        match letter {
            Letter::M => Atom::M(m),
            Letter::S => Atom::S(m),
            Letter::T => Atom::T(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Sum(Vec<OperatorExpr>),
    /// Factors in written order; the last one acts first.
    Product(Vec<OperatorExpr>),
    Power(Box<OperatorExpr>, u32),
    ScalarMul(WPoly, Box<OperatorExpr>),
    Atom(Atom),
}

impl OperatorExpr {
    pub fn m() -> Self {
        OperatorExpr::Atom(Atom::M(1))
    }

    pub fn s() -> Self {
        OperatorExpr::Atom(Atom::S(1))
    }

    pub fn t() -> Self {
        OperatorExpr::Atom(Atom::T(1))
    }

    pub fn delta(p: UPoly) -> Self {
        OperatorExpr::Atom(Atom::Delta(p))
    }

    pub fn letter(letter: Letter) -> Self {
        OperatorExpr::Atom(Atom::letter(letter, 1))
    }

    /// `self^n`, collapsing `n == 1`.
    pub fn pow(self, n: u32) -> Self {
        assert!(n >= 1, "operator powers start at 1");
        if n == 1 {
            self
        } else {
            OperatorExpr::Power(Box::new(self), n)
        }
    }

    pub fn scaled(self, c: WPoly) -> Self {
        OperatorExpr::ScalarMul(c, Box::new(self))
    }

    /// Composition of the given factors, collapsing singletons.
    pub fn product(mut factors: Vec<OperatorExpr>) -> Self {
        assert!(!factors.is_empty(), "empty product");
        if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            OperatorExpr::Product(factors)
        }
    }

    pub fn sum(mut terms: Vec<OperatorExpr>) -> Self {
        assert!(!terms.is_empty(), "empty sum");
        if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            OperatorExpr::Sum(terms)
        }
    }

    /// Upper bound on the order: the longest word the expression expands to.
    /// `T(g^m)` and `M(g^m)` count as `m` letters; `u^j·δ₀` as `j + 1`.
    pub fn letter_count(&self) -> usize {
        match self {
            OperatorExpr::Sum(ts) => ts.iter().map(|t| t.letter_count()).max().unwrap_or(0),
            OperatorExpr::Product(fs) => fs.iter().map(|f| f.letter_count()).sum(),
            OperatorExpr::Power(b, n) => b.letter_count() * *n as usize,
            OperatorExpr::ScalarMul(_, e) => e.letter_count(),
            OperatorExpr::Atom(Atom::M(m) | Atom::S(m) | Atom::T(m)) => *m as usize,
            OperatorExpr::Atom(Atom::Delta(p)) => p.degree().unwrap_or(0) + 1,
        }
    }

    /// True if no `d0` atom occurs.
    pub fn is_delta_free(&self) -> bool {
        match self {
            OperatorExpr::Sum(xs) | OperatorExpr::Product(xs) => xs.iter().all(|x| x.is_delta_free()),
            OperatorExpr::Power(b, _) => b.is_delta_free(),
            OperatorExpr::ScalarMul(_, e) => e.is_delta_free(),
            OperatorExpr::Atom(Atom::Delta(_)) => false,
            OperatorExpr::Atom(_) => true,
        }
    }

    /// True if every scalar in the expression is free of `w`.
    pub fn is_w_free(&self) -> bool {
        match self {
            OperatorExpr::Sum(xs) | OperatorExpr::Product(xs) => xs.iter().all(|x| x.is_w_free()),
            OperatorExpr::Power(b, _) => b.is_w_free(),
            OperatorExpr::ScalarMul(c, e) => crate::algebra::is_w_free(c) && e.is_w_free(),
            OperatorExpr::Atom(Atom::Delta(p)) => p.coeffs().iter().all(crate::algebra::is_w_free),
            OperatorExpr::Atom(_) => true,
        }
    }
}

impl std::fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format(self, Style::Plain))
    }
}

impl std::str::FromStr for OperatorExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
