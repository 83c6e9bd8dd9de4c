//! Truncated Taylor series on the disc, in exact (ℚ(i)) or float (complex
//! `f64`) mode, and the action of the paraproduct letters on them.

mod spec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Ring, Scalar, UPoly, WPoly, ZPoly};
use crate::expr::{Atom, OperatorExpr};
use crate::rewrite::CanonicalForm;

pub use spec::{symbol_series, symbol_series_exact, test_function_f, test_function_h, Analytic, SymbolSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series has zero constant term; {0} needs a nonzero one")]
    ZeroConstantTerm(&'static str),
    #[error("invalid symbol spec: {0}")]
    InvalidSpec(String),
    #[error("{0} is only available in float mode")]
    FloatOnly(&'static str),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// Coefficient field of a series.
pub trait Coef: Ring + Send + Sync {
    fn from_scalar(s: &Scalar) -> Self;
    fn to_c64(&self) -> Complex64;
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_rational(&self, q: &BigRational) -> Self {
        self * q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Coef for Complex64 {
    fn from_scalar(s: &Scalar) -> Self {
        s.to_c64()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

impl Coef for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Scalar::to_c64(self)
    }
}

/// Coefficients `a_0..a_N`; everything past `N` is discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub type FloatSeries = Series<Complex64>;
pub type ExactSeries = Series<Scalar>;

impl<C: Coef> Series<C> {
    pub fn zeros(n: usize) -> Self {
        Series { coeffs: vec![C::zero(); n + 1] }
    }

    /// Pads or truncates to order `n`.
    pub fn from_coeffs(mut v: Vec<C>, n: usize) -> Self {
        v.resize(n + 1, C::zero());
        Series { coeffs: v }
    }

    pub fn from_poly(p: &ZPoly, n: usize) -> Self {
        Series::from_coeffs(p.coeffs().iter().map(C::from_scalar).collect(), n)
    }

    pub fn constant(c: C, n: usize) -> Self {
        let mut s = Series::zeros(n);
        s.coeffs[0] = c;
        s
    }

    pub fn monomial(k: usize, n: usize) -> Self {
        let mut s = Series::zeros(n);
        if k <= n {
            s.coeffs[k] = C::one();
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.coeffs.len(), o.coeffs.len(), "series orders differ");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Cauchy product truncated at `N`.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        let last_a = self.coeffs.iter().rposition(|c| !c.is_zero());
        let last_b = o.coeffs.iter().rposition(|c| !c.is_zero());
        let (Some(la), Some(lb)) = (last_a, last_b) else {
            return Series { coeffs: out };
        };
        for (i, a) in self.coeffs.iter().enumerate().take(la + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take((lb + 1).min(n - i)) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Series::constant(C::one(), self.order());
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f′`; the top coefficient becomes 0.
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        for k in 1..n {
            out[k - 1] = self.coeffs[k].mul_rational(&BigRational::from_integer((k as i64).into()));
        }
        Series { coeffs: out }
    }

    /// `∫₀^z f`; `a_N` is pushed past the truncation and dropped.
    pub fn antiderivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        for k in 1..n {
            out[k] = self.coeffs[k - 1].mul_rational(&BigRational::new(1.into(), (k as i64).into()));
        }
        Series { coeffs: out }
    }

    /// `P(g − g(0))` with `w ↦ g(0)`, truncated at the order of `self`.
    pub fn compose_upoly(p: &UPoly, g: &Self) -> Self {
        let n = g.order();
        let g0 = g.coeff(0);
        let mut gm = g.clone();
        gm.coeffs[0] = C::zero();
        let w_at = |c: &WPoly| c.coeffs().iter().rev().fold(C::zero(), |acc, s| acc.mul(&g0).add(&C::from_scalar(s)));
        let mut acc = Series::zeros(n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&gm).add(&Series::constant(w_at(c), n));
        }
        acc
    }

    pub fn to_float(&self) -> FloatSeries {
        Series { coeffs: self.coeffs.iter().map(|c| c.to_c64()).collect() }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a.to_c64() - b.to_c64()).norm()).fold(0.0, f64::max)
    }
}

impl ExactSeries {
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
    }
}

impl FloatSeries {
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| json!([c.re, c.im])).collect())
    }

    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = a[0].exp();
        for m in 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 1..=m {
                s += a[k] * b[m - k] * k as f64;
            }
            b[m] = s / m as f64;
        }
        Series { coeffs: b }
    }

    /// Principal-branch logarithm at the constant term.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let a = &self.coeffs;
        if a[0] == Complex64::new(0.0, 0.0) {
            return Err(SeriesError::ZeroConstantTerm("log"));
        }
        let n = a.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = a[0].ln();
        for m in 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 1..m {
                s += b[k] * a[m - k] * k as f64;
            }
            b[m] = (a[m] - s / m as f64) / a[0];
        }
        Ok(Series { coeffs: b })
    }

    /// `exp(β log f)` via the power recurrence
    /// `b_n = (1/(n a_0)) Σ_{k=1}^n (βk − (n−k)) a_k b_{n−k}`.
    pub fn pow_real(&self, beta: f64) -> Result<Self, SeriesError> {
        let a = &self.coeffs;
        if a[0] == Complex64::new(0.0, 0.0) {
            return Err(SeriesError::ZeroConstantTerm("pow_real"));
        }
        let n = a.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = (a[0].ln() * beta).exp();
        for m in 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 1..=m {
                s += a[k] * b[m - k] * (beta * k as f64 - (m - k) as f64);
            }
            b[m] = s / (a[0] * m as f64);
        }
        Ok(Series { coeffs: b })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * k as f64;
        }
        acc
    }

    /// `Σ |a_k|²`, the squared `H²` norm.
    pub fn l2_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl<C: Coef> Analytic for Series<C> {
    fn value(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + c.to_c64() * k as f64;
        }
        acc
    }
}

/// A single letter acting with symbol `g`; `Delta(P)` is `f ↦ P(g − g(0))·f(0)`.
#[derive(Clone, Debug, PartialEq)]
pub enum LetterAction {
    M,
    S,
    T,
    Delta(UPoly),
}

pub fn apply_letter<C: Coef>(l: &LetterAction, f: &Series<C>, g: &Series<C>) -> Series<C> {
    match l {
        LetterAction::M => f.mul(g),
        LetterAction::S => f.derivative().mul(g).antiderivative(),
        LetterAction::T => f.mul(&g.derivative()).antiderivative(),
        LetterAction::Delta(p) => Series::compose_upoly(p, g).scale(&f.coeff(0)),
    }
}

/// Applies an expression right to left; generalized atoms use `g^m`.
pub fn apply_expr<C: Coef>(e: &OperatorExpr, f: &Series<C>, g: &Series<C>) -> Series<C> {
    let w_at = |c: &WPoly| {
        let g0 = g.coeff(0);
        c.coeffs().iter().rev().fold(C::zero(), |acc, s| acc.mul(&g0).add(&C::from_scalar(s)))
    };
    match e {
        OperatorExpr::Sum(ts) => {
            ts.iter().fold(Series::zeros(f.order()), |acc, t| acc.add(&apply_expr(t, f, g)))
        }
        OperatorExpr::Product(fs) => fs.iter().rev().fold(f.clone(), |acc, x| apply_expr(x, &acc, g)),
        OperatorExpr::Power(b, n) => (0..*n).fold(f.clone(), |acc, _| apply_expr(b, &acc, g)),
        OperatorExpr::ScalarMul(c, x) => apply_expr(x, f, g).scale(&w_at(c)),
        OperatorExpr::Atom(a) => {
            let (l, m) = match a {
                Atom::M(m) => (LetterAction::M, *m),
                Atom::S(m) => (LetterAction::S, *m),
                Atom::T(m) => (LetterAction::T, *m),
                Atom::Delta(p) => return apply_letter(&LetterAction::Delta(p.clone()), f, g),
            };
            if m == 1 {
                apply_letter(&l, f, g)
            } else {
                apply_letter(&l, f, &g.pow(m))
            }
        }
    }
}

/// Applies `Σ c_{j,k} S^j T^k + D·δ₀`.
pub fn apply_canonical<C: Coef>(c: &CanonicalForm, f: &Series<C>, g: &Series<C>) -> Series<C> {
    let g0 = g.coeff(0);
    let w_at = |p: &WPoly| p.coeffs().iter().rev().fold(C::zero(), |acc, s| acc.mul(&g0).add(&C::from_scalar(s)));
    let max_k = c.st.keys().map(|&(_, k)| k).max().unwrap_or(0);
    let mut t_pow = vec![f.clone()];
    for k in 1..=max_k as usize {
        let next = apply_letter(&LetterAction::T, &t_pow[k - 1], g);
        t_pow.push(next);
    }
    let mut out = apply_letter(&LetterAction::Delta(c.delta.clone()), f, g);
    for (&(j, k), coef) in &c.st {
        let mut x = t_pow[k as usize].clone();
        for _ in 0..j {
            x = apply_letter(&LetterAction::S, &x, g);
        }
        out = out.add(&x.scale(&w_at(coef)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn ex(v: &[(i64, i64)]) -> ExactSeries {
        let n = v.len() - 1;
        Series::from_coeffs(v.iter().map(|&(a, b)| Scalar::ratio(a, b)).collect(), n)
    }

    #[test]
    fn arithmetic() {
        let a = ex(&[(1, 1), (1, 1), (0, 1)]);
        assert_eq!(a.mul(&a), ex(&[(1, 1), (2, 1), (1, 1)]));
        let b = ex(&[(1, 1), (1, 1), (0, 1)]).antiderivative();
        assert_eq!(b, ex(&[(0, 1), (1, 1), (1, 2)]));
    }

    #[test]
    fn letters_on_series() {
        let n = 4;
        let one = ExactSeries::constant(Scalar::from_int(1), n);
        let g = ExactSeries::from_coeffs(vec![Scalar::from_int(1), Scalar::from_int(1)], n);
        let out = apply_expr(&parse("S*T").unwrap(), &one, &g);
        assert_eq!(out, ex(&[(0, 1), (1, 1), (1, 2), (0, 1), (0, 1)]));
        assert_eq!(apply_letter(&LetterAction::S, &one, &g), ExactSeries::zeros(n));
        let z = ExactSeries::monomial(1, 2);
        assert_eq!(apply_letter(&LetterAction::M, &z, &z), ex(&[(0, 1), (0, 1), (1, 1)]));
        let f = ex(&[(3, 1), (1, 2), (2, 1), (0, 1), (-1, 1)]);
        let zero = apply_expr(&parse("M - S - T - d0{w}").unwrap(), &f, &g);
        assert_eq!(zero, ExactSeries::zeros(n));
        let d = apply_expr(&parse("d0").unwrap(), &f, &g);
        assert_eq!(d, ExactSeries::constant(Scalar::from_int(3), n));
    }

    #[test]
    fn exp_log_pow() {
        let s = FloatSeries::from_coeffs(
            (0..=64).map(|k| Complex64::new(if k == 0 { 1.0 } else { 0.3 / (k as f64) }, 0.1 / (k as f64 + 1.0))).collect(),
            64,
        );
        let s = s.scale(&(Complex64::new(1.0, 0.0) / s.coeff(0)));
        assert!(s.log().unwrap().exp().max_abs_diff(&s) < 1e-12);
        let p = s.pow_real(0.7).unwrap().mul(&s.pow_real(-0.7).unwrap());
        assert!(p.max_abs_diff(&FloatSeries::constant(Complex64::new(1.0, 0.0), 64)) < 1e-10);
        assert!(FloatSeries::zeros(3).log().is_err());
    }
}
